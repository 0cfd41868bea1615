# Generated by scripts/build_rp3.py (seed 50); do not edit.
"""Pinned triangulation of RP^3 (facets as vertex index tuples)."""

FACETS = (
    (0, 1, 2, 5),
    (0, 1, 2, 8),
    (0, 1, 4, 5),
    (0, 1, 4, 6),
    (0, 1, 6, 8),
    (0, 2, 3, 5),
    (0, 2, 3, 8),
    (0, 3, 5, 10),
    (0, 3, 8, 9),
    (0, 3, 9, 10),
    (0, 4, 5, 10),
    (0, 4, 6, 9),
    (0, 4, 9, 10),
    (0, 6, 8, 9),
    (1, 2, 5, 9),
    (1, 2, 8, 10),
    (1, 2, 9, 10),
    (1, 4, 5, 7),
    (1, 4, 6, 7),
    (1, 5, 7, 9),
    (1, 6, 7, 10),
    (1, 6, 8, 10),
    (1, 7, 9, 10),
    (2, 3, 5, 6),
    (2, 3, 6, 7),
    (2, 3, 7, 8),
    (2, 4, 6, 7),
    (2, 4, 6, 9),
    (2, 4, 7, 8),
    (2, 4, 8, 10),
    (2, 4, 9, 10),
    (2, 5, 6, 9),
    (3, 5, 6, 10),
    (3, 6, 7, 10),
    (3, 7, 8, 9),
    (3, 7, 9, 10),
    (4, 5, 7, 8),
    (4, 5, 8, 10),
    (5, 6, 8, 9),
    (5, 6, 8, 10),
    (5, 7, 8, 9),
)
