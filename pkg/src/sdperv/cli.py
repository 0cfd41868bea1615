"""Command line front end.

    python -m sdperv membership --space circle --sheaf constant --cut 1/2
    python -m sdperv truncate --space rp3-cone --sheaf 'j!:a' --cut 2 --flavor lt-ge --out out/
    python -m sdperv example rp3-cone

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cellspace, perv, tmod
from .cellspace import SheafComplex, SheafError
from .dz import CutParam, FreeComplex
from .intlin import FgAbGroup, IntMatrix
from .poset import PosetError, StratPoset
from .spaces import BUILTIN, builtin

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization


def complex_to_json(x: FreeComplex) -> dict:
    return {"lo": x.lo, "ranks": list(x.ranks), "diffs": [d.to_rows() for d in x.diffs]}


def complex_from_json(obj) -> FreeComplex:
    try:
        lo = int(obj.get("lo", 0))
        ranks = {lo + i: int(r) for i, r in enumerate(obj["ranks"])}
        diffs = {lo + i: IntMatrix.from_rows(rows, cols=ranks.get(lo + i, 0))
                 for i, rows in enumerate(obj.get("diffs", []))}
        return FreeComplex.from_dict(ranks, diffs)
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise InputError(f"malformed complex: {e}") from None


def groups_json(h: dict) -> dict:
    return {str(i): g.to_json() for i, g in sorted(h.items())}


def sheaf_to_json(k: SheafComplex, base_name: str | None = None) -> dict:
    out = {"base": base_name or k.base.name}
    out.update(k.to_json())
    return out


def _read_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"{what} file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def load_space(spec: str) -> StratPoset:
    if spec in BUILTIN:
        return builtin(spec)
    if not Path(spec).exists():
        raise InputError(f"unknown space {spec!r}: not a built-in ({', '.join(sorted(BUILTIN))}) "
                         "and not a file")
    obj = _read_json(spec, "space")
    try:
        sp = StratPoset.from_json(obj)
    except PosetError as e:
        raise InputError(f"{spec}: {e}") from None
    return sp


def _module(token: str) -> FreeComplex | None:
    """'Z' or 'Z/n' as a complex concentrated in degree 0."""
    if token in ("Z", ""):
        return None
    if token.startswith("Z/"):
        try:
            n = int(token[2:])
        except ValueError:
            raise InputError(f"bad coefficient group {token!r}") from None
        if n < 2:
            raise InputError(f"bad coefficient group {token!r}")
        return FreeComplex.two_term([[n]], -1)
    raise InputError(f"bad coefficient group {token!r} (use Z or Z/n)")


def _cell(base: StratPoset, c: str) -> str:
    if c not in base:
        raise InputError(f"unknown cell {c!r} in space {base.name or '?'}")
    return c


def load_sheaf(spec: str, base: StratPoset | None) -> SheafComplex:
    """A JSON file, or one of: constant[:M], skyscraper:CELL[:M], j!:CELL, j*:CELL,
    optionally followed by @n for the shift K[n]. j!/j* extend the constant sheaf
    from the complement of the closed cell CELL."""
    if Path(spec).exists():
        obj = _read_json(spec, "sheaf")
        if base is None:
            name = obj.get("base") if isinstance(obj, dict) else None
            if name not in BUILTIN:
                raise InputError("sheaf file names no built-in base; pass --space")
            base = builtin(name)
        try:
            return SheafComplex.from_json(base, obj)
        except (SheafError, PosetError) as e:
            raise InputError(f"{spec}: {e}") from None
    if base is None:
        raise InputError("--space is required for built-in sheaf descriptions")
    shift = 0
    if "@" in spec:
        spec, _, sh = spec.partition("@")
        try:
            shift = int(sh)
        except ValueError:
            raise InputError(f"bad shift {sh!r}") from None
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "constant":
            k = cellspace.constant_sheaf(base, _module(parts[1] if len(parts) > 1 else ""))
        elif kind == "skyscraper" and len(parts) >= 2:
            k = cellspace.skyscraper(base, _cell(base, parts[1]),
                                     _module(parts[2] if len(parts) > 2 else ""))
        elif kind in ("j!", "j*") and len(parts) == 2:
            c = _cell(base, parts[1])
            if not base.is_closed([c]):
                raise InputError(f"cell {c!r} is not closed")
            u = [x for x in base.ids if x != c]
            zu = cellspace.restrict_open(cellspace.constant_sheaf(base), u)
            k = cellspace.extend_zero(zu, base) if kind == "j!" else \
                cellspace.pushforward_open(zu, base)
        else:
            raise InputError(f"unknown sheaf {spec!r}")
    except SheafError as e:
        raise InputError(str(e)) from None
    return k.shift(shift) if shift else k


def parse_cut(s: str) -> CutParam:
    try:
        return CutParam.parse(s)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad cut {s!r} (use an exact rational p/q)") from None


def parse_grid(s: str | None):
    """'lo:hi:step' (rationals) or a comma separated list of cuts."""
    if s is None:
        return None
    try:
        if ":" in s:
            lo, hi, step = (Fraction(t) for t in s.split(":"))
            if step <= 0:
                raise ValueError
            out, x = [], lo
            while x <= hi:
                out.append(x)
                x += step
            return out
        return [Fraction(t) for t in s.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad grid {s!r}") from None


def emit(obj, out: str | None = None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def _space_and_sheaf(args):
    base = load_space(args.space) if args.space else None
    k = load_sheaf(args.sheaf, base)
    return k.base, k


def cmd_membership(args) -> int:
    base, k = _space_and_sheaf(args)
    c = parse_cut(args.cut)
    sides = ("le", "ge") if args.side == "both" else (args.side,)
    res = {}
    for side in sides:
        w = perv.membership_witness(k, c, side, args.structure)
        entry = {"member": w is None}
        if w is not None:
            cell, kind, local, h = w
            entry["witness"] = {"cell": cell, "dim": base.dim(cell), "kind": kind,
                                "local_cut": str(local), "cohomology": groups_json(h)}
        res[side] = entry
    emit({"cut": str(c), "structure": args.structure, "sides": res})
    return EXIT_OK


def cmd_truncate(args) -> int:
    base, k = _space_and_sheaf(args)
    c = parse_cut(args.cut)
    fn = perv.sd_truncate if args.structure == "sd" else perv.ks_truncate
    t = fn(k, c, args.flavor)
    lo_side, up_side = tmod.flavor_sides(args.flavor)
    member = perv.member_sd if args.structure == "sd" else perv.member_ks
    cone_ok = perv.stalkwise_equal(cellspace.cone(t.alpha)[0], t.upper)
    report = {
        "cut": str(c), "flavor": args.flavor, "structure": args.structure,
        "lower_member": member(t.lower, c, lo_side),
        "upper_member": member(t.upper, c, up_side),
        "cone_matches_upper": cone_ok,
    }
    stalks = {"lower": {s: groups_json(h) for s, h in t.lower.stalk_cohomology().items() if h},
              "upper": {s: groups_json(h) for s, h in t.upper.stalk_cohomology().items() if h}}
    for part in ("lower", "upper"):
        report[f"{part}_support_cells"] = len(stalks[part])
        if len(stalks[part]) <= 12:
            report[f"{part}_stalks"] = stalks[part]
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        emit(sheaf_to_json(t.lower, args.space), str(d / "lower.json"))
        emit(sheaf_to_json(t.upper, args.space), str(d / "upper.json"))
        emit(dict(report, lower_stalks=stalks["lower"], upper_stalks=stalks["upper"]),
             str(d / "triangle.json"))
    emit(report)
    ok = report["lower_member"] and report["upper_member"] and cone_ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual(args) -> int:
    _, k = _space_and_sheaf(args)
    emit(sheaf_to_json(cellspace.verdier_dual(k).reduced(), args.space), args.out)
    return EXIT_OK


def cmd_sections(args) -> int:
    base, k = _space_and_sheaf(args)
    cells = None
    if args.cells:
        cells = [_cell(base, c) for c in args.cells.split(",")]
        if not base.is_open(cells):
            raise InputError("--cells must list an open set (closed under cofaces)")
    fn = cellspace.sections_c if args.compact else cellspace.sections
    h = fn(k, cells).cohomology_all()
    emit({"compact": bool(args.compact), "cohomology": groups_json(h)}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    base = load_space(args.space or "interval")
    rep = perv.verify_tstructure(base, samples=args.samples, seed=args.seed,
                                 grid=parse_grid(args.grid))
    emit({"space": rep.space, "samples": rep.samples,
          "counts": {n: {"passed": p, "failed": f} for n, (p, f) in sorted(rep.counts.items())},
          "failures": [[n, repr(i)] for n, i in rep.failures]}, args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_example(args) -> int:
    from .example import EXAMPLES
    if args.name not in EXAMPLES:
        raise InputError(f"unknown example {args.name!r}; choose from {sorted(EXAMPLES)}")
    checks = EXAMPLES[args.name](verbose=not args.quiet)
    bad = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(bad)}/{len(checks)} checks match")
    if args.out:
        emit([c.__dict__ for c in checks], args.out)
    return EXIT_OK if not bad else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sdperv", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, sheaf=True):
        p.add_argument("--space", help="built-in name or space JSON file")
        if sheaf:
            p.add_argument("--sheaf", required=True,
                           help="sheaf JSON file or constant[:M] | skyscraper:CELL[:M] | j!:CELL "
                                "| j*:CELL, optionally with @n for a shift")
        p.add_argument("--out", help="write JSON output here")

    p = sub.add_parser("membership", help="test membership in the sd or KS classes")
    common(p)
    p.add_argument("--cut", required=True)
    p.add_argument("--side", choices=["le", "lt", "ge", "gt", "both"], default="both")
    p.add_argument("--structure", choices=["sd", "ks"], default="sd")
    p.set_defaults(fn=cmd_membership)

    p = sub.add_parser("truncate", help="truncation triangle at a cut")
    common(p)
    p.add_argument("--cut", required=True)
    p.add_argument("--flavor", choices=list(tmod.FLAVORS), default="le-gt")
    p.add_argument("--structure", choices=["sd", "ks"], default="sd")
    p.set_defaults(fn=cmd_truncate)

    p = sub.add_parser("dual", help="Verdier dual")
    common(p)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("sections", help="cohomology of (compactly supported) sections")
    common(p)
    p.add_argument("--cells", help="comma separated open set (default: whole space)")
    p.add_argument("--compact", action="store_true")
    p.set_defaults(fn=cmd_sections)

    p = sub.add_parser("verify", help="randomized axiom checks")
    common(p, sheaf=False)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", help="lo:hi:step or comma list of cuts (default -3:3:1/4)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("example", help="run a built-in worked example")
    p.add_argument("name")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_example)
    return ap


def _join_negative(argv: list) -> list:
    """Let '--cut -1/2' through: argparse would read -1/2 as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--cut", "--grid") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _join_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PosetError, SheafError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
