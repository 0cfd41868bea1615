"""Self-dual and Kashiwara-Schapira type t-structures on D^b(Z) and on
constructible complexes over finite cell posets."""

from .intlin import FgAbGroup, IntMatrix
from .dz import ChainMap, CutParam, FreeComplex
from .poset import SimplicialComplex, StratPoset, face_poset
from .cellspace import SheafComplex, SheafMap, constant_sheaf, skyscraper, verdier_dual
from .perv import ks_truncate, member_ks, member_sd, sd_truncate, verify_tstructure
from .spaces import builtin

__version__ = "0.1.0"

__all__ = [
    "FgAbGroup", "IntMatrix", "ChainMap", "CutParam", "FreeComplex",
    "SimplicialComplex", "StratPoset", "face_poset",
    "SheafComplex", "SheafMap", "constant_sheaf", "skyscraper", "verdier_dual",
    "member_sd", "member_ks", "sd_truncate", "ks_truncate", "verify_tstructure",
    "builtin",
]
