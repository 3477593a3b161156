"""Auslander-Reiten quivers and total stability for Dynkin quivers.

The package knits AR quivers for every orientation of an A/D/E diagram,
decides total stability of weighted-linear slope functions both by the
border-sequence criterion and by brute force over indecomposable
subrepresentations, and searches for totally stable weights by exact
rational linear programming.
"""

from .dynkin import (
    DynkinQuiver,
    DynkinType,
    all_orientations,
    build_quiver,
    coxeter_translate,
    euler_form,
    positive_roots,
)
from .arquiver import ARQuiver, knit, export
from .stability import (
    StabilityWeights,
    SubrepOracle,
    is_totally_stable_border,
    is_totally_stable_bruteforce,
    slope,
)
from .lp import build_system, solve as solve_border_cone

__all__ = [
    "DynkinQuiver",
    "DynkinType",
    "ARQuiver",
    "StabilityWeights",
    "SubrepOracle",
    "all_orientations",
    "build_quiver",
    "coxeter_translate",
    "euler_form",
    "export",
    "is_totally_stable_border",
    "is_totally_stable_bruteforce",
    "knit",
    "positive_roots",
    "slope",
    "build_system",
    "solve_border_cone",
]

__version__ = "0.1.0"
