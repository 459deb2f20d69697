"""Independent numerical checks of the closed-form optima.

Lattice scans run in a compiled kernel when it is available (see
``BACKEND``) and in NumPy otherwise.
"""

from ._backend import BACKEND
from .ascent import project_simplex, projected_ascent_max_ftilde
from .grid import (
    GridSpec,
    OptResult,
    brute_force_max_ftilde,
    enumerate_simplex,
    parse_resolution,
    radius_objective,
    sibson_infradius_check,
)
from .sampling import random_channel, random_dist, random_strategy_sample

__all__ = [
    "BACKEND",
    "GridSpec",
    "OptResult",
    "brute_force_max_ftilde",
    "enumerate_simplex",
    "parse_resolution",
    "project_simplex",
    "projected_ascent_max_ftilde",
    "radius_objective",
    "random_channel",
    "random_dist",
    "random_strategy_sample",
    "sibson_infradius_check",
]
