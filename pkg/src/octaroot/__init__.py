"""Optimal eighth-order root finding with a rational-weight three-point family.

Submodules
----------
mpnum      scalar contexts (big floats, IEEE complex, exact rationals)
series     exact truncated power series and order certification
methods    iteration maps
problems   test functions and polynomials
solver     iteration driver, COC/ACOC and error tables
basins     basins of attraction, statistics and images
"""

from .basins import GridSpec, render, stats
from .methods import CATALOG, MethodSpec, family, get_method, step
from .series import check_weight_conditions, verify_order
from .solver import acoc, coc, reproduce_table, solve

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "GridSpec",
    "MethodSpec",
    "acoc",
    "check_weight_conditions",
    "coc",
    "family",
    "get_method",
    "render",
    "reproduce_table",
    "solve",
    "stats",
    "step",
    "verify_order",
]
