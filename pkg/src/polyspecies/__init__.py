"""Exact cycle-index series, their S2 (orientation-reversal) refinement, and the
enumeration of polygonal 2-trees, k-gonal 2-trees and succulents built on them.

Typical use::

    from polyspecies import polygonal_counts, succulent_counts
    polygonal_counts(10).unlabeled      # [0, 0, 0, 1, 2, 4, 12, 35, 146, 638, 3202]
"""
from .cis import CycleIndexSeries, DivergenceError, IntegrityError, builtin, plethysm
from .gamma2 import S2Series, g_builtin, g_plethysm, quotient_s2
from .psring import PsPolynomial
from .ptrees import kgonal_counts, polygonal_counts
from .succulents import succulent_counts
from .tables import CountsTable

__all__ = [
    "PsPolynomial",
    "CycleIndexSeries",
    "S2Series",
    "CountsTable",
    "IntegrityError",
    "DivergenceError",
    "builtin",
    "g_builtin",
    "plethysm",
    "g_plethysm",
    "quotient_s2",
    "polygonal_counts",
    "kgonal_counts",
    "succulent_counts",
]

__version__ = "0.1.0"
