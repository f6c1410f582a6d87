"""Succulents: connected graphs whose blocks are polygonal 2-trees.

With ``ap`` the cycle index of polygonal 2-trees and ``ap'`` its derivative, the
vertex-pointed succulents satisfy ``S = X * E(ap'(S))`` (a root vertex and a set
of blocks through it, each block carrying further pointed succulents at its other
vertices).  Unpointed succulents then follow from the dissymmetry identity for
block trees::

    s = S + ap(S) - S * ap'(S)
"""
from __future__ import annotations

from dataclasses import dataclass

from . import cis
from .cis import CycleIndexSeries, IntegrityError
from .ptrees import solve as solve_ptrees
from .tables import CountsTable

__all__ = ["SucculentSolution", "solve_pointed", "assemble", "solve", "succulent_counts"]


@dataclass(frozen=True)
class SucculentSolution:
    ap: CycleIndexSeries
    ap_prime: CycleIndexSeries
    s_pointed: CycleIndexSeries
    s: CycleIndexSeries
    counts: CountsTable


def _check_ap(ap: CycleIndexSeries) -> None:
    if any(ap.layers[n] for n in range(min(3, ap.truncation + 1))):
        raise ValueError("block series must start at 3 vertices (valuation >= 3)")


def solve_pointed(ap: CycleIndexSeries, N: int) -> CycleIndexSeries:
    """Least fixed point of ``S = X * E(ap'(S))`` through layer ``N``.

    Iterate ``t`` is computed at truncation ``t``; it only reads iterate ``t - 1``
    through layer ``t - 1`` because of the leading ``X``.
    """
    _check_ap(ap)
    if N < 1:
        raise ValueError("N must be at least 1")
    if ap.truncation < N:
        raise ValueError(f"block series known only through {ap.truncation} < {N}")
    ap_prime = cis.derivative(ap)
    x = cis.builtin("X", truncation=N)
    s = CycleIndexSeries.zero(0, exact=False)
    for t in range(1, N + 1):
        inner = cis.plethysm(ap_prime, s, truncation=t - 1)
        s = cis.mul(x, cis.exp_compose(inner), truncation=t)
    return s


def assemble(ap: CycleIndexSeries, s_pointed: CycleIndexSeries) -> CycleIndexSeries:
    """``s = S + ap(S) - S * ap'(S)``, checked for integral nonnegative counts."""
    _check_ap(ap)
    N = min(ap.truncation, s_pointed.truncation)
    s_pointed = s_pointed.with_truncation(N)
    ap_prime = cis.derivative(ap)
    blocks = cis.plethysm(ap, s_pointed, truncation=N)
    overlap = cis.mul(s_pointed, cis.plethysm(ap_prime, s_pointed), truncation=N)
    s = s_pointed + blocks - overlap
    try:
        cis.labeled_counts(s)
        cis.unlabeled_counts(s)
    except IntegrityError as exc:
        raise IntegrityError(f"succulent assembly is not a species: {exc}") from exc
    return s


def solve(N: int, polygon_action: str = "geometric") -> SucculentSolution:
    """Full pipeline through ``N`` vertices: polygonal blocks, pointed, unpointed.

    ``polygon_action`` is passed to :func:`polyspecies.ptrees.solve`; only the
    default ``"geometric"`` gives the true cycle index of polygonal 2-trees, and
    the succulent unlabeled counts depend on it from 7 vertices on.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    M = max(N, 1)
    ap = solve_ptrees(M, polygon_action=polygon_action).a_unoriented
    s_pointed = solve_pointed(ap, M)
    s = assemble(ap, s_pointed)
    counts = CountsTable.from_series("succulents", s).truncated(N)
    return SucculentSolution(ap, cis.derivative(ap), s_pointed, s, counts)


def succulent_counts(N: int, polygon_action: str = "geometric") -> CountsTable:
    return solve(N, polygon_action).counts
