"""Polygonal and k-gonal 2-trees from rooted, coherently-oriented S2-species.

The sorts for edges and polygons are specialized to the unit before solving, so
every series here is graded by vertices only.  ``k=None`` selects arbitrary
polygons; an integer ``k >= 3`` restricts every polygon to ``k`` sides.

Pipeline::

    a_estar = E(sheets(a_estar))              rooted at an unlabeled edge
    a_e     = L2(X) * (a_estar - 1)           rooted at an edge
    a_p     = P(X; a_estar)                   rooted at a polygon
    a_pe    = L2(X) * a_estar * sheets        rooted at a polygon and one of its edges
    oriented   = a_e + a_p - a_pe             (dissymmetry)
    unoriented = (oriented_e + oriented_tau) / 2

``P(X; a_estar)`` is a polygon with a vertex at every corner and an
``a_estar``-structure on every side.  Reversal reflects it corner-to-corner and
side-to-side (``polygon_action="geometric"``, the default).  The alternative
``"cyclic"`` treats the root polygon as ``C(X * a_estar)``, a cyclic order of
(corner, side) pairs, whose reflections fix pairs instead.  Both give identical
polygonal counts, but the full cycle indices differ, which matters wherever
the unoriented series is substituted into something else (succulents).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import cis
from .cis import CycleIndexSeries, IntegrityError
from .gamma2 import S2Series, g_builtin, g_exp_compose, g_mul, g_plethysm, g_polygon, quotient_s2
from .tables import CountsTable

__all__ = [
    "PolygonalSolution",
    "sheet_sum",
    "solve_estar",
    "polygon_rooted",
    "rooted_series",
    "dissymmetry",
    "solve",
    "polygonal_counts",
    "kgonal_counts",
    "POLYGON_ACTIONS",
]

POLYGON_ACTIONS = ("geometric", "cyclic")


def _check_k(k: int | None) -> None:
    if k is not None and k < 3:
        raise ValueError(f"polygons need at least 3 sides, got k={k}")


def sheet_sum(a_estar: S2Series, k: int | None = None) -> S2Series:
    """Sheets hanging off a root edge: ``sum_{n>=1} L_n(X) * L_{n+1}(a_estar)``.

    With ``k`` only the ``n = k - 2`` term is kept.  The full sum is evaluated in
    closed form: with ``q = p1 * A_e``, ``v = A_e(p2, p4, ...)`` and ``w = p2 * v``,
    the ``e`` part is ``A_e * q / (1 - q)`` and the ``tau`` part is
    ``(p1 * v + A_tau * w) / (1 - w)``.
    """
    _check_k(k)
    N = a_estar.truncation
    if k is not None:
        lx = g_plethysm(g_builtin("L_n", k - 2, truncation=N), g_builtin("X", truncation=N))
        la = g_plethysm(g_builtin("L_n", k - 1, truncation=N), a_estar)
        return g_mul(lx, la)
    a_e, a_tau = a_estar.part_e, a_estar.part_tau
    x = cis.builtin("X", truncation=N)
    p2 = cis.stretch(x, 2)
    q = cis.mul(x, a_e)
    part_e = cis.mul(cis.mul(a_e, q), cis.geometric(q))
    v = cis.stretch(a_e, 2, truncation=N)
    w = cis.mul(p2, v)
    part_tau = cis.mul(cis.mul(x, v) + cis.mul(a_tau, w), cis.geometric(w))
    return S2Series(part_e, part_tau)


def solve_estar(N: int, k: int | None = None) -> S2Series:
    """Least fixed point of ``A = E(sheet_sum(A))`` through layer ``N``.

    Starts from ``A = 1``; iterate ``t`` is computed at truncation ``t`` and is
    exact there, since layer ``t`` of the right side only reads layers below ``t``.
    """
    _check_k(k)
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = S2Series.one(0)
    for t in range(1, N + 1):
        a = g_exp_compose(sheet_sum(a.padded(t), k))
    return a


def _check_action(polygon_action: str) -> None:
    if polygon_action not in POLYGON_ACTIONS:
        raise ValueError(f"polygon_action must be one of {POLYGON_ACTIONS}, got {polygon_action!r}")


def _check_species(name: str, s: S2Series) -> None:
    try:
        cis.labeled_counts(s.part_e)
    except IntegrityError as exc:
        raise IntegrityError(f"{name}: {exc}") from exc


def polygon_rooted(a_estar: S2Series, k: int | None = None, polygon_action: str = "geometric") -> S2Series:
    """Trees rooted at a polygon: ``a_estar`` hangs off every side of the root."""
    _check_k(k)
    _check_action(polygon_action)
    N = a_estar.truncation
    x = g_builtin("X", truncation=N)
    sizes = (3, None) if k is None else k
    if polygon_action == "geometric":
        return g_polygon(sizes, x, a_estar)
    ring = g_builtin("C_>=k", 3, truncation=N) if k is None else g_builtin("C_n", k, truncation=N)
    return g_plethysm(ring, g_mul(x, a_estar))


def rooted_series(a_estar: S2Series, k: int | None = None,
                  polygon_action: str = "geometric") -> tuple[S2Series, S2Series, S2Series]:
    """Edge-, polygon- and polygon-with-edge-rooted series from the solved ``a_estar``."""
    _check_k(k)
    N = a_estar.truncation
    l2 = g_builtin("L_n", 2, truncation=N)
    a_e = g_mul(l2, a_estar - 1)
    a_p = polygon_rooted(a_estar, k, polygon_action)
    a_pe = g_mul(l2, g_mul(a_estar, sheet_sum(a_estar, k)))
    for name, s in (("a_e", a_e), ("a_p", a_p), ("a_pe", a_pe)):
        _check_species(name, s)
    return a_e, a_p, a_pe


def dissymmetry(a_e: S2Series, a_p: S2Series, a_pe: S2Series) -> S2Series:
    """Unrooted oriented series ``a_e + a_p - a_pe`` (coefficientwise)."""
    out = a_e + a_p - a_pe
    try:
        cis.labeled_counts(out.part_e)
    except IntegrityError as exc:
        raise IntegrityError(f"dissymmetry produced a non-species series: {exc}") from exc
    return out


@dataclass(frozen=True)
class PolygonalSolution:
    k: int | None
    polygon_action: str
    a_estar: S2Series
    a_e: S2Series
    a_p: S2Series
    a_pe: S2Series
    a_oriented: S2Series
    a_unoriented: CycleIndexSeries
    counts: CountsTable


def family_name(k: int | None) -> str:
    return "polygonal" if k is None else f"{k}-gonal"


def solve(N: int, k: int | None = None, polygon_action: str = "geometric") -> PolygonalSolution:
    """Run the whole pipeline through ``N`` vertices."""
    _check_action(polygon_action)
    a_estar = solve_estar(N, k)
    a_e, a_p, a_pe = rooted_series(a_estar, k, polygon_action)
    oriented = dissymmetry(a_e, a_p, a_pe)
    unoriented = quotient_s2(oriented)
    counts = CountsTable.from_series(family_name(k), unoriented)
    return PolygonalSolution(k, polygon_action, a_estar, a_e, a_p, a_pe, oriented, unoriented, counts)


def polygonal_counts(N: int, polygon_action: str = "geometric") -> CountsTable:
    return solve(N, polygon_action=polygon_action).counts


def kgonal_counts(k: int, N: int, polygon_action: str = "geometric") -> CountsTable:
    _check_k(k)
    return solve(N, k, polygon_action=polygon_action).counts
