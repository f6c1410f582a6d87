"""S2-equivariant cycle indices: one series per group element ``e`` and ``tau``.

The nontrivial element ``tau`` is orientation reversal.  Products, sums and
differences act componentwise; composition twists the ``tau`` part so that
``p_i`` is fed the inner series at ``tau^i``, i.e. its ``tau`` part for odd ``i``
and its ``e`` part for even ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import cis
from .cis import INF, CycleIndexSeries, DivergenceError, _pick_truncation

__all__ = [
    "S2Series",
    "g_mul",
    "g_plethysm",
    "g_exp_compose",
    "quotient_s2",
    "lift",
    "g_builtin",
    "g_polygon",
]


@dataclass(frozen=True, eq=False)
class S2Series:
    part_e: CycleIndexSeries
    part_tau: CycleIndexSeries

    def __post_init__(self):
        if self.part_e.truncation != self.part_tau.truncation:
            n = min(self.part_e.truncation, self.part_tau.truncation)
            object.__setattr__(self, "part_e", _cut(self.part_e, n))
            object.__setattr__(self, "part_tau", _cut(self.part_tau, n))

    @classmethod
    def zero(cls, truncation: int) -> S2Series:
        z = CycleIndexSeries.zero(truncation)
        return cls(z, z)

    @classmethod
    def constant(cls, c, truncation: int) -> S2Series:
        k = CycleIndexSeries.constant(c, truncation)
        return cls(k, k)

    @classmethod
    def one(cls, truncation: int) -> S2Series:
        return cls.constant(1, truncation)

    @property
    def truncation(self) -> int:
        return self.part_e.truncation

    @property
    def is_polynomial(self) -> bool:
        return self.part_e.is_polynomial and self.part_tau.is_polynomial

    def __getitem__(self, gamma: str) -> CycleIndexSeries:
        if gamma == "e":
            return self.part_e
        if gamma == "tau":
            return self.part_tau
        raise KeyError(gamma)

    def at_power(self, i: int) -> CycleIndexSeries:
        """The part at ``tau^i``."""
        return self.part_tau if i % 2 else self.part_e

    def valuation(self) -> float:
        return min(self.part_e.valuation(), self.part_tau.valuation())

    def _known(self) -> float:
        return min(self.part_e._known(), self.part_tau._known())

    def with_truncation(self, n: int) -> S2Series:
        return S2Series(self.part_e.with_truncation(n), self.part_tau.with_truncation(n))

    def padded(self, n: int) -> S2Series:
        return S2Series(self.part_e.padded(n), self.part_tau.padded(n))

    def __add__(self, other):
        o = _coerce(other, self.truncation)
        return NotImplemented if o is None else S2Series(self.part_e + o.part_e, self.part_tau + o.part_tau)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other, self.truncation)
        return NotImplemented if o is None else S2Series(self.part_e - o.part_e, self.part_tau - o.part_tau)

    def __rsub__(self, other):
        o = _coerce(other, self.truncation)
        return NotImplemented if o is None else o - self

    def __neg__(self):
        return S2Series(-self.part_e, -self.part_tau)

    def __mul__(self, other):
        if isinstance(other, S2Series):
            return g_mul(self, other)
        try:
            return S2Series(self.part_e.scale(other), self.part_tau.scale(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __call__(self, inner: S2Series) -> S2Series:
        return g_plethysm(self, inner)

    def __eq__(self, other):
        if not isinstance(other, S2Series):
            return NotImplemented
        return self.part_e == other.part_e and self.part_tau == other.part_tau

    __hash__ = None

    def __repr__(self):
        return f"S2Series(e={self.part_e!r}, tau={self.part_tau!r})"


def _cut(s: CycleIndexSeries, n: int) -> CycleIndexSeries:
    return s.with_truncation(n) if (n <= s.truncation or s.is_polynomial) else s


def _coerce(other, truncation: int) -> S2Series | None:
    if isinstance(other, S2Series):
        return other
    try:
        return S2Series.constant(other, truncation)
    except TypeError:
        return None


def lift(z: CycleIndexSeries) -> S2Series:
    """A species with trivial S2 action: both parts equal ``z``."""
    return S2Series(z, z)


def quotient_s2(a: S2Series) -> CycleIndexSeries:
    """Cycle index of the orbit species ``a / S2``: the average of the two parts."""
    return (a.part_e + a.part_tau).scale(mpq(1, 2))


def g_mul(a: S2Series, b: S2Series, truncation: int | None = None) -> S2Series:
    return S2Series(cis.mul(a.part_e, b.part_e, truncation), cis.mul(a.part_tau, b.part_tau, truncation))


def g_plethysm(f: S2Series, g: S2Series, truncation: int | None = None) -> S2Series:
    """Composition of S2-species.

    ``e`` part: ordinary plethysm of the ``e`` parts.  ``tau`` part: ``p_i`` in
    ``f.part_tau`` becomes ``g`` at ``tau^i`` with indices stretched by ``i``.
    """
    vg = g.valuation()
    known = g._known()
    bound = min(cis.compose_bound(f.part_e, vg, known), cis.compose_bound(f.part_tau, vg, known))
    default = min(f.truncation, g.truncation)
    if f.is_polynomial and g.is_polynomial:
        default = max(f.truncation, g.truncation)
    n = _pick_truncation(default, bound, truncation)

    def inner_for(gamma_of_i):
        def inner(i: int) -> CycleIndexSeries:
            src = gamma_of_i(i)
            limit = INF if src.is_polynomial else i * (src.truncation + 1) - 1
            return cis.stretch(src, i, truncation=int(min(n, limit)))
        return inner

    part_e = cis.compose(f.part_e, inner_for(lambda i: g.part_e), vg, n)
    part_tau = cis.compose(f.part_tau, inner_for(g.at_power), vg, n)
    return S2Series(part_e, part_tau)


def g_exp_compose(g: S2Series, truncation: int | None = None) -> S2Series:
    """``E o g`` where ``E`` carries the trivial action."""
    if g.valuation() < 1:
        raise DivergenceError("E composed with a series that has a constant term")
    n = g.truncation if truncation is None else min(truncation, g.truncation)
    part_e = cis.series_exp(cis.exp_log_sum(lambda i: cis.stretch(g.part_e, i, truncation=n), n))
    part_tau = cis.series_exp(cis.exp_log_sum(lambda i: cis.stretch(g.at_power(i), i, truncation=n), n))
    return S2Series(part_e, part_tau)


def g_polygon(sizes: int | tuple[int, None], vertex: S2Series, edge: S2Series,
              truncation: int | None = None) -> S2Series:
    """Polygons whose corners carry ``vertex``-structures and sides ``edge``-structures.

    ``sizes`` is a single side count ``m`` or ``(lo, None)`` for all ``m >= lo``.
    Rotations act as on ``C_m(vertex * edge)``, but a reflection maps corners to
    corners and sides to sides: for odd ``m`` it fixes one corner and the
    opposite side; for even ``m`` it fixes either two corners or two sides.  (A
    cyclic order of (corner, side) pairs reflected as a whole would instead fix
    whole pairs; the two ``tau`` parts differ by a multiple of
    ``(U_tau^2 - U_e(p2, p4, ...)) * (W_tau^2 - W_e(p2, p4, ...))``.)
    """
    if isinstance(sizes, tuple):
        lo, hi = sizes[0], None
    else:
        lo = hi = sizes
    if lo < 1:
        raise ValueError("polygons need at least one side")
    if vertex.valuation() < 1:
        raise DivergenceError("polygon corners must carry at least one atom")
    parts = [s for s in (vertex, edge) if not s.is_polynomial]
    n = min((s.truncation for s in parts), default=max(vertex.truncation, edge.truncation))
    if truncation is not None:
        n = min(n, truncation)
    if hi is not None and not parts:
        n = max(n, hi * int(vertex.valuation() + edge.valuation()))
    prod_e = cis.mul(vertex.part_e, edge.part_e, truncation=n)
    ring = g_builtin("C_>=k", lo, truncation=n) if hi is None else g_builtin("C_n", hi, truncation=n)
    part_e = cis.plethysm(ring.part_e, prod_e, truncation=n)

    def mul(a, b):
        return cis.mul(a, b, truncation=n)

    u_t, w_t = vertex.part_tau, edge.part_tau
    u2 = cis.stretch(vertex.part_e, 2, truncation=n)
    w2 = cis.stretch(edge.part_e, 2, truncation=n)
    pair = mul(u2, w2)
    odd_head = mul(u_t, w_t)
    even_head = mul(mul(u_t, u_t), w2) + mul(mul(w_t, w_t), u2)
    tau = CycleIndexSeries.zero(n, exact=False)
    pw = CycleIndexSeries.one(n)          # pair ** ((m - 1) // 2) or pair ** ((m - 2) // 2)
    top = n if hi is None else hi
    for m in range(1, top + 1):
        if m >= 3 and m % 2 == 1:
            pw = mul(pw, pair)
        if m >= lo:
            if m % 2:
                term = mul(odd_head, pw)
            else:
                term = mul(even_head, pw).scale(mpq(1, 2))
            tau = tau + term
        if pw.is_zero():
            break
    tau = tau.with_truncation(n)
    return S2Series(part_e, tau)


# ---------------------------------------------------------------------------
# built-ins with order reversal
# ---------------------------------------------------------------------------

def _mono(**exps) -> int:
    # p1^a p2^b as a monomial code
    return 2 ** exps.get("a", 0) * 3 ** exps.get("b", 0)


def _lin_tau(n: int) -> dict:
    if n % 2 == 0:
        return {_mono(b=n // 2): mpq(1)}
    return {_mono(a=1, b=(n - 1) // 2): mpq(1)}


def _cyc_tau(n: int) -> dict:
    if n % 2 == 1:
        return {_mono(a=1, b=(n - 1) // 2): mpq(1)}
    return {_mono(a=2, b=(n - 2) // 2): mpq(1, 2), _mono(b=n // 2): mpq(1, 2)}


def g_builtin(kind: str, n: int | None = None, *, truncation: int) -> S2Series:
    """Built-in S2-species; ``tau`` reverses linear and cyclic orders.

    Kinds: ``"X"``, ``"E"``, ``"L_n"``, ``"C_n"`` and ``"C_>=k"`` (cyclic orders of
    size at least ``n``, summed up to the truncation).
    """
    N = truncation
    if kind in ("X", "E"):
        return lift(cis.builtin(kind, truncation=N))
    if n is None or n < 0:
        raise ValueError(f"built-in {kind} needs a size")
    if kind == "C_>=k":
        lo = max(n, 1)
        e_layers = [{} for _ in range(N + 1)]
        t_layers = [{} for _ in range(N + 1)]
        for k in range(lo, N + 1):
            e_layers[k] = cis._cyc_layer(k)
            t_layers[k] = _cyc_tau(k)
        return S2Series(CycleIndexSeries._raw(e_layers, N), CycleIndexSeries._raw(t_layers, N))
    if kind == "L_n":
        part_e = cis.builtin("L_n", n, truncation=N)
        tau = _lin_tau(n)
    elif kind == "C_n":
        part_e = cis.builtin("C_n", n, truncation=N)
        tau = _cyc_tau(n)
    else:
        raise ValueError(f"unknown S2 built-in {kind!r}")
    layers = [{} for _ in range(part_e.truncation + 1)]
    layers[n] = tau
    return S2Series(part_e, CycleIndexSeries._raw(layers, part_e.truncation, n))
