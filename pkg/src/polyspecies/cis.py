"""Cycle index series truncated by weight, and their calculus.

A :class:`CycleIndexSeries` stores one homogeneous layer per weight ``0..N``.
Every value carries its truncation ``N``: the layers it knows exactly.  Values
that are genuine polynomials (built-ins such as ``L_n`` and ``C_n``, or
restrictions) also carry ``degree`` and are then known to be zero above it, so
they can be combined at any precision.

Binary operations default to the smaller truncation of their inputs.  Most of
them take an optional ``truncation`` argument that may go further, up to the
bound justified by the inputs' valuations (e.g. ``X * F`` is known one layer
beyond ``F``); asking for more raises ``ValueError``.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .psring import (
    PsPolynomial,
    Rational,
    _weight,
    add_into,
    exponents,
    monomial,
    mul_into,
    prime,
    prune,
    stretch_terms,
    to_rational,
)

__all__ = [
    "CycleIndexSeries",
    "IntegrityError",
    "DivergenceError",
    "mul",
    "plethysm",
    "exp_compose",
    "series_exp",
    "geometric",
    "derivative",
    "restrict",
    "stretch",
    "labeled_counts",
    "unlabeled_counts",
    "builtin",
    "partitions",
    "z_factor",
]

INF = math.inf


class IntegrityError(ArithmeticError):
    """A count extracted from a species-valued series is not a nonnegative integer."""


class DivergenceError(ValueError):
    """A composition whose result would need infinitely many terms per layer."""


class CycleIndexSeries:
    __slots__ = ("_layers", "_truncation", "_degree")

    def __init__(self, layers: Sequence[Mapping[int, object]], truncation: int | None = None,
                 degree: int | None = None, *, check: bool = True):
        if truncation is None:
            truncation = len(layers) - 1
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        out = []
        for n in range(truncation + 1):
            src = layers[n] if n < len(layers) else {}
            if check:
                d = {}
                for m, c in src.items():
                    c = to_rational(c)
                    if not c:
                        continue
                    if _weight(m) != n:
                        raise ValueError(f"monomial of weight {_weight(m)} in layer {n}")
                    d[m] = c
            else:
                d = src
            out.append(d)
        self._layers = tuple(out)
        self._truncation = truncation
        if degree is not None:
            top = max((n for n, d in enumerate(out) if d), default=-1)
            if degree > truncation:
                degree = None
            elif check and top > degree:
                raise ValueError("nonzero layer above declared degree")
        self._degree = degree

    @classmethod
    def _raw(cls, layers: list, truncation: int, degree: int | None = None) -> CycleIndexSeries:
        obj = cls.__new__(cls)
        obj._layers = tuple(layers)
        obj._truncation = truncation
        obj._degree = degree if degree is not None and degree <= truncation else None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: PsPolynomial, exact: bool = False) -> CycleIndexSeries:
        """Split ``p`` into layers.  With ``exact``, ``p`` is taken as the whole series."""
        n = p.truncation
        layers: list[dict] = [{} for _ in range(n + 1)]
        for m, c in p.items():
            layers[_weight(m)][m] = c
        degree = max((k for k, d in enumerate(layers) if d), default=0) if exact else None
        return cls._raw(layers, n, degree)

    @classmethod
    def zero(cls, truncation: int, exact: bool = True) -> CycleIndexSeries:
        return cls._raw([{} for _ in range(truncation + 1)], truncation, 0 if exact else None)

    @classmethod
    def constant(cls, c, truncation: int) -> CycleIndexSeries:
        c = to_rational(c)
        layers = [{1: c} if c else {}] + [{} for _ in range(truncation)]
        return cls._raw(layers, truncation, 0)

    @classmethod
    def one(cls, truncation: int) -> CycleIndexSeries:
        return cls.constant(1, truncation)

    # access ---------------------------------------------------------------

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def degree(self) -> int | None:
        """Degree bound if this value is an exact polynomial, else ``None``."""
        return self._degree

    @property
    def is_polynomial(self) -> bool:
        return self._degree is not None

    @property
    def layers(self) -> tuple[dict, ...]:
        return self._layers

    def _known(self) -> float:
        return INF if self._degree is not None else self._truncation

    def _get(self, n: int) -> dict:
        if n <= self._truncation:
            return self._layers[n]
        if self._degree is not None:
            return {}
        raise ValueError(f"layer {n} is beyond the truncation {self._truncation}")

    def layer(self, n: int) -> PsPolynomial:
        return PsPolynomial._raw(dict(self._get(n)), max(n, self._truncation))

    def coefficient(self, m: int | Mapping[int, int]) -> Rational:
        if not isinstance(m, int):
            m = monomial(m)
        return self._get(_weight(m)).get(m, mpq(0))

    def to_polynomial(self) -> PsPolynomial:
        terms = {}
        for d in self._layers:
            terms.update(d)
        return PsPolynomial._raw(terms, self._truncation)

    def valuation(self) -> float:
        """Index of the first nonzero layer; ``truncation + 1`` (or inf if exact) when none."""
        for n, d in enumerate(self._layers):
            if d:
                return n
        return INF if self._degree is not None else self._truncation + 1

    def is_zero(self) -> bool:
        return not any(self._layers)

    def with_truncation(self, truncation: int) -> CycleIndexSeries:
        if truncation > self._truncation and self._degree is None:
            raise ValueError("cannot raise the truncation of an inexact series; use padded()")
        layers = [self._get(n) for n in range(truncation + 1)]
        return CycleIndexSeries._raw(layers, truncation, self._degree)

    def padded(self, truncation: int) -> CycleIndexSeries:
        """Zero-fill layers up to ``truncation``.  Only meaningful for fixed-point iterates."""
        layers = list(self._layers[: truncation + 1])
        layers += [{} for _ in range(truncation + 1 - len(layers))]
        return CycleIndexSeries._raw(layers, truncation, None)

    def check_invariants(self) -> None:
        assert len(self._layers) == self._truncation + 1
        for n, d in enumerate(self._layers):
            for m, c in d.items():
                assert c != 0, "zero coefficient stored"
                assert _weight(m) == n, "monomial in the wrong layer"
                assert isinstance(c, Rational)
        if self._degree is not None:
            assert all(not d for d in self._layers[self._degree + 1:])

    # arithmetic -----------------------------------------------------------

    def _lin(self, other: CycleIndexSeries, scale) -> CycleIndexSeries:
        n = min(self._truncation, other._truncation)
        if self._degree is not None and other._degree is not None:
            n = max(self._truncation, other._truncation)
        layers = []
        for k in range(n + 1):
            d = dict(self._get(k))
            add_into(d, other._get(k), scale)
            layers.append(prune(d))
        deg = None
        if self._degree is not None and other._degree is not None:
            deg = max(self._degree, other._degree)
        return CycleIndexSeries._raw(layers, n, deg)

    def _coerce(self, other) -> CycleIndexSeries | None:
        if isinstance(other, CycleIndexSeries):
            return other
        if isinstance(other, (int, Rational)) or type(other).__name__ == "Fraction":
            return CycleIndexSeries.constant(other, self._truncation)
        if isinstance(other, PsPolynomial):
            return CycleIndexSeries.from_polynomial(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._lin(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._lin(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._lin(self, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> CycleIndexSeries:
        s = to_rational(s)
        if not s:
            return CycleIndexSeries.zero(self._truncation)
        layers = [{m: s * c for m, c in d.items()} for d in self._layers]
        return CycleIndexSeries._raw(layers, self._truncation, self._degree)

    def __mul__(self, other):
        if isinstance(other, CycleIndexSeries):
            return mul(self, other)
        if isinstance(other, PsPolynomial):
            return mul(self, CycleIndexSeries.from_polynomial(other))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        return self.scale(1 / to_rational(other))

    def __pow__(self, e: int):
        return power(self, e)

    def __call__(self, inner: CycleIndexSeries) -> CycleIndexSeries:
        return plethysm(self, inner)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._truncation, o._truncation)
        if self._degree is not None and o._degree is not None:
            n = max(self._truncation, o._truncation)
        return all(self._get(k) == o._get(k) for k in range(n + 1))

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"[{n}] {PsPolynomial._raw(d, n)}" for n, d in enumerate(self._layers) if d)
        kind = f"degree={self._degree}" if self._degree is not None else f"truncation={self._truncation}"
        return f"CycleIndexSeries({body or '0'}; {kind})"


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _pick_truncation(default: int, bound: float, truncation: int | None) -> int:
    if truncation is None:
        return default
    if truncation > bound:
        raise ValueError(f"requested truncation {truncation} exceeds what the inputs determine ({bound})")
    return truncation


def mul_bound(a: CycleIndexSeries, b: CycleIndexSeries) -> float:
    """Highest layer of ``a * b`` determined by the inputs."""
    return min(a._known() + b.valuation(), b._known() + a.valuation())


def mul(a: CycleIndexSeries, b: CycleIndexSeries, truncation: int | None = None) -> CycleIndexSeries:
    """Truncated product (species product: coefficientwise Cauchy product of layers)."""
    default = min(a._truncation, b._truncation)
    if a._degree is not None and b._degree is not None:
        default = max(a._truncation, b._truncation)
    n = _pick_truncation(default, mul_bound(a, b), truncation)
    va, vb = a.valuation(), b.valuation()
    layers = []
    for k in range(n + 1):
        acc: dict = {}
        lo = int(va) if va != INF else k + 1
        for i in range(lo, k + 1):
            j = k - i
            if j < vb:
                break
            mul_into(acc, a._get(i), b._get(j))
        layers.append(prune(acc))
    deg = None
    if a._degree is not None and b._degree is not None:
        deg = a._degree + b._degree
    return CycleIndexSeries._raw(layers, n, deg)


def power(a: CycleIndexSeries, e: int) -> CycleIndexSeries:
    if e < 0:
        raise ValueError("negative power")
    result = CycleIndexSeries.one(a.truncation)
    for _ in range(e):
        result = mul(result, a)
    return result


def stretch(f: CycleIndexSeries, k: int, truncation: int | None = None) -> CycleIndexSeries:
    """Substitute ``p_j -> p_{k j}`` throughout ``f``."""
    if k < 1:
        raise ValueError("stretch factor must be >= 1")
    bound = INF if f._degree is not None else k * (f._truncation + 1) - 1
    n = _pick_truncation(f._truncation, bound, truncation)
    layers: list[dict] = [{} for _ in range(n + 1)]
    for j in range(n // k + 1):
        layers[j * k] = stretch_terms(f._get(j), k) if k > 1 else f._get(j)
    deg = f._degree * k if f._degree is not None else None
    return CycleIndexSeries._raw(layers, n, deg)


def derivative(f: CycleIndexSeries) -> CycleIndexSeries:
    """Partial derivative with respect to ``p1`` (the species derivative)."""
    if f._degree is not None:
        n = f._truncation
    else:
        n = f._truncation - 1
        if n < 0:
            raise ValueError("derivative of a series known only through layer 0")
    layers = []
    for k in range(n + 1):
        d = {}
        for m, c in f._get(k + 1).items():
            if m % 2 == 0:
                e = 0
                q = m
                while q % 2 == 0:
                    q //= 2
                    e += 1
                d[m // 2] = c * e
        layers.append(d)
    deg = max(f._degree - 1, 0) if f._degree is not None else None
    return CycleIndexSeries._raw(layers, n, deg)


def restrict(f: CycleIndexSeries, lo: int, hi: int) -> CycleIndexSeries:
    """Keep only layers ``lo..hi`` (inclusive); an empty range gives 0."""
    if lo < 0 or hi > f._truncation:
        raise ValueError(f"range [{lo}, {hi}] outside 0..{f._truncation}")
    layers = [dict(d) if lo <= k <= hi else {} for k, d in enumerate(f._layers)]
    return CycleIndexSeries._raw(layers, f._truncation, max(hi, 0) if hi >= lo else 0)


# ---------------------------------------------------------------------------
# exponential-type series
# ---------------------------------------------------------------------------

def series_exp(h: CycleIndexSeries) -> CycleIndexSeries:
    """``exp(h)`` for ``h`` with zero constant term, via ``n F_n = sum_k k h_k F_{n-k}``."""
    if h._layers[0]:
        raise DivergenceError("exp of a series with nonzero constant term")
    n = h._truncation
    out: list[dict] = [{1: mpq(1)}]
    for k in range(1, n + 1):
        acc: dict = {}
        for i in range(1, k + 1):
            if h._layers[i] and out[k - i]:
                mul_into(acc, h._layers[i], out[k - i], mpq(i, k))
        out.append(prune(acc))
    return CycleIndexSeries._raw(out, n)


def geometric(q: CycleIndexSeries) -> CycleIndexSeries:
    """``1 / (1 - q)`` for ``q`` with zero constant term."""
    if q._layers[0]:
        raise DivergenceError("1/(1-q) needs q with zero constant term")
    n = q._truncation
    out: list[dict] = [{1: mpq(1)}]
    for k in range(1, n + 1):
        acc: dict = {}
        for i in range(1, k + 1):
            if q._layers[i] and out[k - i]:
                mul_into(acc, q._layers[i], out[k - i])
        out.append(prune(acc))
    return CycleIndexSeries._raw(out, n)


def exp_log_sum(inner: Callable[[int], CycleIndexSeries], truncation: int) -> CycleIndexSeries:
    """``sum_{i>=1} inner(i) / i`` where ``inner(i)`` is already stretched by ``i``."""
    layers: list[dict] = [{} for _ in range(truncation + 1)]
    for i in range(1, truncation + 1):
        g = inner(i)
        for k in range(i, truncation + 1):
            d = g._get(k)
            if d:
                add_into(layers[k], d, mpq(1, i))
    return CycleIndexSeries._raw([prune(d) for d in layers], truncation)


def exp_compose(g: CycleIndexSeries, truncation: int | None = None) -> CycleIndexSeries:
    """``Z_E o g = exp(sum_i g(p_i, p_2i, ...) / i)``; ``g`` must have zero constant term."""
    if g.valuation() < 1:
        raise DivergenceError("E composed with a series that has a constant term")
    n = g._truncation if truncation is None else min(truncation, g._truncation)
    return series_exp(exp_log_sum(lambda i: stretch(g, i, truncation=n), n))


# ---------------------------------------------------------------------------
# plethysm
# ---------------------------------------------------------------------------

def compose_bound(f: CycleIndexSeries, inner_val: float, inner_known: float) -> float:
    """Highest layer of ``f o g`` determined when ``g`` has the given valuation and precision."""
    if f._degree is None:
        if inner_val < 1:
            raise DivergenceError("composition of an infinite series with a constant-term inner series")
        bf = (f._truncation + 1) * inner_val - 1
    else:
        bf = INF
    w_min = next((k for k in range(1, f._truncation + 1) if f._layers[k]), None)
    if w_min is None:
        w_min = INF if f._degree is not None else f._truncation + 1
    if w_min == INF:
        bg = INF
    else:
        bg = inner_known + (w_min - 1) * inner_val
    return min(bf, bg)


def compose(f: CycleIndexSeries, inner: Callable[[int], CycleIndexSeries], inner_val: float,
            truncation: int) -> CycleIndexSeries:
    """Substitute ``p_i -> inner(i)`` in every monomial of ``f`` (core of all plethysms).

    ``inner(i)`` must already be stretched by ``i`` and known through ``truncation``
    wherever it matters.  Products are shared between monomials through a cache
    of prefix products over the factors sorted by decreasing index.
    """
    n = truncation
    acc: list[dict] = [{} for _ in range(n + 1)]
    powers: dict[tuple[int, int], CycleIndexSeries] = {}
    inners: dict[int, CycleIndexSeries] = {}
    prefixes: dict[tuple, CycleIndexSeries] = {}

    def get_inner(i: int) -> CycleIndexSeries:
        s = inners.get(i)
        if s is None:
            s = inners[i] = inner(i)
        return s

    def get_power(i: int, e: int) -> CycleIndexSeries:
        s = powers.get((i, e))
        if s is None:
            base = get_inner(i)
            if e == 1:
                s = base
            else:
                prev = get_power(i, e - 1)
                s = mul(prev, base, truncation=int(min(n, mul_bound(prev, base))))
            powers[(i, e)] = s
        return s

    top = n if inner_val >= 1 else (f._degree if f._degree is not None else n)
    for w in range(min(top, f._truncation if f._degree is None else f._degree) + 1):
        layer = f._get(w)
        for m, c in layer.items():
            if m == 1:
                add_into(acc[0], {1: c})
                continue
            factors = tuple(reversed(exponents(m)))
            prod = None
            for j in range(1, len(factors) + 1):
                key = factors[:j]
                cached = prefixes.get(key)
                if cached is None:
                    pw = get_power(*factors[j - 1])
                    if prod is None:
                        cached = pw
                    else:
                        cached = mul(prod, pw, truncation=int(min(n, mul_bound(prod, pw))))
                    if j < len(factors):
                        prefixes[key] = cached
                prod = cached
            if prod._truncation < n and prod._degree is None:
                raise ValueError("internal precision error in compose")
            for k in range(n + 1):
                d = prod._get(k)
                if d:
                    add_into(acc[k], d, c)
    return CycleIndexSeries._raw([prune(d) for d in acc], n)


def plethysm(f: CycleIndexSeries, g: CycleIndexSeries, truncation: int | None = None) -> CycleIndexSeries:
    """Species composition ``f o g``: each ``p_i`` in ``f`` becomes ``g(p_i, p_2i, ...)``.

    ``g`` may have a constant term only when ``f`` is an exact polynomial.
    """
    vg = g.valuation()
    bound = compose_bound(f, vg, g._known())
    default = min(f._truncation, g._truncation)
    if f._degree is not None and g._degree is not None:
        default = max(f._truncation, g._truncation)
    n = _pick_truncation(default, bound, truncation)

    def inner(i: int) -> CycleIndexSeries:
        limit = INF if g._degree is not None else i * (g._truncation + 1) - 1
        return stretch(g, i, truncation=int(min(n, limit)))

    out = compose(f, inner, vg, n)
    if f._degree is not None and g._degree is not None and out._truncation >= f._degree * g._degree:
        return CycleIndexSeries._raw(list(out._layers), n, f._degree * g._degree)
    return out


# ---------------------------------------------------------------------------
# counts
# ---------------------------------------------------------------------------

def _as_count(x: Rational, what: str, n: int, allow_negative: bool) -> int:
    if x.denominator != 1:
        raise IntegrityError(f"{what} count at n={n} is not an integer: {x}")
    v = int(x.numerator)
    if v < 0 and not allow_negative:
        raise IntegrityError(f"{what} count at n={n} is negative: {v}")
    return v


def labeled_counts(f: CycleIndexSeries, allow_negative: bool = False) -> list[int]:
    """``n! * [p1^n] f`` for ``n = 0..N``: the numbers of labeled structures."""
    out = []
    fact = 1
    for n, d in enumerate(f._layers):
        if n:
            fact *= n
        c = d.get(2 ** n, mpq(0))
        out.append(_as_count(c * fact, "labeled", n, allow_negative))
    return out


def unlabeled_counts(f: CycleIndexSeries, allow_negative: bool = False) -> list[int]:
    """Coefficients of ``f(x, x^2, x^3, ...)``: the numbers of unlabeled structures."""
    return [_as_count(sum(d.values(), mpq(0)), "unlabeled", n, allow_negative)
            for n, d in enumerate(f._layers)]


# ---------------------------------------------------------------------------
# built-in species
# ---------------------------------------------------------------------------

def partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    """Partitions of ``n`` as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def z_factor(parts: Iterable[int]) -> int:
    """``z_lambda = prod_i i^{m_i} m_i!``, the centralizer order of cycle type ``lambda``."""
    counts: dict[int, int] = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    z = 1
    for i, m in counts.items():
        z *= i ** m * math.factorial(m)
    return z


def parts_monomial(parts: Iterable[int]) -> int:
    m = 1
    for p in parts:
        m *= prime(p)
    return m


def totient(n: int) -> int:
    result, k, m = n, 2, n
    while k * k <= m:
        if m % k == 0:
            while m % k == 0:
                m //= k
            result -= result // k
        k += 1
    if m > 1:
        result -= result // m
    return result


def _sets_layer(n: int) -> dict:
    return {parts_monomial(lam): mpq(1, z_factor(lam)) for lam in partitions(n)}


def _cyc_layer(n: int) -> dict:
    return {prime(d) ** (n // d): mpq(totient(d), n) for d in range(1, n + 1) if n % d == 0}


def builtin(kind: str, n: int | None = None, *, truncation: int) -> CycleIndexSeries:
    """Cycle index of a built-in species.

    ``kind`` is one of ``"X"`` (singletons), ``"E"`` (sets), ``"E_n"``, ``"L_n"``
    (linear orders) and ``"C_n"`` (cyclic orders); the ``_n`` kinds need ``n``.
    """
    N = truncation
    if kind == "E":
        return CycleIndexSeries._raw([_sets_layer(k) for k in range(N + 1)], N)
    if kind == "X":
        kind, n = "L_n", 1
    if n is None or n < 0:
        raise ValueError(f"built-in {kind} needs a size n >= 0")
    # sizes above N keep their layer so the value stays an exact polynomial
    M = max(N, n)
    layers: list[dict] = [{} for _ in range(M + 1)]
    if kind == "E_n":
        layer = _sets_layer
    elif kind == "L_n":
        def layer(k):
            return {2 ** k: mpq(1)}
    elif kind == "C_n":
        if n == 0:
            raise ValueError("C_0 is not defined")
        layer = _cyc_layer
    else:
        raise ValueError(f"unknown built-in species {kind!r}")
    layers[n] = layer(n)
    return CycleIndexSeries._raw(layers, M, n)
