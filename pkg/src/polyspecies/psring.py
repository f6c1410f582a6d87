"""Sparse polynomials in the power-sum indeterminates p1, p2, ... over exact rationals.

A monomial ``p1^e1 p2^e2 ...`` is encoded as the integer ``2^e1 * 3^e2 * 5^e3 ...``
(the i-th prime stands for ``p_i``), so multiplying monomials is integer
multiplication and dict lookups hash small ints.  Coefficients are ``gmpy2.mpq``.

The low-level ``*_terms`` kernels work on plain ``{monomial: coefficient}`` dicts
and are shared with :mod:`polyspecies.cis`; :class:`PsPolynomial` wraps them with
a truncation by total weight.
"""
from __future__ import annotations

import functools
from collections.abc import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Rational",
    "PsPolynomial",
    "prime",
    "monomial",
    "exponents",
    "weight",
    "stretch_monomial",
    "power_sum",
    "to_rational",
]

Rational = type(mpq())

_primes: list[int] = [2, 3, 5, 7, 11, 13]
_prime_index: dict[int, int] = {p: i + 1 for i, p in enumerate(_primes)}


def prime(i: int) -> int:
    """Return the prime encoding ``p_i`` (1-indexed: ``prime(1) == 2``)."""
    if i < 1:
        raise ValueError(f"power-sum index must be positive, got {i}")
    while len(_primes) < i:
        p = int(gmpy2.next_prime(_primes[-1]))
        _primes.append(p)
        _prime_index[p] = len(_primes)
    return _primes[i - 1]


def to_rational(c) -> Rational:
    if isinstance(c, Rational):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not supported")
    return mpq(c)


def monomial(exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> int:
    """Encode ``{i: e_i}`` as a monomial code.  The empty map is the unit monomial 1."""
    items = exps.items() if isinstance(exps, Mapping) else exps
    m = 1
    for i, e in items:
        if e < 0:
            raise ValueError(f"negative exponent {e} for p{i}")
        if e:
            m *= prime(i) ** e
    return m


@functools.lru_cache(maxsize=None)
def exponents(m: int) -> tuple[tuple[int, int], ...]:
    """Decode a monomial into sorted ``((i, e_i), ...)`` pairs with every ``e_i > 0``."""
    if m < 1:
        raise ValueError(f"invalid monomial code {m}")
    out = []
    i = 1
    while m > 1:
        p = prime(i)
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((i, e))
        i += 1
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _weight(m: int) -> int:
    return sum(i * e for i, e in exponents(m))


def weight(m: int | Mapping[int, int]) -> int:
    """Total weight ``sum(i * e_i)``: the number of atoms the monomial accounts for.

    Accepts a monomial code or an ``{i: e_i}`` map.
    """
    if isinstance(m, Mapping):
        return sum(i * e for i, e in m.items())
    return _weight(m)


@functools.lru_cache(maxsize=None)
def stretch_monomial(m: int, k: int) -> int:
    """Image of ``m`` under ``p_j -> p_{k j}``."""
    if k == 1:
        return m
    return monomial((k * i, e) for i, e in exponents(m))


def monomial_str(m: int) -> str:
    if m == 1:
        return "1"
    return "*".join(f"p{i}" if e == 1 else f"p{i}^{e}" for i, e in exponents(m))


# ---------------------------------------------------------------------------
# dict kernels
# ---------------------------------------------------------------------------

def add_terms(a: Mapping[int, Rational], b: Mapping[int, Rational], scale=1) -> dict:
    """Return ``a + scale * b`` with cancelled terms removed."""
    out = dict(a)
    if scale == 1:
        for m, c in b.items():
            out[m] = out.get(m, 0) + c
    else:
        for m, c in b.items():
            out[m] = out.get(m, 0) + scale * c
    return {m: c for m, c in out.items() if c}


def add_into(acc: dict, b: Mapping[int, Rational], scale=1) -> None:
    """In-place ``acc += scale * b``; may leave zero entries (see :func:`prune`)."""
    get = acc.get
    if scale == 1:
        for m, c in b.items():
            acc[m] = get(m, 0) + c
    else:
        for m, c in b.items():
            acc[m] = get(m, 0) + scale * c


def mul_into(acc: dict, a: Mapping[int, Rational], b: Mapping[int, Rational], scale=1) -> None:
    """In-place ``acc += scale * a * b`` with no truncation (caller picks homogeneous layers)."""
    if not a or not b:
        return
    if len(a) < len(b):
        a, b = b, a
    get = acc.get
    bitems = list(b.items())
    if scale != 1:
        bitems = [(m, scale * c) for m, c in bitems]
    for m1, c1 in a.items():
        for m2, c2 in bitems:
            m = m1 * m2
            acc[m] = get(m, 0) + c1 * c2


def prune(d: dict) -> dict:
    return {m: c for m, c in d.items() if c}


def scale_terms(a: Mapping[int, Rational], s) -> dict:
    if not s:
        return {}
    return {m: s * c for m, c in a.items()}


def stretch_terms(a: Mapping[int, Rational], k: int) -> dict:
    if k == 1:
        return dict(a)
    return {stretch_monomial(m, k): c for m, c in a.items()}


# ---------------------------------------------------------------------------
# PsPolynomial
# ---------------------------------------------------------------------------

class PsPolynomial:
    """An immutable polynomial in p1, p2, ... keeping only terms of weight <= ``truncation``.

    ``terms`` maps monomial codes (see :func:`monomial`) to rationals.  Terms above
    the truncation are dropped on construction; zero coefficients are never stored.
    Binary operations work at the smaller of the two truncations.
    """

    __slots__ = ("_terms", "_truncation")

    def __init__(self, terms: Mapping[int, object] | None = None, truncation: int = 0):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        clean = {}
        for m, c in (terms or {}).items():
            c = to_rational(c)
            if c and _weight(m) <= truncation:
                clean[m] = c
        self._terms = clean
        self._truncation = truncation

    @classmethod
    def _raw(cls, terms: dict, truncation: int) -> PsPolynomial:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._truncation = truncation
        return obj

    @property
    def truncation(self) -> int:
        return self._truncation

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, m: int | Mapping[int, int]) -> Rational:
        if not isinstance(m, int):
            m = monomial(m)
        return self._terms.get(m, mpq(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_homogeneous(self, n: int) -> bool:
        return all(_weight(m) == n for m in self._terms)

    def layer(self, n: int) -> PsPolynomial:
        return PsPolynomial._raw({m: c for m, c in self._terms.items() if _weight(m) == n},
                                 self._truncation)

    def max_weight(self) -> int:
        return max((_weight(m) for m in self._terms), default=-1)

    def with_truncation(self, truncation: int) -> PsPolynomial:
        return PsPolynomial(self._terms, truncation)

    def check_invariants(self) -> None:
        for m, c in self._terms.items():
            assert c != 0, "zero coefficient stored"
            assert _weight(m) <= self._truncation, "term above truncation"
            assert isinstance(c, Rational)

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> PsPolynomial | None:
        if isinstance(other, PsPolynomial):
            return other
        if isinstance(other, (int, Rational)) or type(other).__name__ == "Fraction":
            return PsPolynomial({1: other}, self._truncation)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._truncation, o._truncation)
        return PsPolynomial(add_terms(self._terms, o._terms), n)

    __radd__ = __add__

    def __neg__(self):
        return PsPolynomial._raw({m: -c for m, c in self._terms.items()}, self._truncation)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._truncation, o._truncation)
        return PsPolynomial(add_terms(self._terms, o._terms, -1), n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PsPolynomial):
            n = min(self._truncation, other._truncation)
            acc: dict = {}
            a = {m: c for m, c in self._terms.items() if _weight(m) <= n}
            b = {m: c for m, c in other._terms.items() if _weight(m) <= n}
            for m1, c1 in a.items():
                w1 = _weight(m1)
                for m2, c2 in b.items():
                    if w1 + _weight(m2) <= n:
                        m = m1 * m2
                        acc[m] = acc.get(m, 0) + c1 * c2
            return PsPolynomial._raw(prune(acc), n)
        try:
            s = to_rational(other)
        except TypeError:
            return NotImplemented
        return PsPolynomial._raw(prune(scale_terms(self._terms, s)), self._truncation)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / to_rational(other))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = PsPolynomial({1: 1}, self._truncation)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def stretch(self, k: int) -> PsPolynomial:
        """Substitute ``p_j -> p_{k j}``; weights scale by ``k``."""
        if k < 1:
            raise ValueError("stretch factor must be >= 1")
        return PsPolynomial(stretch_terms(self._terms, k), self._truncation)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._truncation, o._truncation)
        a = {m: c for m, c in self._terms.items() if _weight(m) <= n}
        b = {m: c for m, c in o._terms.items() if _weight(m) <= n}
        return a == b

    __hash__ = None

    def __repr__(self) -> str:
        return f"PsPolynomial({self}, truncation={self._truncation})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (_weight(m), [(-i, -e) for i, e in exponents(m)])):
            c = self._terms[m]
            ms = monomial_str(m)
            if ms == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append("-" + ms)
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")


def power_sum(i: int, truncation: int) -> PsPolynomial:
    """The polynomial ``p_i``."""
    return PsPolynomial({prime(i): 1}, truncation)
