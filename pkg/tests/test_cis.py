import itertools
import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from polyspecies import cis
from polyspecies.checks import random_series
from polyspecies.cis import CycleIndexSeries, IntegrityError
from polyspecies.psring import power_sum

from conftest import polygonal


def series(poly, exact=True):
    return CycleIndexSeries.from_polynomial(poly, exact=exact)


def p(i, t=6):
    return power_sum(i, t)


def Z(kind, n=None, t=6):
    return cis.builtin(kind, n, truncation=t)


# --- brute force: count structures fixed by every permutation -------------

def cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i not in seen:
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def brute_cycle_index(structures, act, n):
    """{cycle type: coefficient} from |Fix(sigma)| summed over S_n, divided by n!."""
    out = {}
    for perm in itertools.permutations(range(n)):
        fixed = sum(1 for s in structures if act(perm, s) == s)
        lam = cycle_type(perm)
        out[lam] = out.get(lam, 0) + fixed
    return {lam: mpq(c, math.factorial(n)) for lam, c in out.items() if c}


def layer_dict(s, n):
    return {tuple(sorted((i for i, e in _exps(m) for _ in range(e)), reverse=True)): c
            for m, c in s.layer(n).items()}


def _exps(m):
    from polyspecies.psring import exponents
    return exponents(m)


def canonical_cycle(order):
    i = order.index(0)
    return tuple(order[i:] + order[:i])


# --- built-ins -------------------------------------------------------------

def test_builtin_values():
    assert Z("X") == series(p(1))
    assert Z("L_n", 2) == series(p(1) ** 2)
    assert Z("C_n", 3) == series((p(1) ** 3 + 2 * p(3)) / 3)
    assert Z("E_n", 2) == series((p(1) ** 2 + p(2)) / 2)
    with pytest.raises(ValueError):
        Z("C_n", 0)
    with pytest.raises(ValueError):
        Z("L_n")


@pytest.mark.parametrize("n", range(1, 6))
def test_builtins_against_fixed_points(n):
    sets = [frozenset(range(n))]
    orders = [tuple(s) for s in itertools.permutations(range(n))]
    cycles = sorted({canonical_cycle(list(o)) for o in orders})
    relabel_set = lambda perm, s: frozenset(perm[i] for i in s)
    relabel_order = lambda perm, s: tuple(perm[i] for i in s)
    relabel_cycle = lambda perm, s: canonical_cycle([perm[i] for i in s])
    assert layer_dict(Z("E"), n) == brute_cycle_index(sets, relabel_set, n)
    assert layer_dict(Z("L_n", n), n) == brute_cycle_index(orders, relabel_order, n)
    assert layer_dict(Z("C_n", n), n) == brute_cycle_index(cycles, relabel_cycle, n)


# --- plethysm and exp ------------------------------------------------------

def test_plethysm_identity_and_stretch():
    f = Z("E") * Z("C_n", 3)
    assert cis.plethysm(f, Z("X")) == f
    assert cis.plethysm(series(p(2)), series(p(1) + p(2))) == series(p(2) + p(4))


def test_sets_of_singletons_one_per_size():
    e_of_x = cis.plethysm(Z("E", t=12), Z("X", t=12))
    assert cis.unlabeled_counts(e_of_x) == [1] * 13
    assert cis.labeled_counts(e_of_x) == [1] * 13


def test_exp_compose_examples():
    assert cis.exp_compose(CycleIndexSeries.zero(5)) == CycleIndexSeries.one(5)
    got = cis.exp_compose(Z("X", t=3))
    want = 1 + p(1, 3) + (p(1, 3) ** 2 + p(2, 3)) / 2 + p(1, 3) ** 3 / 6 + p(1, 3) * p(2, 3) / 2 + p(3, 3) / 3
    assert got == series(want, exact=False)


def test_exp_compose_of_even_generator_has_even_support():
    g = series(p(2, 10), exact=False)
    e = cis.exp_compose(g)
    assert all(not e.layers[n] for n in range(1, 11, 2))
    assert e.layer(4).coefficient({2: 2}) == mpq(1, 2)


def test_exp_compose_requires_positive_valuation():
    with pytest.raises(ValueError):
        cis.exp_compose(Z("E"))


@settings(max_examples=120)
@given(st.integers(0, 2 ** 32), st.integers(1, 8))
def test_plethysm_associative(seed, t):
    rng = random.Random(seed)
    f = random_series(rng, t)
    g = random_series(rng, t, valuation=1, density=0.4)
    h = random_series(rng, t, valuation=1, density=0.4)
    assert cis.plethysm(cis.plethysm(f, g), h) == cis.plethysm(f, cis.plethysm(g, h))


@settings(max_examples=120)
@given(st.integers(0, 2 ** 32), st.integers(1, 8))
def test_exp_compose_equals_sets_plethysm(seed, t):
    g = random_series(random.Random(seed), t, valuation=1)
    assert cis.exp_compose(g) == cis.plethysm(Z("E", t=t), g)


def test_plethysm_is_not_symmetric():
    # guards against a plethysm that silently degenerates to multiplication
    f = series(p(1, 4) ** 2, exact=False)
    g = series(p(1, 4) + p(2, 4), exact=False)
    assert cis.plethysm(f, g) != cis.plethysm(g, f)
    assert cis.plethysm(f, g) == series((p(1, 4) + p(2, 4)) ** 2, exact=False)


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32), st.integers(1, 7))
def test_product_rule(seed, t):
    rng = random.Random(seed)
    f, g = random_series(rng, t), random_series(rng, t)
    lhs = cis.derivative(cis.mul(f, g))
    rhs = cis.mul(cis.derivative(f), g) + cis.mul(f, cis.derivative(g))
    assert lhs == rhs


# --- derivative, restrict --------------------------------------------------

def test_derivative():
    assert cis.derivative(series(p(1) ** 3)) == series(3 * p(1) ** 2)
    assert cis.derivative(series(p(2))).is_zero()
    e = Z("E", t=7)
    assert cis.derivative(e).with_truncation(6) == e.with_truncation(6)


def test_restrict():
    e = Z("E", t=5)
    assert cis.restrict(e, 2, 2) == series((p(1) ** 2 + p(2)) / 2)
    assert cis.restrict(e, 0, 5) == e
    assert cis.restrict(e, 1, 0).is_zero()


# --- truncation honesty ----------------------------------------------------

def test_mul_truncation_is_honest():
    a = series(p(1, 4), exact=False)      # known through weight 4 only
    b = Z("X", t=4)
    assert cis.mul(a, b, truncation=5).truncation == 5   # valuation 1 justifies one more layer
    with pytest.raises(ValueError):
        cis.mul(a, b, truncation=6)


def test_unknown_layers_are_not_invented():
    a = CycleIndexSeries.zero(3, exact=False)
    with pytest.raises(ValueError):
        a.layer(4)
    assert not CycleIndexSeries.zero(3).layer(9)


# --- counts ----------------------------------------------------------------

def test_counts_of_unordered_pair():
    e2 = series((p(1) ** 2 + p(2)) / 2)
    assert cis.labeled_counts(e2)[2] == 1
    assert cis.unlabeled_counts(e2)[2] == 1


def test_counts_reject_nonintegral():
    with pytest.raises(IntegrityError):
        cis.labeled_counts(series(p(1) ** 2 / 3))
    with pytest.raises(IntegrityError):
        cis.unlabeled_counts(series(p(2) / 2))
    with pytest.raises(IntegrityError):
        cis.unlabeled_counts(series(-p(1)))


def test_polygonal_counts_from_series():
    a = polygonal(7).a_unoriented
    lab, unl = cis.labeled_counts(a), cis.unlabeled_counts(a)
    assert lab[4] == 9 and lab[6] == 3255
    assert unl[7] == 35


def test_z_factor_and_partitions():
    assert cis.z_factor((2, 1, 1)) == 4
    assert sum(1 for _ in cis.partitions(10)) == 42
    assert sum(math.factorial(6) // cis.z_factor(lam) for lam in cis.partitions(6)) == math.factorial(6)


def test_labeled_counts_of_plethysm_compose_egfs():
    # labeled counts only see p1^n; compose the exponential generating functions by hand
    from fractions import Fraction
    f, g = Z("C_n", 3, t=9) + Z("E_n", 2, t=9), Z("L_n", 1, t=9) + Z("L_n", 2, t=9)
    F = [Fraction(0)] * 10
    F[3], F[2] = Fraction(1, 3), Fraction(1, 2)   # (n-1)!/n! and 1/2!
    G = [Fraction(0), Fraction(1), Fraction(1)] + [Fraction(0)] * 7

    def mul(a, b):
        out = [Fraction(0)] * 10
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < 10:
                    out[i + j] += x * y
        return out

    total, power = [Fraction(0)] * 10, [Fraction(1)] + [Fraction(0)] * 9
    for k in range(10):
        total = [t + F[k] * q for t, q in zip(total, power)]
        power = mul(power, G)
    want = [int(c * math.factorial(n)) for n, c in enumerate(total)]
    assert cis.labeled_counts(cis.plethysm(f, g)) == want
