"""Orientation-reversal (S2) series: built-ins, products, plethysm, quotient."""
import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from polyspecies import cis, ptrees
from polyspecies.checks import random_series
from polyspecies.cis import CycleIndexSeries
from polyspecies.gamma2 import (S2Series, g_builtin, g_exp_compose, g_mul, g_plethysm, g_polygon,
                                lift, quotient_s2)
from polyspecies.psring import power_sum


def p(i, t=8):
    return power_sum(i, t)


def ser(poly):
    return CycleIndexSeries.from_polynomial(poly, exact=True)


def layer(s, n):
    return ser(s.layer(n).with_truncation(8))


def test_builtin_tau_parts():
    assert layer(g_builtin("L_n", 2, truncation=4).part_tau, 2) == ser(p(2))
    assert layer(g_builtin("C_n", 3, truncation=4).part_tau, 3) == ser(p(1) * p(2))
    assert layer(g_builtin("C_n", 4, truncation=4).part_tau, 4) == ser((p(1) ** 2 * p(2) + p(2) ** 2) / 2)
    assert layer(g_builtin("L_n", 3, truncation=4).part_tau, 3) == ser(p(1) * p(2))
    x = g_builtin("X", truncation=4)
    assert x.part_e == x.part_tau == cis.builtin("X", truncation=4)


def test_c_at_least_k_sums_sizes():
    c = g_builtin("C_>=k", 3, truncation=7)
    for n in range(8):
        want = g_builtin("C_n", n, truncation=7) if n >= 3 else S2Series.zero(7)
        assert layer(c.part_e, n) == layer(want.part_e, n)
        assert layer(c.part_tau, n) == layer(want.part_tau, n)


def test_mul_of_oriented_edges():
    l2 = g_builtin("L_n", 2, truncation=4)
    prod = g_mul(l2, l2)
    assert layer(prod.part_e, 4) == ser(p(1) ** 4)
    assert layer(prod.part_tau, 4) == ser(p(2) ** 2)


def test_add_sub_identities():
    a = g_builtin("C_>=k", 3, truncation=6)
    assert a + 0 == a
    assert (a - a).part_e.is_zero() and (a - a).part_tau.is_zero()


def test_plethysm_identity():
    f = g_mul(g_builtin("L_n", 2, truncation=6), g_builtin("C_n", 3, truncation=6))
    assert g_plethysm(f, g_builtin("X", truncation=6)) == f


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32))
def test_plethysm_of_oriented_pair_uses_stretch(seed):
    rng = random.Random(seed)
    g = S2Series(random_series(rng, 6, 1), random_series(rng, 6, 1))
    out = g_plethysm(g_builtin("L_n", 2, truncation=6), g)
    assert out.part_tau == cis.stretch(g.part_e, 2, truncation=6)
    assert out.part_e == cis.mul(g.part_e, g.part_e, truncation=6)


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32))
def test_sets_ignore_the_action_on_the_e_part(seed):
    rng = random.Random(seed)
    g = S2Series(random_series(rng, 6, 1), random_series(rng, 6, 1))
    assert g_plethysm(g_builtin("E", truncation=6), g).part_e == cis.exp_compose(g.part_e)
    assert g_exp_compose(g).part_e == cis.exp_compose(g.part_e)


def test_exp_compose_basics():
    z = g_exp_compose(S2Series.zero(5))
    assert z == S2Series.one(5)
    e = cis.builtin("E", truncation=6)
    assert g_exp_compose(g_builtin("X", truncation=6)) == S2Series(e, e)


def test_quotient():
    pair = S2Series(ser(p(1) ** 2), ser(p(2)))
    assert quotient_s2(pair) == ser((p(1) ** 2 + p(2)) / 2)
    z = cis.builtin("C_n", 5, truncation=5)
    assert quotient_s2(lift(z)) == z


# --- brute force: oriented pairs of 2-orders, under simultaneous reversal -----

def test_product_tau_part_by_brute_force():
    # structures: (order on A, order on B) with A, B a split of {0..3} into two pairs
    n = 4
    structs = []
    for a in itertools.combinations(range(n), 2):
        b = tuple(i for i in range(n) if i not in a)
        for oa in itertools.permutations(a):
            for ob in itertools.permutations(b):
                structs.append((oa, ob))
    counts = {}
    for perm in itertools.permutations(range(n)):
        fixed = sum(1 for (oa, ob) in structs
                    if (tuple(perm[i] for i in oa[::-1]), tuple(perm[i] for i in ob[::-1])) == (oa, ob))
        if fixed:
            counts[perm] = fixed
    total = sum(counts.values())
    prod = g_mul(g_builtin("L_n", 2, truncation=4), g_builtin("L_n", 2, truncation=4))
    # coefficient of p2^2 times 4! / z(2,2) counts the fixed pairs summed over that class
    assert prod.part_tau.coefficient({2: 2}) * 24 == total


# --- the geometric polygon operator ------------------------------------------

def test_polygon_operator_counts_match_cyclic_model():
    # With corners and sides both plain atoms the two models count the same orbits,
    # since the (p1^2 - p2) difference vanishes on the p_i -> x^i specialization.
    x = g_builtin("X", truncation=10)
    geo = g_polygon((3, None), x, x)
    cyc = g_plethysm(g_builtin("C_>=k", 3, truncation=10), g_mul(x, x))
    for s2 in (geo, cyc):
        assert cis.unlabeled_counts(quotient_s2(s2))[6] == 1
    assert cis.unlabeled_counts(quotient_s2(geo)) == cis.unlabeled_counts(quotient_s2(cyc))
    assert cis.labeled_counts(quotient_s2(geo)) == cis.labeled_counts(quotient_s2(cyc))


def test_polygon_operator_reflection_fixes_corners_or_sides():
    # square with 4 distinct corner labels and trivial sides: a reflection through two
    # opposite corners fixes those two corners, so tau has a p1^2 p2 term; through two
    # opposite sides it swaps all corners in pairs, giving p2^2
    one = S2Series.one(4)
    sq = g_polygon(4, g_builtin("X", truncation=4), one)
    assert layer(sq.part_tau, 4) == ser((p(1) ** 2 * p(2) + p(2) ** 2) / 2)
    assert layer(sq.part_e, 4) == layer(g_builtin("C_n", 4, truncation=4).part_e, 4)


def test_polygon_operator_differs_from_cyclic_model_in_full_index():
    a_estar = ptrees.solve_estar(8)
    geo = ptrees.polygon_rooted(a_estar, polygon_action="geometric")
    cyc = ptrees.polygon_rooted(a_estar, polygon_action="cyclic")
    assert geo.part_e == cyc.part_e
    assert geo.part_tau != cyc.part_tau
    # first visible on a square with a triangle on one side: the reflection through
    # the midpoints of that side and the opposite one fixes two sides, not two pairs
    first = min(n for n in range(9) if geo.part_tau.layers[n] != cyc.part_tau.layers[n])
    assert first == 5


def test_polygon_operator_rejects_bad_input():
    x = g_builtin("X", truncation=5)
    with pytest.raises(ValueError):
        g_polygon(0, x, x)
    with pytest.raises(ValueError):
        g_polygon(3, S2Series.one(5), x)    # corners without atoms: infinitely many polygons
