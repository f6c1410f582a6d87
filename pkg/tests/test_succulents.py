import pytest

from polyspecies import cis, oracle, succulents
from polyspecies.cis import CycleIndexSeries
from polyspecies.psring import power_sum
from polyspecies.tables import SUCCULENTS

from conftest import polygonal, succulent


def as_parts(series, n):
    from polyspecies.psring import exponents
    out = {}
    for m, c in series.layers[n].items():
        lam = tuple(sorted((i for i, e in exponents(m) for _ in range(e)), reverse=True))
        out[lam] = c
    return out


def test_pointed_low_layers():
    sol = succulent(6)
    sp = sol.s_pointed
    assert CycleIndexSeries.from_polynomial(sp.layer(1), exact=True) == \
        CycleIndexSeries.from_polynomial(power_sum(1, 1), exact=True)
    assert not sp.layers[0] and not sp.layers[2]
    assert cis.labeled_counts(sp)[4] == 36


def test_small_rows():
    t = succulents.succulent_counts(6)
    assert t.rows == ((0, 0), (1, 1), (0, 0), (1, 1), (9, 2), (157, 5), (3795, 15))
    for N in range(0, 4):
        assert succulents.succulent_counts(N).rows == t.rows[: N + 1]


def test_row_13(succ19):
    assert succ19.counts.labeled[13] == 3515975765492235
    # the reference table lists 1012974 unlabeled; see test_unlabeled_rows_from_7
    assert succ19.counts.unlabeled[13] == 994132


def test_labeled_column_matches_reference(succ19):
    assert succ19.counts.labeled == SUCCULENTS.labeled
    assert succ19.counts.labeled[19] == 3504426532914198495232154142


def test_unlabeled_rows_from_7(succ19):
    # explicit generation of succulents (blocks glued at cut vertices, isomorphism
    # classes by canonical form) gives 52 on 7 vertices; the reference table says 53
    assert succ19.counts.unlabeled[:7] == SUCCULENTS.unlabeled[:7]
    assert succ19.counts.unlabeled[7:11] == [52, 222, 1038, 5390]


def test_pointing_identity(succ19):
    pointed = cis.labeled_counts(succ19.s_pointed)
    plain = cis.labeled_counts(succ19.s)
    assert all(pointed[n] == n * plain[n] for n in range(20))


def test_pointing_is_the_derivative_times_x(succ19):
    x = cis.builtin("X", truncation=19)
    assert succ19.s_pointed == cis.mul(x, cis.derivative(succ19.s), truncation=19)


def test_pointed_equation_holds(succ19):
    sp = succ19.s_pointed
    rhs = cis.mul(cis.builtin("X", truncation=19), cis.exp_compose(cis.plethysm(succ19.ap_prime, sp)),
                  truncation=19)
    assert rhs == sp


@pytest.mark.parametrize("n", range(1, 7))
def test_full_cycle_index_matches_graphs(n):
    got = as_parts(succulent(6).s, n)
    assert got == oracle.graph_cycle_index("succulent", n)


def test_cyclic_polygon_action_gives_wrong_index():
    geo, cyc = succulent(9), succulent(9, "cyclic")
    assert geo.counts.labeled == cyc.counts.labeled
    assert geo.counts.unlabeled[:7] == cyc.counts.unlabeled[:7]
    assert (geo.counts.unlabeled[7], cyc.counts.unlabeled[7]) == (52, 53)
    assert as_parts(cyc.s, 5) != oracle.graph_cycle_index("succulent", 5)


def test_blocks_must_start_at_three_vertices():
    ap = polygonal(6).a_unoriented + cis.builtin("L_n", 2, truncation=6)
    with pytest.raises(ValueError):
        succulents.solve_pointed(ap, 6)
    with pytest.raises(ValueError):
        succulents.solve_pointed(polygonal(5).a_unoriented, 6)


def test_assembly_is_checked():
    ap = polygonal(6).a_unoriented
    # half a fixed point on p2 alone is not the cycle index of any species
    bad = succulents.solve_pointed(ap, 6) + CycleIndexSeries.from_polynomial(power_sum(2, 6) / 2)
    with pytest.raises(cis.IntegrityError):
        succulents.assemble(ap, bad)
