import itertools
import random

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from polyspecies import oracle, ptrees, succulents
from polyspecies.oracle import LabeledGraph, canonical_form


def triangle():
    return LabeledGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])


def random_graph(rng, n, p=0.4):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return LabeledGraph.from_pairs(n, pairs)


# --- graphs and canonical forms ------------------------------------------------

def test_graph_validation_and_masks():
    with pytest.raises(ValueError):
        LabeledGraph.from_pairs(3, [(1, 1)])
    with pytest.raises(ValueError):
        LabeledGraph.from_pairs(3, [(1, 4)])
    g = LabeledGraph.from_pairs(5, [(2, 1), (4, 5), (1, 5)])
    assert LabeledGraph.from_mask(5, g.to_mask()) == g


def test_triangle_labelings_share_a_key():
    keys = {canonical_form(triangle().relabel(p)) for p in itertools.permutations([1, 2, 3])}
    assert len(keys) == 1


def test_path_and_triangle_differ():
    path = LabeledGraph.from_pairs(3, [(1, 2), (2, 3)])
    assert canonical_form(path) != canonical_form(triangle())


def test_two_shapes_on_four_vertices():
    graphs = list(oracle.enumerate_family("polygonal", 4))
    assert len(graphs) == 9
    assert len({canonical_form(g) for g in graphs}) == 2


@settings(max_examples=150)
@given(st.integers(0, 2 ** 32), st.integers(1, 9))
def test_canonical_form_is_invariant(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


def test_canonical_form_separates_regular_graphs():
    # colour refinement alone cannot tell these apart: both 2-regular on 6 vertices
    hexagon = LabeledGraph.from_pairs(6, [(i, i % 6 + 1) for i in range(1, 7)])
    two_triangles = LabeledGraph.from_pairs(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert canonical_form(hexagon) != canonical_form(two_triangles)
    # nor these 3-regular ones: the prism and K_{3,3}
    prism = LabeledGraph.from_pairs(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)])
    k33 = LabeledGraph.from_pairs(6, [(i, j) for i in (1, 2, 3) for j in (4, 5, 6)])
    assert canonical_form(prism) != canonical_form(k33)


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_classes_of_all_graphs(n):
    # number of unlabeled graphs on n vertices
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}[n]
    assert len({canonical_form(g) for g in oracle.all_graphs(n)}) == expected


# --- enumeration ------------------------------------------------------------

def test_enumeration_examples():
    assert len(oracle.enumerate_family("polygonal", 3)) == 1
    assert triangle() in oracle.enumerate_family("polygonal", 3)
    assert len(oracle.enumerate_family("polygonal", 4)) == 9
    assert len(oracle.enumerate_family("succulent", 5)) == 157


@pytest.mark.parametrize("n", range(1, 7))
def test_recognizers_agree_with_generation(n):
    poly = oracle.enumerate_family("polygonal", n)
    succ = oracle.enumerate_family("succulent", n)
    for g in oracle.all_graphs(n):
        assert oracle.is_polygonal_2tree(g) == (g in poly)
        assert oracle.is_succulent(g) == (g in succ)


def test_recognizer_edge_cases():
    k4 = LabeledGraph.from_pairs(4, list(itertools.combinations(range(1, 5), 2)))
    assert not oracle.is_polygonal_2tree(k4) and not oracle.is_succulent(k4)
    edge = LabeledGraph.from_pairs(2, [(1, 2)])
    assert not oracle.is_polygonal_2tree(edge) and not oracle.is_succulent(edge)
    bowtie = LabeledGraph.from_pairs(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    assert oracle.is_succulent(bowtie) and not oracle.is_polygonal_2tree(bowtie)
    assert oracle.is_succulent(LabeledGraph(1))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_kgonal_is_a_subfamily(k):
    poly = oracle.enumerate_family("polygonal", 8)
    sub = oracle.enumerate_family("kgonal", 8, k)
    assert len(sub) > 0
    assert np.isin(sub.masks, poly.masks).all()


def test_oracle_matches_polygonal_pipeline():
    assert oracle.oracle_counts("polygonal", 8)[3:] == list(ptrees.polygonal_counts(8).rows[3:])


@pytest.mark.parametrize("k", [3, 4, 5])
def test_oracle_matches_kgonal_pipeline(k):
    assert oracle.oracle_counts("kgonal", 8, k)[3:] == list(ptrees.kgonal_counts(k, 8).rows[3:])


def test_oracle_matches_succulent_pipeline():
    assert oracle.oracle_counts("succulent", 7)[1:] == list(succulents.succulent_counts(7).rows[1:])


def test_graph_cycle_index_layer_four():
    ci = oracle.graph_cycle_index("polygonal", 4)
    # 9 labeled graphs; the 4-cycle and the diamond have 8 and 4 automorphisms
    assert ci[(1, 1, 1, 1)] * 24 == 9
    assert sum(ci.values()) == 2


def test_limits_are_enforced():
    with pytest.raises(ValueError):
        oracle.enumerate_family("polygonal", oracle.FAMILY_LIMITS["polygonal"] + 1)
    with pytest.raises(ValueError):
        oracle.enumerate_family("kgonal", 5)
    with pytest.raises(ValueError):
        oracle.enumerate_family("cacti", 5)
    # unlabeled classes may go further than labeled sets
    assert len(oracle.unlabeled_classes("polygonal", 9, limit=9)) == 638


# --- built-ins with order reversal ----------------------------------------------

@pytest.mark.parametrize("kind", ["L", "C"])
@pytest.mark.parametrize("n", range(1, 11))
def test_s2_builtins_match_fixed_points(kind, n):
    report = oracle.verify_s2_builtin(kind, n)
    assert report.ok, str(report)


@pytest.mark.parametrize("kind", ["L", "C", "E"])
@pytest.mark.parametrize("n", range(1, 7))
def test_class_representatives_equal_full_group_sum(kind, n):
    assert oracle.fixed_point_cycle_index(kind, n) == oracle.fixed_point_cycle_index(kind, n, exhaustive=True)


def test_s2_examples():
    ci = oracle.fixed_point_cycle_index("L", 2, exhaustive=True)
    assert ci["tau"] == {(2,): 1}
    assert oracle.fixed_point_cycle_index("C", 3)["tau"] == {(2, 1): 1}
    c4 = oracle.fixed_point_cycle_index("C", 4)["e"]
    assert c4 == {(1, 1, 1, 1): mpq(1, 4), (2, 2): mpq(1, 4), (4,): mpq(1, 2)}


def test_report_describes_mismatch():
    report = oracle.S2BuiltinReport("L", 2, False, {}, [("tau", (2,), 1, 0)])
    assert "mismatch" in str(report) and "tau" in str(report)
