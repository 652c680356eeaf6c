import pytest

from ptflip.generate import generate
from ptflip.oracle import (GENERAL, POINTED, OracleCapExceeded, all_nodes_property, catalan,
                           decode, encode, enumerate_all, enumerate_by_subsets, enumerate_pointed,
                           expected_labelled_count, flip_distance, labelled_flip_graph)
from ptflip.triangulation import canonical_labelling


def test_catalan():
    assert [catalan(k) for k in range(7)] == [1, 1, 2, 5, 14, 42, 132]


@pytest.mark.parametrize("n", range(4, 9))
def test_convex_counts_are_catalan(n):
    ps = generate(n, 0, "convex")
    assert len(enumerate_pointed(ps, cap=8)) == catalan(n - 2)
    assert len(enumerate_all(ps, cap=8)) == catalan(n - 2)


def test_set_a_counts(set_a):
    pointed = enumerate_pointed(set_a)
    assert len(pointed) == 8
    assert sorted(t.key() for t in pointed) == enumerate_by_subsets(set_a, pointed_only=True)
    everything = enumerate_all(set_a)
    assert len(everything) == 11
    assert sorted(t.key() for t in everything) == enumerate_by_subsets(set_a)


@pytest.mark.parametrize("seed", range(4))
def test_closure_matches_subsets_n6(seed):
    ps = generate(6, seed)
    assert sorted(t.key() for t in enumerate_all(ps)) == enumerate_by_subsets(ps)


def test_caps(monkeypatch):
    ps = generate(9, 0)
    with pytest.raises(OracleCapExceeded) as info:
        enumerate_pointed(ps)
    assert info.value.estimate > 0
    monkeypatch.setenv("PTFLIP_ORACLE_CAP", "9")
    assert len(enumerate_pointed(generate(9, 0, "convex"))) == catalan(7)
    with pytest.raises(OracleCapExceeded):
        enumerate_by_subsets(generate(7, 0))
    with pytest.raises(OracleCapExceeded):
        labelled_flip_graph(generate(6, 0), max_states=10)


def test_encode_round_trip(set_a):
    t = canonical_labelling(set_a)
    assert decode(set_a, encode(t)).same_state(t)


def test_labelled_pointed_graph_set_a(set_a):
    g = labelled_flip_graph(set_a, POINTED)
    assert len(g) == expected_labelled_count(set_a, POINTED) == 8 * 6
    assert g.is_connected() and g.is_symmetric()
    st = g.stats()
    assert st["diameter"] == 7 and st["unreachable_pairs"] == 0


def test_labelled_general_graph_set_a(set_a):
    g = labelled_flip_graph(set_a, GENERAL)
    assert len(g) == expected_labelled_count(set_a, GENERAL) == 264
    assert g.is_connected() and g.is_symmetric()


def test_flip_distance(set_a):
    g = labelled_flip_graph(set_a, POINTED)
    t = canonical_labelling(set_a)
    assert flip_distance(g, t, t) == 0
    s = t.copy()
    s.remove_edge((0, 4)); s.labels.pop((0, 4))
    s.add_edge((1, 4)); s.labels[(1, 4)] = 2
    assert flip_distance(g, t, s) == 1 == flip_distance(g, g.node_of(s), 0)


def test_all_nodes_property(set_a):
    tally = all_nodes_property(enumerate_all(set_a), lambda t: t.is_pointed())
    assert tally == {True: 8, False: 3}


def test_bad_mode(set_a):
    with pytest.raises(ValueError):
        labelled_flip_graph(set_a, "mixed")
