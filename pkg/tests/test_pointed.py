import random

import pytest

from ptflip.flips import EXCHANGE, exchanging_flip, replay
from ptflip.generate import generate, random_pointed
from ptflip.geometry import PointSet
from ptflip.oracle import enumerate_pointed
from ptflip.pointed import (C_SWAP, C_TOTAL, PipelineError, SweepPlan, bottom_edge, bottom_labels,
                            exchange_distance_bound, is_left_shelling, rotate_degree2,
                            shelling_top, shuffle, sort_left_shelling, swap_consecutive_bottom,
                            sweep, to_left_shelling, transform_pointed)
from ptflip.triangulation import (LabelError, build_left_shelling, canonical_labelling,
                                  internal_bottom_ranks, internal_top_ranks)

from conftest import FOUR_BITANGENT, pointed_pairs


def labelled_left_shelling(ps, seed):
    t = canonical_labelling(ps)
    labs = sorted(t.labels.values())
    random.Random(seed).shuffle(labs)
    t.labels = dict(zip(sorted(t.labels), labs))
    return t


def test_rotate_set_a(set_a):
    t = canonical_labelling(set_a)
    before = dict(t.labels)
    tr = rotate_degree2(t, 4)
    assert len(tr) == 3 and set(tr.counts()) == {EXCHANGE}
    assert t.edges == tr.initial.edges
    assert t.labels[(0, 4)] == before[(2, 4)] and t.labels[(2, 4)] == before[(0, 4)]
    assert replay(tr)[0].same_state(t)


def test_rotate_either_direction(set_a):
    for first in ((0, 4), (2, 4)):
        t = canonical_labelling(set_a)
        tr = rotate_degree2(t, 4, first=first)
        assert tr.events[0].removed == first and len(tr) == 3


def test_rotate_rejects(set_a, minimal_non_pointed):
    t = canonical_labelling(set_a)
    with pytest.raises(PipelineError):
        rotate_degree2(t, 1)
    with pytest.raises(PipelineError):
        rotate_degree2(t, 4, first=(0, 2))
    with pytest.raises(PipelineError):
        rotate_degree2(minimal_non_pointed, 3)


def test_rotate_every_degree_two_vertex():
    for seed in range(6):
        ps = generate(7, seed)
        for t in enumerate_pointed(ps)[:30]:
            for v in ps.internal_vertices():
                if t.degree(v) != 2:
                    continue
                s = t.copy()
                s.labels = {e: i + 1 for i, e in enumerate(s.internal_edges())}
                a, b = (tuple(sorted((v, w))) for w in s.neighbors(v))
                la, lb = s.labels[a], s.labels[b]
                rotate_degree2(s, v)
                assert s.edges == t.edges and (s.labels[a], s.labels[b]) == (lb, la)


@pytest.mark.parametrize("seed", range(5))
def test_sweep_identity_and_swaps(seed):
    ps = generate(10, seed)
    internal = ps.internal_vertices()
    t = labelled_left_shelling(ps, seed)
    start = t.copy()
    plan = SweepPlan()
    tr = sweep(t, plan)
    assert t.same_state(start)
    assert len(tr) == 2 * len(internal)
    assert sorted(plan.degree_two_moments) == sorted(internal)
    swap = frozenset(internal)
    tr = sweep(t, SweepPlan(swap=swap))
    assert len(tr) == 5 * len(internal) <= 5 * ps.n
    for r in internal_top_ranks(ps):
        assert t.labels[bottom_edge(t, r)] == start.labels[shelling_top(start, r)]
        assert t.labels[shelling_top(t, r)] == start.labels[bottom_edge(start, r)]


def test_sweep_hook_sees_degree_two():
    ps = generate(9, 11)
    t = canonical_labelling(ps)
    seen = []

    def hook(s, v, trace):
        seen.append((v, s.degree(v)))

    sweep(t, SweepPlan(hook=hook))
    assert seen and all(d == 2 for _, d in seen)


def test_sweep_needs_left_shelling(set_a):
    t = canonical_labelling(set_a)
    exchanging_flip(t, (0, 4))
    with pytest.raises(PipelineError):
        sweep(t)


@pytest.mark.parametrize("seed", range(6))
def test_pentagon_swaps(seed):
    ps = generate(9, 40 + seed)
    t = labelled_left_shelling(ps, seed)
    for r in internal_bottom_ranks(ps)[:-1]:
        before = bottom_labels(t)
        tr = swap_consecutive_bottom(t, r)
        after = bottom_labels(t)
        assert (after[r], after[r + 1]) == (before[r + 1], before[r])
        assert len(tr) in (5, 7) and set(tr.counts()) == {EXCHANGE}
        assert [nt["bitangents"] for nt in tr.notes if nt.get("op") == "pentagon"] == [5]


def test_pentagon_with_top_flip():
    ps = PointSet(FOUR_BITANGENT)
    t = canonical_labelling(ps)
    tr = swap_consecutive_bottom(t, 2)
    (nt,) = [nt for nt in tr.notes if nt.get("op") == "pentagon"]
    assert nt["kind"] == "FlipTopFirst" and nt["bitangents"] == 5
    assert len(tr) == 7


def test_shuffle_reaches_target():
    ps = generate(10, 5)
    t = labelled_left_shelling(ps, 5)
    cur = bottom_labels(t)
    ranks = sorted(cur)
    target = dict(zip(ranks, sorted(cur.values(), reverse=True)))
    shuffle(t, target)
    assert bottom_labels(t) == target
    with pytest.raises(PipelineError):
        shuffle(t, {ranks[0]: 999})


@pytest.mark.parametrize("seed", range(4))
def test_sort_left_shelling(seed):
    ps = generate(10, 70 + seed)
    t = labelled_left_shelling(ps, seed)
    tr = sort_left_shelling(t)
    assert t.same_state(canonical_labelling(ps))
    assert [nt["phase"] for nt in tr.notes if "phase" in nt] == [
        "shuffle-1", "sweep-1", "shuffle-2", "sweep-2", "shuffle-3", "sweep-3"]


def test_sort_rejects_foreign_labels(set_a):
    t = canonical_labelling(set_a)
    with pytest.raises(LabelError):
        sort_left_shelling(t, label_set=[1, 2, 4])


def test_to_left_shelling_all_pointed_n7():
    ps = generate(7, 2)
    target, _ = build_left_shelling(ps)
    for t in enumerate_pointed(ps):
        s = t.copy()
        tr = to_left_shelling(s)
        assert s.edges == target.edges and is_left_shelling(s)
        assert set(tr.counts()) <= {EXCHANGE}
        assert len(tr) <= ps.n * ps.n


def test_transform_pointed_pairs():
    for a, b in pointed_pairs(12, 4, 11, seed=3):
        tr = transform_pointed(a, b)
        final, counts = replay(tr, validate=True)
        assert final.same_state(b)
        assert set(counts) <= {EXCHANGE}
        assert len(tr) <= exchange_distance_bound(a.points.n) == C_TOTAL * a.points.n ** 2


def test_transform_pointed_same_input():
    ps = generate(8, 1)
    t = random_pointed(ps, random.Random(0))
    tr = transform_pointed(t, t)
    assert replay(tr)[0].same_state(t)


def test_transform_pointed_rejects(set_a, minimal_non_pointed):
    t = canonical_labelling(set_a)
    s = t.copy()
    s.labels[(0, 2)], s.free = 4, {1}
    with pytest.raises(LabelError):
        transform_pointed(t, s)
    with pytest.raises(PipelineError):
        transform_pointed(t, canonical_labelling(generate(5, 1)))
    with pytest.raises(PipelineError):
        transform_pointed(minimal_non_pointed, minimal_non_pointed)


def test_reverse_permutation_convex_fan():
    ps = generate(6, 0, "convex")
    t = canonical_labelling(ps)
    cur = bottom_labels(t)
    ranks = sorted(cur)
    assert len(ranks) == 3
    target = dict(zip(ranks, [cur[r] for r in reversed(ranks)]))
    tr = shuffle(t, target)
    assert bottom_labels(t) == target
    assert len(tr) <= C_SWAP * 3
