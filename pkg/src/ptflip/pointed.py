"""Label reordering in pointed pseudo-triangulations using exchanging flips
only: degree-two rotations, sweeps, consecutive bottom swaps, shuffles,
canonical sorting and the pairwise transformation built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .flips import FlipTrace, exchanging_flip
from .geometry import edge
from .polygon import (FlipTopFirst, bitangents, face_merge,
                      five_bitangent_certificates)
from .triangulation import (Edge, LabelError, PseudoTriangulation, canonical_assignment,
                            internal_bottom_ranks, internal_top_ranks,
                            left_shelling_edges, right_shelling_edges)

# Frozen flip-count constants (see tests/test_acceptance.py).
ROTATE_FLIPS = 3
PENTAGON_FLIPS = 5
C_SWAP = PENTAGON_FLIPS + 2
C_SWEEP = 5


class PipelineError(RuntimeError):
    pass


# -- helpers -----------------------------------------------------------------

def is_left_shelling(t: PseudoTriangulation) -> bool:
    return t.edges == left_shelling_edges(t.points)[0]


def bottom_edge(t: PseudoTriangulation, rank: int) -> Edge:
    o = t.points.order
    return edge(o[0], o[rank])


def other_edge(t: PseudoTriangulation, v: int, e: Edge) -> Edge:
    """The edge at degree-two vertex ``v`` other than ``e``."""
    (w,) = [w for w in t.neighbors(v) if edge(v, w) != e]
    return edge(v, w)


def top_edge(t: PseudoTriangulation, rank: int) -> Edge:
    """Current edge of degree-two vertex ``v_rank`` other than its bottom edge."""
    v = t.points.order[rank]
    if t.degree(v) != 2:
        raise PipelineError(f"v_{rank} has degree {t.degree(v)}, expected 2")
    return other_edge(t, v, bottom_edge(t, rank))


def shelling_top(t: PseudoTriangulation, rank: int) -> Edge:
    """Top edge of ``v_rank`` in the left-shelling."""
    return left_shelling_edges(t.points)[1].top[rank]


def bottom_labels(t: PseudoTriangulation) -> dict[int, int]:
    """Rank -> label of every internal bottom edge."""
    return {r: t.labels[bottom_edge(t, r)] for r in internal_bottom_ranks(t.points)}


def _flip(t, trace, e):
    return trace.append(exchanging_flip(t, e))


# -- three flips at a degree-two vertex --------------------------------------

def rotate_degree2(t: PseudoTriangulation, v: int, first: Edge | None = None) -> FlipTrace:
    """Interchange the labels of the two edges at internal degree-two vertex
    ``v`` with three exchanging flips.  ``first`` selects which edge is
    flipped first (the direction of rotation)."""
    if t.points.on_hull(v):
        raise PipelineError(f"vertex {v} is on the convex hull")
    if t.degree(v) != 2:
        raise PipelineError(f"vertex {v} has degree {t.degree(v)}")
    trace = FlipTrace.begin(t)
    e, g = (edge(v, w) for w in t.neighbors(v))
    if first is not None:
        first = edge(*first)
        if first not in (e, g):
            raise PipelineError(f"{first} is not incident to {v}")
        if first == g:
            e, g = g, e
    f = _flip(t, trace, e).inserted     # e -> f
    _flip(t, trace, g)                  # g -> e
    _flip(t, trace, f)                  # f -> g
    return trace


# -- sweep -------------------------------------------------------------------

Hook = Callable[[PseudoTriangulation, int, FlipTrace], None]


@dataclass
class SweepPlan:
    """Which internal vertices get their top and bottom labels swapped, and an
    optional hook run at every internal vertex's degree-two moment of the
    forward pass (after the swap, before the top edge moves)."""
    swap: frozenset[int] = frozenset()
    hook: Hook | None = None
    return_hook: Hook | None = None
    degree_two_moments: list[int] = field(default_factory=list)


def sweep(t: PseudoTriangulation, plan: SweepPlan | None = None) -> FlipTrace:
    """Turn the left-shelling into the right-shelling and back, passing each
    internal vertex while it has degree two."""
    plan = plan or SweepPlan()
    pts = t.points
    if not is_left_shelling(t):
        raise PipelineError("sweep needs the left-shelling pseudo-triangulation")
    internal = set(pts.internal_vertices())
    if not set(plan.swap) <= internal:
        raise PipelineError("only internal vertices have internal top edges")
    trace = FlipTrace.begin(t)
    order = pts.order
    for r in range(pts.n - 1, 0, -1):
        v = order[r]
        if v not in internal:
            continue
        if t.degree(v) != 2:
            raise PipelineError(f"v_{r} has degree {t.degree(v)} when the sweep reaches it")
        plan.degree_two_moments.append(v)
        if v in plan.swap:
            trace.extend(rotate_degree2(t, v))
        if plan.hook is not None:
            plan.hook(t, v, trace)
        f = _flip(t, trace, top_edge(t, r)).inserted
        w = f[0] if f[1] == v else f[1]
        if pts.rank[w] <= r:
            raise PipelineError(f"top edge of v_{r} did not swing to the right")
    if t.edges != right_shelling_edges(pts)[0]:
        raise PipelineError("forward sweep did not reach the right-shelling")
    trace.note(op="sweep-turn")
    for r in range(1, pts.n):
        v = order[r]
        if v not in internal:
            continue
        if plan.return_hook is not None:
            plan.return_hook(t, v, trace)
        _flip(t, trace, top_edge(t, r))
    if not is_left_shelling(t):
        raise PipelineError("return sweep did not reach the left-shelling")
    return trace


# -- consecutive bottom swap and shuffle -------------------------------------

def swap_consecutive_bottom(t: PseudoTriangulation, rank: int) -> FlipTrace:
    """Interchange the labels of the bottom edges of ``v_rank`` and
    ``v_{rank+1}`` in the left-shelling, rotating through a pseudo-pentagon
    with five bitangents."""
    if not is_left_shelling(t):
        raise PipelineError("bottom swaps need the left-shelling")
    cert = five_bitangent_certificates(t, rank)
    trace = FlipTrace.begin(t)
    a, b = bottom_edge(t, rank), bottom_edge(t, rank + 1)
    la, lb = t.labels[a], t.labels[b]
    undo = None
    if isinstance(cert, FlipTopFirst):
        undo = _flip(t, trace, cert.top_edge).inserted
    count = len(bitangents(face_merge(t, a, b)))
    trace.note(op="pentagon", rank=rank, kind=type(cert).__name__, bitangents=count)
    if count != 5:
        raise PipelineError(f"pseudo-pentagon at rank {rank} has {count} bitangents")
    cur = [a, b]
    for i in range(PENTAGON_FLIPS):
        cur[i % 2] = _flip(t, trace, cur[i % 2]).inserted
    if undo is not None:
        _flip(t, trace, undo)
    if not is_left_shelling(t) or t.labels[a] != lb or t.labels[b] != la:
        raise PipelineError("pentagon rotation did not swap the bottom labels")
    return trace


def shuffle(t: PseudoTriangulation, target: dict[int, int],
            swap: Callable[[PseudoTriangulation, int], FlipTrace] = swap_consecutive_bottom
            ) -> FlipTrace:
    """Permute the bottom labels of the left-shelling into ``target``
    (rank -> label) by adjacent transpositions (bubble sort)."""
    cur = bottom_labels(t)
    if set(target) != set(cur) or sorted(target.values()) != sorted(cur.values()):
        raise PipelineError("target must permute the labels of the internal bottom edges")
    trace = FlipTrace.begin(t)
    ranks = sorted(cur)
    pos = {lab: i for i, lab in enumerate(target[r] for r in ranks)}
    seq = [pos[cur[r]] for r in ranks]
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                trace.extend(swap(t, ranks[i]))
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True
    return trace


# -- canonical sorting -------------------------------------------------------

def sort_left_shelling(t: PseudoTriangulation,
                       shuffle_fn: Callable[[PseudoTriangulation, dict[int, int]], FlipTrace] = shuffle,
                       label_set: Iterable[int] | None = None) -> FlipTrace:
    """Reach the canonical labelling of the left-shelling with three shuffles
    and three sweeps.  The canonical labels are ``label_set`` (default: the
    labels currently present)."""
    pts = t.points
    if not is_left_shelling(t):
        raise PipelineError("sorting needs the left-shelling")
    labs = set(t.labels.values()) if label_set is None else set(label_set)
    if labs != set(t.labels.values()) or not t.is_fully_labelled():
        raise LabelError("current labels are not the canonical label set")
    canon = canonical_assignment(pts, labs)
    order = pts.order
    branks = internal_bottom_ranks(pts)
    tranks = internal_top_ranks(pts)
    low = {canon[bottom_edge(t, r)] for r in branks}
    trace = FlipTrace.begin(t)

    # 1. line up high bottom labels with low top labels, then sweep them over
    cur = bottom_labels(t)
    low_tops = [r for r in tranks if t.labels[shelling_top(t, r)] in low]
    highs = sorted(lab for lab in cur.values() if lab not in low)
    lows = sorted(lab for lab in cur.values() if lab in low)
    target = {}
    for r, lab in zip(low_tops, highs):
        target[r] = lab
    rest = [r for r in branks if r not in target]
    target.update(zip(rest, lows))
    trace.extend(shuffle_fn(t, target))
    trace.note(phase="shuffle-1")
    trace.extend(sweep(t, SweepPlan(swap=frozenset(order[r] for r in low_tops))))
    trace.note(phase="sweep-1")

    # 2. sort the low labels on the bottom edges
    trace.extend(shuffle_fn(t, {r: canon[bottom_edge(t, r)] for r in branks}))
    trace.note(phase="shuffle-2")

    # 3. sweep the highs down, sort them there, sweep them back
    inner = frozenset(order[r] for r in tranks)
    trace.extend(sweep(t, SweepPlan(swap=inner)))
    trace.note(phase="sweep-2")
    target = bottom_labels(t)
    for r in tranks:
        target[r] = canon[shelling_top(t, r)]
    trace.extend(shuffle_fn(t, target))
    trace.note(phase="shuffle-3")
    trace.extend(sweep(t, SweepPlan(swap=inner)))
    trace.note(phase="sweep-3")
    if t.labels != canon:
        raise PipelineError("sorting did not reach the canonical labelling")
    return trace


# -- reaching the left-shelling ----------------------------------------------

def to_left_shelling(t: PseudoTriangulation) -> FlipTrace:
    """Flip any pointed pseudo-triangulation into the left-shelling.

    Vertices are peeled in reverse shelling order.  ``v_k`` is a hull vertex
    of the prefix ``v_0..v_k`` and every flip of one of its prefix-internal
    edges lowers its degree, because the interior angles at a hull vertex sum
    to less than pi.  Once ``v_k`` keeps only its two prefix hull edges, those
    are exactly its bottom and top edge and the prefix is a pointed
    pseudo-triangulation again.  O(n^2) flips.
    """
    pts = t.points
    if not t.is_pointed():
        raise PipelineError("to_left_shelling needs a pointed pseudo-triangulation")
    trace = FlipTrace.begin(t)
    order = pts.order
    _, sh = left_shelling_edges(pts)
    for k in range(pts.n - 1, 1, -1):
        v = order[k]
        keep = {sh.bottom[k], sh.top[k]}
        while True:
            inner = [edge(v, w) for w in t.neighbors(v)
                     if pts.rank[w] < k and edge(v, w) not in keep]
            if not inner:
                break
            before = t.degree(v)
            f = _flip(t, trace, inner[0]).inserted
            if v in f or t.degree(v) != before - 1:
                raise PipelineError(f"flip at prefix hull vertex v_{k} did not lower its degree")
        if not keep <= t.edges:
            raise PipelineError(f"v_{k} lost a shelling edge")
    if not is_left_shelling(t):
        raise PipelineError("peeling did not produce the left-shelling")
    return trace


def to_canonical_pointed(t: PseudoTriangulation) -> FlipTrace:
    trace = to_left_shelling(t)
    trace.note(phase="left-shelling")
    trace.extend(sort_left_shelling(t))
    return trace


def transform_pointed(t1: PseudoTriangulation, t2: PseudoTriangulation) -> FlipTrace:
    """Exchanging-flip sequence from ``t1`` to ``t2`` (same points and labels)."""
    if t1.points != t2.points:
        raise PipelineError("different point sets")
    if t1.label_set() != t2.label_set():
        raise LabelError("label sets differ")
    if not (t1.is_pointed() and t2.is_pointed()):
        raise PipelineError("both pseudo-triangulations must be pointed")
    a = t1.copy()
    trace = to_canonical_pointed(a)
    b = t2.copy()
    back = to_canonical_pointed(b)
    if not a.same_state(b):
        raise PipelineError("canonical forms differ")
    out = FlipTrace(t1.copy(), list(trace.events), list(trace.notes))
    out.note(phase="to-canonical")
    out.extend(back.inverse())
    out.note(phase="from-canonical")
    # certificates of the target half, for diagnostics only
    out.notes.extend({**nt, "side": "target"} for nt in back.notes if "op" in nt)
    return out


def exchange_distance_bound(n: int) -> int:
    """Upper bound C_TOTAL * n^2 on the length of transform_pointed."""
    return C_TOTAL * n * n


C_TOTAL = 16
