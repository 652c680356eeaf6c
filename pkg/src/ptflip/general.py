"""Transformations between arbitrary (not necessarily pointed) labelled
pseudo-triangulations: free-label swaps, degree reduction, fans and their
indices, the four-stage bottom-label shuffle and the end-to-end pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

from .flips import (FlipTrace, deletion_flip, exchange_target, exchanging_flip,
                    insertion_flip, is_deletable, is_insertable, NotExchangeable)
from .geometry import PointSet, edge, orient
from .polygon import PseudoPolygon, geodesic
from .pointed import (PipelineError, SweepPlan, bottom_edge, bottom_labels,
                      is_left_shelling, sort_left_shelling, swap_consecutive_bottom,
                      sweep, to_left_shelling)
from .triangulation import (Edge, LabelError, PseudoTriangulation, canonical_assignment,
                            internal_bottom_ranks)

FREE_SWAP_EVENTS = 3
SWAP_TWO_EVENTS = 3 * FREE_SWAP_EVENTS
SHIFT_EVENTS = 2
SWITCH_EVENTS = 3
INDEXED_FREE_EVENTS = 1 + FREE_SWAP_EVENTS + 1
INDEXED_SWAP_EVENTS = 3 * INDEXED_FREE_EVENTS


def _flip(t, trace, e):
    return trace.append(exchanging_flip(t, e))


# -- free-label swaps at degree-two vertices ---------------------------------

def _require_degree2(t: PseudoTriangulation, e: Edge) -> int:
    e = edge(*e)
    if e not in t.edges:
        raise PipelineError(f"{e} is not an edge")
    for v in e:
        if not t.points.on_hull(v) and t.degree(v) == 2:
            return v
    raise PipelineError(f"{e} is not incident to an internal vertex of degree two")


def _free_swap_plan(t: PseudoTriangulation, v: int, e: Edge):
    """Find the edge f at ``v`` whose insertion, followed by deleting ``e``
    and flipping f, returns to the same geometry."""
    face = t.reflex_face(v)
    if face is None:
        raise PipelineError(f"vertex {v} has its reflex angle in the outer face")
    nb = set(t.neighbors(v))
    for w in sorted(set(face) - nb - {v}):
        f = edge(v, w)
        if not is_insertable(t, f):
            continue
        s = t.copy()
        s.add_edge(f)
        if not is_deletable(s, e):
            continue
        s.remove_edge(e)
        try:
            if exchange_target(s, f) == e:
                return f
        except NotExchangeable:
            continue
    raise PipelineError(f"no third bitangent found at vertex {v}")


def free_label_swap_degree2(t: PseudoTriangulation, e: Edge, free: int) -> FlipTrace:
    """Replace the label of ``e`` (incident to an internal degree-two vertex)
    by the free label ``free``; the old label returns to the pool.

    Insert the third edge f at v with ``free``, delete ``e``, flip f into
    the place of ``e``.
    """
    e = edge(*e)
    v = _require_degree2(t, e)
    if free not in t.free:
        raise LabelError(f"label {free} is not free")
    f = _free_swap_plan(t, v, e)
    trace = FlipTrace.begin(t)
    trace.append(insertion_flip(t, f, free))
    trace.note(op="free-swap", vertex=v, non_pointed=t.non_pointed_vertices())
    trace.append(deletion_flip(t, e))
    _flip(t, trace, f)
    return trace


def swap_two_degree2(t: PseudoTriangulation, e1: Edge, e2: Edge,
                     placeholder: int | None = None) -> FlipTrace:
    """Interchange the labels of two edges at internal degree-two vertices
    through a free placeholder label."""
    e1, e2 = edge(*e1), edge(*e2)
    trace = FlipTrace.begin(t)
    if e1 == e2:
        return trace
    _require_degree2(t, e1)
    _require_degree2(t, e2)
    if not t.free:
        raise LabelError("no free label to use as a placeholder")
    x = min(t.free) if placeholder is None else placeholder
    l1, l2 = t.labels[e1], t.labels[e2]
    trace.extend(free_label_swap_degree2(t, e1, x))
    trace.extend(free_label_swap_degree2(t, e2, l1))
    trace.extend(free_label_swap_degree2(t, e1, l2))
    return trace


# -- degree reduction --------------------------------------------------------

def _reflex_edges(t: PseudoTriangulation, v: int) -> tuple[list[int], Edge, Edge]:
    face = t.reflex_face(v)
    if face is None:
        raise PipelineError(f"vertex {v} has its reflex angle in the outer face")
    return face, edge(v, face[1]), edge(v, face[-1])


def _opposite_corner(t: PseudoTriangulation, face: list[int]) -> int:
    """Corner of the pseudo-triangle ``face`` not bounding the chain through
    position 0."""
    corners = t.corner_positions(face)
    k = len(face)
    for i, c in enumerate(corners):
        a, b = c, corners[(i + 1) % 3]
        # chain from corner a to corner b (exclusive) contains position 0?
        span = (b - a) % k
        if (0 - a) % k < span and 0 != a:
            return face[corners[(i + 2) % 3]]
    raise PipelineError("vertex is a corner of its reflex face")


def degree_reducing_edges(t: PseudoTriangulation, v: int) -> list[Edge]:
    """Reflex-angle edges of ``v`` whose exchanging flip lowers its degree."""
    _, a, b = _reflex_edges(t, v)
    out = []
    for e in (a, b):
        try:
            f = exchange_target(t, e)
        except NotExchangeable:
            continue
        if v not in f:
            out.append(e)
    return out


def _geodesic_choice(t: PseudoTriangulation, v: int) -> list[Edge]:
    """Reflex edges of ``v`` in preference order: the one on the side of the
    first geodesic segment towards the opposite corner that holds at least
    two edges of ``v`` comes first."""
    face, a, b = _reflex_edges(t, v)
    c = _opposite_corner(t, face)
    path = geodesic(PseudoPolygon(t.points.coords, tuple(face)), v, c)
    g = path[1]
    co = t.points.coords
    side = {}
    for w in t.neighbors(v):
        side[w] = orient(co[v], co[g], co[w])
    wa = a[0] if a[1] == v else a[1]
    group = [w for w in t.neighbors(v) if side[w] == side[wa]]
    return [a, b] if len(group) >= 2 else [b, a]


def reduce_degree(t: PseudoTriangulation, v: int, target: int = 2) -> FlipTrace:
    """Lower the degree of internal pointed vertex ``v`` to ``target`` by
    flipping edges incident to its reflex angle, one degree per flip."""
    pts = t.points
    if pts.on_hull(v):
        raise PipelineError(f"vertex {v} is on the convex hull")
    if target not in (2, 3):
        raise PipelineError("target degree must be 2 or 3")
    trace = FlipTrace.begin(t)
    while t.degree(v) > target:
        if not t.is_pointed_vertex(v):
            raise PipelineError(f"vertex {v} is not pointed")
        before = t.degree(v)
        for e in _geodesic_choice(t, v):
            try:
                f = exchange_target(t, e)
            except NotExchangeable:
                continue
            if v not in f:
                _flip(t, trace, e)
                break
        else:
            raise PipelineError(f"no degree-reducing flip at vertex {v}")
        assert t.degree(v) == before - 1
    return trace


# -- fans --------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """Maximal run of consecutive bottom ranks whose top endpoints are hull
    vertices.  ``chain`` is d_0 (index), d_1..d_m (chord tops ordered away
    from the index), d_{m+1} (other flank)."""
    ranks: tuple[int, ...]
    left: int
    right: int
    index: int | None
    side: str | None
    chain: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.ranks)

    def slot_rank(self, k: int, points: PointSet) -> int:
        return points.rank[self.chain[k]]

    def chords(self, points: PointSet) -> list[Edge]:
        o = points.order
        return [edge(o[0], o[r]) for r in self.ranks]


def find_fans(points: PointSet) -> list[Fan]:
    """Fans in left-to-right (shelling) order."""
    o = points.order
    fans = []
    run: list[int] = []
    for r in list(internal_bottom_ranks(points)) + [None]:
        if r is not None and points.on_hull(o[r]):
            run.append(r)
            continue
        if run:
            i, j = run[0], run[-1]
            L, R = o[i - 1], o[j + 1]
            tops = [o[k] for k in run]
            if not points.on_hull(L):
                fans.append(Fan(tuple(run), L, R, L, "L", (L, *tops, R)))
            elif not points.on_hull(R):
                fans.append(Fan(tuple(run), L, R, R, "R", (R, *reversed(tops), L)))
            else:
                fans.append(Fan(tuple(run), L, R, None, None, (L, *tops, R)))
            run = []
    return fans


@dataclass
class FanCursor:
    """Indexing state of one fan.

    Open at position p the indexed edge d_0 d_{p+1} carries the label of
    slot p; slots k < p sit on d_1 d_{k+2} and slots k > p on v_0 d_k.
    Parked at p the slot-p label sits on v_0 d_1 instead.
    """
    t: PseudoTriangulation
    fan: Fan
    p: int = 0
    state: str = "closed"
    setup: list = field(default_factory=list)

    @property
    def d(self) -> tuple[int, ...]:
        return self.fan.chain

    @property
    def v0(self) -> int:
        return self.t.points.v0

    def indexed_edge(self) -> Edge:
        if self.state != "open":
            raise PipelineError("fan is not open")
        return edge(self.d[0], self.d[self.p + 1])

    def slot_label(self, k: int) -> int:
        d, v0 = self.d, self.v0
        if self.state == "closed":
            return self.t.labels[edge(v0, d[k])]
        if k == self.p:
            e = edge(d[0], d[k + 1]) if self.state == "open" else edge(v0, d[1])
        elif k < self.p:
            e = edge(d[1], d[k + 2])
        else:
            e = edge(v0, d[k])
        return self.t.labels[e]

    def slot_of(self, lab: int) -> int | None:
        for k in range(1, self.fan.m + 1):
            if self.slot_label(k) == lab:
                return k
        return None

    def _expect(self, ev, want: Edge):
        if ev.inserted != want:
            raise PipelineError(f"fan flip inserted {ev.inserted}, expected {want}")

    def open(self, trace: FlipTrace) -> None:
        """Index the fan and put the indexed edge on slot 1."""
        if self.state != "closed":
            raise PipelineError("fan is already indexed")
        if self.fan.index is None:
            raise PipelineError("fan has no internal flanking vertex")
        t, d, v0 = self.t, self.d, self.v0
        x = d[0]
        self.setup = []
        if self.fan.side == "L":
            if edge(x, d[1]) not in t.edges:
                if t.degree(x) != 2:
                    raise PipelineError(f"index {x} has degree {t.degree(x)}, expected 2")
                (w,) = [w for w in t.neighbors(x) if w != v0]
                ev = _flip(t, trace, edge(x, w))
                self._expect(ev, edge(x, d[1]))
                self.setup.append(ev)
        else:
            self._clear_right_side(trace)
        self.state, self.p = "parked", 1
        self.unpark(trace)

    def _clear_right_side(self, trace: FlipTrace) -> None:
        # flip the index's edges towards later vertices, lowest first
        t, x = self.t, self.d[0]
        pts = t.points
        c = pts.coords
        while t.degree(x) > 2:
            later = [w for w in t.neighbors(x) if pts.rank[w] > pts.rank[x]]
            if not later:
                raise PipelineError(f"index {x} has extra edges on its left side")
            base = (c[self.v0][0] - c[x][0], c[self.v0][1] - c[x][1])

            def rel(w):
                return (c[w][0] - c[x][0], c[w][1] - c[x][1])
            later.sort(key=cmp_to_key(lambda a, b: _ccw_from(base, rel(a), rel(b))))
            ev = _flip(t, trace, edge(x, later[0]))
            if x in ev.inserted:
                raise PipelineError(f"clearing index {x} did not lower its degree")
            self.setup.append(ev)
        if set(t.neighbors(x)) != {self.v0, self.d[1]}:
            raise PipelineError(f"index {x} is not attached to v0 and d_1")

    def unpark(self, trace: FlipTrace) -> None:
        if self.state != "parked":
            raise PipelineError("fan is not parked")
        ev = _flip(self.t, trace, edge(self.v0, self.d[1]))
        self._expect(ev, edge(self.d[0], self.d[self.p + 1]))
        self.state = "open"

    def park(self, trace: FlipTrace) -> None:
        if self.state != "open":
            raise PipelineError("fan is not open")
        ev = _flip(self.t, trace, self.indexed_edge())
        self._expect(ev, edge(self.v0, self.d[1]))
        self.state = "parked"

    def shift(self, trace: FlipTrace, direction: int = 1) -> None:
        if self.state != "open":
            raise PipelineError("fan is not open")
        d, v0, p = self.d, self.v0, self.p
        if direction == 1:
            if p >= self.fan.m:
                raise PipelineError("indexed edge is already at the last diagonal")
            self._expect(_flip(self.t, trace, edge(v0, d[p + 1])), edge(d[0], d[p + 2]))
            self._expect(_flip(self.t, trace, edge(d[0], d[p + 1])), edge(d[1], d[p + 2]))
            self.p = p + 1
        elif direction == -1:
            if p <= 1:
                raise PipelineError("indexed edge is already at the first diagonal")
            self._expect(_flip(self.t, trace, edge(d[1], d[p + 1])), edge(d[0], d[p]))
            self._expect(_flip(self.t, trace, edge(d[0], d[p + 1])), edge(v0, d[p]))
            self.p = p - 1
        else:
            raise ValueError("direction must be +1 or -1")

    def move_to(self, trace: FlipTrace, k: int) -> None:
        while self.p < k:
            self.shift(trace, 1)
        while self.p > k:
            self.shift(trace, -1)

    def close(self, trace: FlipTrace) -> None:
        if self.state == "closed":
            return
        if self.state == "parked" and self.p != 1:
            self.unpark(trace)
        if self.state == "open":
            self.move_to(trace, 1)
            self.park(trace)
        for ev in reversed(self.setup):
            self._expect(_flip(self.t, trace, ev.inserted), ev.removed)
        self.setup = []
        self.state, self.p = "closed", 0


def _ccw_from(base, a, b) -> int:
    """Order directions a, b counter-clockwise starting at ``base``."""
    def key(u):
        cr = base[0] * u[1] - base[1] * u[0]
        dot = base[0] * u[0] + base[1] * u[1]
        return 0 if cr > 0 or (cr == 0 and dot > 0) else 1
    ka, kb = key(a), key(b)
    if ka != kb:
        return ka - kb
    cr = a[0] * b[1] - a[1] * b[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def index_fan(t: PseudoTriangulation, fan: Fan) -> tuple[FanCursor, FlipTrace]:
    trace = FlipTrace.begin(t)
    cur = FanCursor(t, fan)
    cur.open(trace)
    return cur, trace


def shift_index(cur: FanCursor, direction: int = 1) -> FlipTrace:
    trace = FlipTrace.begin(cur.t)
    cur.shift(trace, direction)
    return trace


def switch_shared_index(src: FanCursor, dst: FanCursor) -> FlipTrace:
    """Move a shared index from fan ``src`` (open) to fan ``dst`` (closed or
    parked): park, flip the index's top edge across, unpark."""
    v = src.d[0]
    if dst.d[0] != v or src.t is not dst.t:
        raise PipelineError(f"vertex {v} does not index both fans")
    if src.state != "open" or dst.state == "open":
        raise PipelineError("switch needs the source open and the target parked")
    t = src.t
    trace = FlipTrace.begin(t)
    src.park(trace)
    ev = _flip(t, trace, edge(v, src.d[1]))
    if ev.inserted != edge(v, dst.d[1]):
        raise PipelineError(f"top edge of {v} flipped to {ev.inserted}")
    if dst.state == "closed":
        dst.state, dst.p = "parked", 1
    dst.unpark(trace)
    return trace


def swap_indexed_with_free(cur: FanCursor, free: int) -> FlipTrace:
    """Exchange the label of the indexed edge with a free label."""
    t = cur.t
    e = cur.indexed_edge()
    trace = FlipTrace.begin(t)
    red = reduce_degree(t, cur.d[0], 2)
    trace.extend(red)
    if e not in t.edges:
        raise PipelineError("degree reduction removed the indexed edge")
    trace.extend(free_label_swap_degree2(t, e, free))
    for ev in reversed(red.events):
        _flip(t, trace, ev.inserted)
    return trace


def swap_indexed_edges(c1: FanCursor, c2: FanCursor, placeholder: int | None = None) -> FlipTrace:
    """Interchange the labels of the indexed edges of two open fans through a
    free placeholder label.

    The indices are reduced one at a time, since lowering the degree of one
    index may raise the degree of the other when they are adjacent.
    """
    t = c1.t
    if c1 is c2:
        return FlipTrace.begin(t)
    if not t.free:
        raise LabelError("no free label to use as a placeholder")
    x = min(t.free) if placeholder is None else placeholder
    l1, l2 = t.labels[c1.indexed_edge()], t.labels[c2.indexed_edge()]
    trace = FlipTrace.begin(t)
    trace.extend(swap_indexed_with_free(c1, x))
    trace.extend(swap_indexed_with_free(c2, l1))
    trace.extend(swap_indexed_with_free(c1, l2))
    return trace


def sort_fan_labels(t: PseudoTriangulation, fan: Fan, target: dict[int, int]) -> FlipTrace:
    """Arrange the chord labels of a closed fan as ``target`` (rank -> label)
    with pentagon swaps of consecutive chords."""
    ranks = list(fan.ranks)
    cur = {r: t.labels[bottom_edge(t, r)] for r in ranks}
    if set(target) != set(ranks) or sorted(target.values()) != sorted(cur.values()):
        raise LabelError("target is not a permutation of the fan labels")
    trace = FlipTrace.begin(t)
    pos = {target[r]: i for i, r in enumerate(ranks)}
    seq = [pos[cur[r]] for r in ranks]
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                trace.extend(swap_consecutive_bottom(t, ranks[i]))
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True
    return trace


# -- the four-stage shuffle --------------------------------------------------

@dataclass
class LabelPartition:
    """Bottom labels split by fan, non-fan bottom labels, free pool, plus the
    target sets."""
    B: frozenset[int]
    F: list[frozenset[int]]
    Fbar: frozenset[int]
    free: frozenset[int]
    F_target: list[frozenset[int]]
    Fbar_target: frozenset[int]

    @classmethod
    def of(cls, t: PseudoTriangulation, fans: list[Fan], target: dict[int, int]) -> "LabelPartition":
        bl = bottom_labels(t)
        fan_ranks = {r for f in fans for r in f.ranks}
        return cls(
            B=frozenset(bl.values()),
            F=[frozenset(bl[r] for r in f.ranks) for f in fans],
            Fbar=frozenset(bl[r] for r in bl if r not in fan_ranks),
            free=frozenset(t.free),
            F_target=[frozenset(target[r] for r in f.ranks) for f in fans],
            Fbar_target=frozenset(target[r] for r in target if r not in fan_ranks),
        )

    def check(self) -> None:
        union = frozenset().union(*self.F) | self.Fbar
        sizes = sum(len(x) for x in self.F) + len(self.Fbar)
        if union != self.B or sizes != len(self.B):
            raise PipelineError("bottom labels are not split disjointly by fans")
        if len(self.Fbar) != len(self.free):
            raise PipelineError(f"|Fbar| = {len(self.Fbar)} but {len(self.free)} free labels")


def shuffle_general(t: PseudoTriangulation, target: dict[int, int]) -> FlipTrace:
    """Permute the bottom labels of the left-shelling into ``target`` using
    free labels and fan indices."""
    pts = t.points
    if not is_left_shelling(t):
        raise PipelineError("shuffle needs the left-shelling")
    cur = bottom_labels(t)
    if set(target) != set(cur) or sorted(target.values()) != sorted(cur.values()):
        raise LabelError("target must permute the labels of the internal bottom edges")
    trace = FlipTrace.begin(t)
    if target == cur:
        return trace
    fans = find_fans(pts)
    fan_ranks = {r for f in fans for r in f.ranks}
    part0 = LabelPartition.of(t, fans, target)

    def checkpoint(stage):
        part = LabelPartition.of(t, fans, target)
        part.check()
        trace.note(stage=stage, fans=[sorted(x) for x in part.F], fbar=sorted(part.Fbar),
                   free=sorted(part.free))
        return part

    checkpoint(0)

    # stage 1: park the non-fan bottom labels in the pool
    pool0 = sorted(t.free)
    internal = [r for r in internal_bottom_ranks(pts) if r not in fan_ranks]
    place = dict(zip(internal, pool0))

    def stage1(tt, v, tr):
        r = pts.rank[v]
        if r in place:
            tr.extend(free_label_swap_degree2(tt, bottom_edge(tt, r), place[r]))

    if internal:
        trace.extend(sweep(t, SweepPlan(hook=stage1)))
    if set(t.free) != set(part0.Fbar):
        raise PipelineError("stage 1 did not free the non-fan bottom labels")
    checkpoint(1)

    # stage 2: give every fan its own label set
    cursors = [FanCursor(t, f) for f in fans]
    for i, (f, c) in enumerate(zip(fans, cursors)):
        want = part0.F_target[i]
        if f.index is None:
            if {c.slot_label(k) for k in range(1, f.m + 1)} != want:
                raise PipelineError("fan without index needs foreign labels")
            continue
        if {c.slot_label(k) for k in range(1, f.m + 1)} == want:
            continue
        c.open(trace)
        for k in range(1, f.m + 1):
            c.move_to(trace, k)
            lab = c.slot_label(k)
            if lab in want:
                continue
            have = {c.slot_label(q) for q in range(1, f.m + 1)}
            mine = sorted(want & t.free)
            if not mine:
                y = min(want - have - t.free)
                j = next(j for j in range(len(fans)) if j != i and cursors[j].slot_of(y))
                c.close(trace)
                cj = cursors[j]
                cj.open(trace)
                cj.move_to(trace, cj.slot_of(y))
                pool = sorted(t.free)
                z = next((x for x in pool if x in part0.F_target[j]), pool[0])
                trace.extend(swap_indexed_with_free(cj, z))
                cj.close(trace)
                c.open(trace)
                c.move_to(trace, k)
                mine = [y]
            trace.extend(swap_indexed_with_free(c, mine[0]))
            trace.note(op="place", fan=i, slot=k, label=mine[0])
        c.close(trace)
    if not is_left_shelling(t):
        raise PipelineError("stage 2 left the shelling")
    part2 = checkpoint(2)
    if part2.F != part0.F_target or set(t.free) != set(part0.Fbar_target):
        raise PipelineError("stage 2 did not distribute labels to their fans")

    # stage 3: order each fan
    for f in fans:
        trace.extend(sort_fan_labels(t, f, {r: target[r] for r in f.ranks}))
    checkpoint(3)

    # stage 4: bring the non-fan targets back from the pool
    def stage4(tt, v, tr):
        r = pts.rank[v]
        if r in place:
            tr.extend(free_label_swap_degree2(tt, bottom_edge(tt, r), target[r]))

    if internal:
        trace.extend(sweep(t, SweepPlan(hook=stage4)))
    checkpoint(4)
    if bottom_labels(t) != target or set(t.free) != set(pool0):
        raise PipelineError("shuffle did not reach its target")
    return trace


# -- general pipeline --------------------------------------------------------

def _exchange_path_to_deletable(t: PseudoTriangulation, cap: int = 20000) -> list[Edge]:
    """Shortest sequence of exchanging flips after which some edge is
    deletable (BFS over edge sets)."""
    start = t.copy()
    seen = {start.key()}
    frontier = [(start, [])]
    while frontier:
        nxt = []
        for s, path in frontier:
            for e in s.internal_edges():
                try:
                    f = exchange_target(s, e)
                except NotExchangeable:
                    continue
                u = s.copy()
                u.remove_edge(e)
                u.add_edge(f)
                k = u.key()
                if k in seen:
                    continue
                seen.add(k)
                if any(is_deletable(u, g) for g in u.internal_edges()):
                    return path + [e]
                if len(seen) > cap:
                    raise PipelineError("no deletable edge within the search cap")
                nxt.append((u, path + [e]))
        frontier = nxt
    raise PipelineError("non-pointed pseudo-triangulation without a reachable deletion")


def make_pointed(t: PseudoTriangulation) -> FlipTrace:
    """Deletion flips until every vertex is pointed.

    A non-pointed pseudo-triangulation can be minimal (no edge deletable);
    then a short run of exchanging flips is searched first.
    """
    trace = FlipTrace.begin(t)
    while not t.is_pointed():
        bad = set(t.non_pointed_vertices())
        cands = [e for e in t.internal_edges() if is_deletable(t, e)]
        if not cands:
            path = _exchange_path_to_deletable(t)
            for e in path:
                _flip(t, trace, e)
            trace.note(op="minimal-non-pointed", exchanges=len(path))
            continue
        cands.sort(key=lambda e: (not (set(e) & bad), e))
        trace.append(deletion_flip(t, cands[0]))
    return trace


def repair_labels(t: PseudoTriangulation) -> FlipTrace:
    """Replace labels outside the canonical range by missing canonical ones.
    ``t`` must be the fully labelled left-shelling."""
    pts = t.points
    canon = set(canonical_assignment(pts).values())
    trace = FlipTrace.begin(t)
    extra = {lab for lab in t.labels.values() if lab not in canon}
    if not extra:
        return trace
    # move stray chord labels onto bottoms of internal vertices
    bl = bottom_labels(t)
    inner = [r for r in bl if not pts.on_hull(pts.order[r])]
    target = dict(bl)
    spare = [r for r in inner if bl[r] in canon]
    for r in bl:
        if pts.on_hull(pts.order[r]) and bl[r] in extra:
            s = spare.pop(0)
            target[r], target[s] = target[s], target[r]
    trace.extend(shuffle_general(t, target))
    trace.note(phase="repair-shuffle")
    missing = sorted(canon - set(t.labels.values()))

    def hook(tt, v, tr):
        for w in list(tt.neighbors(v)):
            e = edge(v, w)
            if tt.labels.get(e) in extra:
                tr.extend(free_label_swap_degree2(tt, e, missing.pop(0)))

    trace.extend(sweep(t, SweepPlan(hook=hook)))
    trace.note(phase="repair-sweep")
    if set(t.labels.values()) != canon:
        raise PipelineError("label repair left non-canonical labels")
    return trace


def to_canonical_general(t: PseudoTriangulation) -> FlipTrace:
    if not t.is_fully_labelled():
        raise LabelError("every internal edge must carry a label")
    trace = make_pointed(t)
    trace.note(phase="pointed")
    trace.extend(to_left_shelling(t))
    trace.note(phase="left-shelling")
    trace.extend(repair_labels(t))
    trace.extend(sort_left_shelling(t, shuffle_fn=shuffle_general))
    trace.note(phase="sorted")
    return trace


def transform_general(t1: PseudoTriangulation, t2: PseudoTriangulation) -> FlipTrace:
    """Flip sequence (exchange, insert, delete) from ``t1`` to ``t2``."""
    if t1.points != t2.points:
        raise PipelineError("different point sets")
    a = t1.copy()
    fwd = to_canonical_general(a)
    b = t2.copy()
    back = to_canonical_general(b)
    if not a.same_state(b):
        raise PipelineError("canonical forms differ")
    out = FlipTrace(t1.copy(), list(fwd.events), list(fwd.notes))
    out.note(phase="to-canonical")
    out.extend(back.inverse())
    out.note(phase="from-canonical")
    return out
