"""Edge-labelled pseudo-triangulations: the plane graph, its faces, the label
ledger, validation and the left/right shelling constructions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Sequence

from .geometry import (PointSet, angle_cmp, edge, has_reflex_gap, orient,
                       segments_cross)

Edge = tuple[int, int]


class LabelError(ValueError):
    pass


@dataclass
class ValidationReport:
    crossings: list[tuple[Edge, Edge]] = field(default_factory=list)
    bad_faces: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    missing_hull_edges: list[Edge] = field(default_factory=list)
    isolated: list[int] = field(default_factory=list)
    label_problems: list[str] = field(default_factory=list)
    non_pointed: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.crossings or self.bad_faces or self.missing_hull_edges
                    or self.isolated or self.label_problems)

    def violations(self) -> list[str]:
        out = [f"edges {a} and {b} cross" for a, b in self.crossings]
        out += [f"face {w} has {k} corners" for w, k in self.bad_faces]
        out += [f"hull edge {e} missing" for e in self.missing_hull_edges]
        out += [f"vertex {v} is isolated or disconnected" for v in self.isolated]
        return out + self.label_problems


class PseudoTriangulation:
    """A plane straight-line graph on a :class:`PointSet` together with an
    injective labelling of its internal edges by ``{1, ..., 3n-3-2h}``.

    The rotation system is derived from coordinates.  Instances are mutable;
    use :meth:`copy` for snapshots.
    """

    def __init__(self, points: PointSet, edges: Iterable[Sequence[int]] = (),
                 labels: dict[Edge, int] | None = None):
        self.points = points
        self.edges: set[Edge] = set()
        self._nbrs: list[list[int]] = [[] for _ in range(points.n)]
        for e in edges:
            self.add_edge(edge(*e))
        self.labels: dict[Edge, int] = {}
        self.free: set[int] = set(range(1, points.label_universe + 1))
        for e, lab in (labels or {}).items():
            self.set_label(edge(*e), lab)

    # -- basic graph ---------------------------------------------------
    @property
    def n(self) -> int:
        return self.points.n

    def copy(self) -> "PseudoTriangulation":
        t = PseudoTriangulation.__new__(PseudoTriangulation)
        t.points = self.points
        t.edges = set(self.edges)
        t._nbrs = [list(x) for x in self._nbrs]
        t.labels = dict(self.labels)
        t.free = set(self.free)
        return t

    def add_edge(self, e: Edge) -> None:
        u, v = e
        if e in self.edges:
            raise ValueError(f"edge {e} already present")
        self.edges.add(e)
        self._insert_nbr(u, v)
        self._insert_nbr(v, u)

    def remove_edge(self, e: Edge) -> None:
        u, v = e
        self.edges.remove(e)
        self._nbrs[u].remove(v)
        self._nbrs[v].remove(u)

    def _insert_nbr(self, u: int, v: int) -> None:
        c = self.points.coords
        o = c[u]
        lst = self._nbrs[u]
        lst.append(v)
        lst.sort(key=cmp_to_key(lambda a, b: angle_cmp(
            (c[a][0] - o[0], c[a][1] - o[1]), (c[b][0] - o[0], c[b][1] - o[1]))))

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of ``v`` in counter-clockwise order."""
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def is_internal_edge(self, e: Edge) -> bool:
        return e in self.edges and not self.points.is_hull_edge(e)

    def internal_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if not self.points.is_hull_edge(e))

    # -- labels --------------------------------------------------------
    def set_label(self, e: Edge, lab: int) -> None:
        if e not in self.edges or self.points.is_hull_edge(e):
            raise LabelError(f"only internal edges carry labels, got {e}")
        if lab not in self.free:
            raise LabelError(f"label {lab} is not free")
        old = self.labels.get(e)
        if old is not None:
            self.free.add(old)
        self.free.remove(lab)
        self.labels[e] = lab

    def take_label(self, e: Edge) -> int:
        lab = self.labels.pop(e)
        self.free.add(lab)
        return lab

    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels.values())

    def edge_of_label(self, lab: int) -> Edge:
        for e, x in self.labels.items():
            if x == lab:
                return e
        raise KeyError(lab)

    def is_fully_labelled(self) -> bool:
        return all(e in self.labels for e in self.internal_edges())

    # -- faces ---------------------------------------------------------
    def face_walk(self, u: int, v: int, exclude: frozenset | set = frozenset()) -> list[int]:
        """Vertices of the face left of the half-edge ``u -> v``, ignoring the
        edges in ``exclude``.  Position ``i`` is the tail of the i-th half-edge."""
        walk = [u]
        a, b = u, v
        while True:
            nb = self._nbrs[b]
            i = nb.index(a)
            # clockwise successor of a around b, skipping excluded edges
            while True:
                i -= 1
                w = nb[i]
                if not exclude or edge(b, w) not in exclude:
                    break
            a, b = b, w
            if a == u and b == v:
                return walk
            walk.append(a)
            if len(walk) > 4 * len(self.edges) + 4:
                raise RuntimeError("face walk did not close")

    def faces(self) -> list[list[int]]:
        """Bounded faces as counter-clockwise walks."""
        seen = set()
        out = []
        for u in range(self.n):
            for v in self._nbrs[u]:
                if (u, v) in seen:
                    continue
                w = self.face_walk(u, v)
                for i, a in enumerate(w):
                    seen.add((a, w[(i + 1) % len(w)]))
                if walk_area2(self.points.coords, w) > 0:
                    out.append(w)
        return out

    def corner_positions(self, walk: Sequence[int]) -> list[int]:
        return corner_positions(self.points.coords, walk)

    # -- pointedness ---------------------------------------------------
    def is_pointed_vertex(self, v: int) -> bool:
        c = self.points.coords
        return has_reflex_gap(c[v], [c[w] for w in self._nbrs[v]])

    def pointed_vertices(self) -> set[int]:
        return {v for v in range(self.n) if self.is_pointed_vertex(v)}

    def non_pointed_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.is_pointed_vertex(v)]

    def is_pointed(self) -> bool:
        return all(self.is_pointed_vertex(v) for v in range(self.n))

    def reflex_face(self, v: int) -> list[int] | None:
        """Walk of the bounded face in which ``v`` has a reflex angle, rotated
        so that ``v`` is at position 0; ``None`` if the reflex angle is outside."""
        c = self.points.coords
        nb = self._nbrs[v]
        for i, w in enumerate(nb):
            x = nb[(i + 1) % len(nb)]
            a = (c[w][0] - c[v][0], c[w][1] - c[v][1])
            b = (c[x][0] - c[v][0], c[x][1] - c[v][1])
            if len(nb) == 1 or a[0] * b[1] - a[1] * b[0] < 0:
                # the sector from w ccw to x is the face left of v -> w
                walk = self.face_walk(v, w)
                if walk_area2(c, walk) > 0:
                    return walk
                return None
        return None

    # -- validation ----------------------------------------------------
    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        c = self.points.coords
        es = sorted(self.edges)
        for i, a in enumerate(es):
            for b in es[i + 1:]:
                if len({*a, *b}) == 4 and segments_cross(c[a[0]], c[a[1]], c[b[0]], c[b[1]]):
                    rep.crossings.append((a, b))
        rep.missing_hull_edges = sorted(self.points.hull_edges - self.edges)
        # connectivity
        seen = {self.points.v0}
        stack = [self.points.v0]
        while stack:
            u = stack.pop()
            for w in self._nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        rep.isolated = [v for v in range(self.n) if v not in seen]
        if not rep.crossings and not rep.isolated:
            for w in self.faces():
                k = len(self.corner_positions(w))
                if k != 3:
                    rep.bad_faces.append((tuple(w), k))
        for e, lab in self.labels.items():
            if e not in self.edges or self.points.is_hull_edge(e):
                rep.label_problems.append(f"label {lab} on non-internal edge {e}")
            if not 1 <= lab <= self.points.label_universe:
                rep.label_problems.append(f"label {lab} outside universe")
        vals = list(self.labels.values())
        if len(set(vals)) != len(vals):
            rep.label_problems.append("labels are not unique")
        if self.free & set(vals) or len(self.free) + len(vals) != self.points.label_universe:
            rep.label_problems.append("free pool and assigned labels do not partition the universe")
        rep.non_pointed = self.non_pointed_vertices()
        return rep

    # -- encodings -----------------------------------------------------
    def key(self) -> tuple:
        return tuple(sorted(self.edges))

    def labelled_key(self) -> tuple:
        return tuple(sorted(self.edges)), tuple(sorted(self.labels.items()))

    def same_state(self, other: "PseudoTriangulation") -> bool:
        return self.edges == other.edges and self.labels == other.labels

    def __repr__(self):
        return f"PseudoTriangulation(n={self.n}, edges={sorted(self.edges)}, labels={self.labels})"


def walk_area2(coords, walk) -> int:
    s = 0
    k = len(walk)
    for i in range(k):
        x1, y1 = coords[walk[i]]
        x2, y2 = coords[walk[(i + 1) % k]]
        s += x1 * y2 - x2 * y1
    return s


def corner_positions(coords, walk: Sequence[int]) -> list[int]:
    """Walk positions with a convex interior angle (walk is counter-clockwise)."""
    k = len(walk)
    out = []
    for i in range(k):
        p, v, q = walk[i - 1], walk[i], walk[(i + 1) % k]
        if p != q and orient(coords[p], coords[v], coords[q]) > 0:
            out.append(i)
    return out


# -- shelling constructions ------------------------------------------------

@dataclass(frozen=True)
class ShellingEdges:
    """Bottom and top edge of every vertex, keyed by shelling rank."""
    bottom: dict[int, Edge]
    top: dict[int, Edge]


def _tangent(points: PointSet, v: int, prefix: Sequence[int], v0: int) -> int:
    c = points.coords
    for u in prefix:
        if u == v0:
            continue
        sides = {orient(c[v], c[u], c[w]) for w in prefix if w != u}
        if len(sides) == 1:
            return u
    raise AssertionError("no tangent found")


def _shelling(points: PointSet, ranks: Sequence[int]) -> tuple[set[Edge], ShellingEdges]:
    order = points.order
    v0 = order[0]
    first = order[ranks[0]]
    edges = {edge(v0, first)}
    bottom = {ranks[0]: edge(v0, first)}
    top = {}
    prefix = [v0, first]
    for r in ranks[1:]:
        v = order[r]
        t = _tangent(points, v, prefix, v0)
        bottom[r] = edge(v0, v)
        top[r] = edge(v, t)
        edges.add(bottom[r])
        edges.add(top[r])
        prefix.append(v)
    return edges, ShellingEdges(bottom, top)


def left_shelling_edges(points: PointSet) -> tuple[set[Edge], ShellingEdges]:
    return _shelling(points, list(range(1, points.n)))


def right_shelling_edges(points: PointSet) -> tuple[set[Edge], ShellingEdges]:
    return _shelling(points, list(range(points.n - 1, 0, -1)))


def build_left_shelling(points: PointSet) -> tuple[PseudoTriangulation, ShellingEdges]:
    edges, sh = left_shelling_edges(points)
    return PseudoTriangulation(points, edges), sh


def build_right_shelling(points: PointSet) -> tuple[PseudoTriangulation, ShellingEdges]:
    edges, sh = right_shelling_edges(points)
    return PseudoTriangulation(points, edges), sh


def internal_bottom_ranks(points: PointSet) -> list[int]:
    return list(range(2, points.n - 1))


def internal_top_ranks(points: PointSet) -> list[int]:
    """Ranks of internal vertices; exactly these have internal top edges."""
    return [r for r in range(2, points.n - 1) if not points.on_hull(points.order[r])]


def canonical_assignment(points: PointSet, label_set: Iterable[int] | None = None
                         ) -> dict[Edge, int]:
    """Canonical labelling of the left-shelling: bottom edges in clockwise
    order, then internal top edges in the same order.  With ``label_set`` the
    k-th canonical slot receives the k-th smallest label of that set."""
    _, sh = left_shelling_edges(points)
    slots = [sh.bottom[r] for r in internal_bottom_ranks(points)]
    slots += [sh.top[r] for r in internal_top_ranks(points)]
    if label_set is None:
        labs = list(range(1, len(slots) + 1))
    else:
        labs = sorted(label_set)
        if len(labs) != len(slots):
            raise LabelError(f"need {len(slots)} labels, got {len(labs)}")
    return dict(zip(slots, labs))


def canonical_labelling(points: PointSet, label_set: Iterable[int] | None = None
                        ) -> PseudoTriangulation:
    t, _ = build_left_shelling(points)
    for e, lab in canonical_assignment(points, label_set).items():
        t.set_label(e, lab)
    return t
