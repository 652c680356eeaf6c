"""Pseudo-k-gons: merged faces, brute-force bitangents, geodesics and the
local predicates used by the flip procedures."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .geometry import Coord, edge, has_reflex_gap, in_open_sector, orient, segments_cross
from .triangulation import Edge, PseudoTriangulation, corner_positions

__all__ = [
    "PseudoPolygon", "PolygonError", "face_merge", "bitangents", "geodesic",
    "wedge_flip_predicate", "five_bitangent_certificates", "AlreadyFive",
    "FlipTopFirst", "face_right_of_bottom", "vertex_bitangents",
]


class PolygonError(ValueError):
    pass


@dataclass(frozen=True)
class PseudoPolygon:
    """A weakly simple polygon given by its counter-clockwise boundary walk.

    Vertices may repeat (antennae), so corners are walk positions.
    """
    coords: tuple[Coord, ...]
    walk: tuple[int, ...]

    @cached_property
    def corners(self) -> tuple[int, ...]:
        return tuple(corner_positions(self.coords, self.walk))

    @property
    def k(self) -> int:
        return len(self.corners)

    @cached_property
    def corner_vertices(self) -> tuple[int, ...]:
        return tuple(self.walk[i] for i in self.corners)

    @cached_property
    def walk_edges(self) -> frozenset[Edge]:
        w = self.walk
        return frozenset(edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))

    @cached_property
    def _occurrences(self) -> dict[int, list[tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        w = self.walk
        for i, v in enumerate(w):
            occ.setdefault(v, []).append((w[i - 1], w[(i + 1) % len(w)]))
        return occ

    @cached_property
    def _local_nbrs(self) -> dict[int, set[int]]:
        nb: dict[int, set[int]] = {}
        for u, v in self.walk_edges:
            nb.setdefault(u, set()).add(v)
            nb.setdefault(v, set()).add(u)
        return nb

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.coords], "walk": list(self.walk)}

    def sees(self, u: int, v: int) -> bool:
        """Does the open segment uv run through the interior of the polygon?"""
        c = self.coords
        pu, pv = c[u], c[v]
        d = (pv[0] - pu[0], pv[1] - pu[1])
        inside = False
        for p, q in self._occurrences[u]:
            a = (c[q][0] - pu[0], c[q][1] - pu[1])
            b = (c[p][0] - pu[0], c[p][1] - pu[1])
            if in_open_sector(a, b, d):
                inside = True
                break
        if not inside:
            return False
        for a, b in self.walk_edges:
            if a in (u, v) or b in (u, v):
                continue
            if segments_cross(pu, pv, c[a], c[b]):
                return False
        return True

    def keeps_pointed(self, u: int, v: int) -> bool:
        c = self.coords
        for x, y in ((u, v), (v, u)):
            nb = [c[w] for w in self._local_nbrs[x]] + [c[y]]
            if not has_reflex_gap(c[x], nb):
                return False
        return True


def face_merge(t: PseudoTriangulation, *edges: Edge) -> PseudoPolygon:
    """Polygon obtained by deleting the given internal edges of ``t``; the
    faces incident to them must merge into a single face."""
    if not edges:
        raise PolygonError("face_merge needs at least one edge")
    for e in edges:
        if e not in t.edges:
            raise PolygonError(f"{e} is not an edge")
        if t.points.is_hull_edge(e):
            raise PolygonError(f"hull edge {e} borders the outer face")
    ex = frozenset(edges)
    u, v = edges[0]
    if all(edge(v, w) in ex for w in t.neighbors(v)):
        u, v = v, u
    # first half-edge after u -> v in the merged face
    nb = t.neighbors(v)
    i = nb.index(u)
    while True:
        i -= 1
        w = nb[i]
        if edge(v, w) not in ex:
            break
    walk = t.face_walk(v, w, ex)
    vs = set(walk)
    # an endpoint stripped of all its edges floats inside the merged face
    loose = {x for e in edges for x in e if all(edge(x, w) in ex for w in t.neighbors(x))}
    for a, b in edges:
        if not ({a, b} - loose) <= vs:
            raise PolygonError("edges do not bound a single merged face")
    return PseudoPolygon(t.points.coords, tuple(walk))


def bitangents(x: PseudoPolygon) -> set[Edge]:
    """All diagonals of ``x`` whose insertion keeps it pointed (brute force)."""
    verts = sorted(set(x.walk))
    we = x.walk_edges
    out = set()
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if (u, v) in we:
                continue
            if x.sees(u, v) and x.keeps_pointed(u, v):
                out.add((u, v))
    return out


def vertex_bitangents(x: PseudoPolygon, v: int) -> set[Edge]:
    """Segments joining a point ``v`` lying inside ``x`` (not on its walk) to
    walk vertices, that cross no walk edge and keep the walk vertex pointed."""
    if v in x.walk:
        raise PolygonError(f"vertex {v} lies on the walk")
    c = x.coords
    out = set()
    for w in sorted(set(x.walk)):
        if not x.sees(w, v):
            continue
        nb = [c[u] for u in x._local_nbrs[w]] + [c[v]]
        if has_reflex_gap(c[w], nb):
            out.add(edge(v, w))
    return out


def geodesic(x: PseudoPolygon, a: int, b: int) -> list[int]:
    """Shortest path from vertex ``a`` to vertex ``b`` inside ``x``.

    Visibility tests are exact; only the path-length comparison in the
    Dijkstra search uses floating point.
    """
    verts = sorted(set(x.walk))
    if a not in verts or b not in verts:
        raise PolygonError("geodesic endpoints must be polygon vertices")
    c = x.coords
    we = x.walk_edges

    def visible(u, v):
        return edge(u, v) in we or x.sees(u, v)

    dist = {a: 0.0}
    prev: dict[int, int] = {}
    heap = [(0.0, a)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == b:
            break
        for v in verts:
            if v in done or v == u or not visible(u, v):
                continue
            nd = d + math.dist(c[u], c[v])
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if b not in done:
        raise PolygonError(f"no path from {a} to {b}")
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def wedge_flip_predicate(t: PseudoTriangulation, face: Sequence[int], corner_pos: int,
                         e: Edge) -> bool:
    """Whether every vertex of the other face containing ``e`` lies in the
    closed wedge spanned at the corner ``face[corner_pos]`` by its two
    boundary edges.  ``e`` must lie on the chain opposite that corner."""
    c = t.points.coords
    k = len(face)
    a = face[corner_pos]
    x, y = face[(corner_pos + 1) % k], face[corner_pos - 1]
    corners = corner_positions(c, face)
    if corner_pos not in corners:
        raise PolygonError("position is not a corner of the face")
    if not _on_opposite_chain(face, corners, corner_pos, e):
        raise PolygonError(f"{e} is not on the chain opposite the corner")
    if t.points.is_hull_edge(e):
        raise PolygonError("hull edge has no other face")
    other = _other_face(t, face, e)
    pa, px, py = c[a], c[x], c[y]
    for q in set(other):
        if q == a:
            continue
        if orient(pa, px, c[q]) < 0 or orient(pa, c[q], py) < 0:
            return False
    return True


def _on_opposite_chain(face, corners, corner_pos, e) -> bool:
    k = len(face)
    i = corners.index(corner_pos)
    start, stop = corners[(i + 1) % 3], corners[(i + 2) % 3]
    pos = start
    while pos != stop:
        if edge(face[pos], face[(pos + 1) % k]) == edge(*e):
            return True
        pos = (pos + 1) % k
    return False


def _other_face(t: PseudoTriangulation, face, e: Edge) -> list[int]:
    k = len(face)
    for i in range(k):
        u, v = face[i], face[(i + 1) % k]
        if edge(u, v) == edge(*e):
            return t.face_walk(v, u)
    raise PolygonError(f"{e} not on face")


# -- pentagon certificates for consecutive bottom edges ----------------------

@dataclass(frozen=True)
class AlreadyFive:
    bitangent_count: int


@dataclass(frozen=True)
class FlipTopFirst:
    top_edge: Edge
    bitangent_count: int


def face_right_of_bottom(t: PseudoTriangulation, rank: int) -> list[int]:
    """Face on the clockwise side of the bottom edge of ``v_rank``."""
    order = t.points.order
    return t.face_walk(order[rank], order[0])


def five_bitangent_certificates(t: PseudoTriangulation, rank: int):
    """Certificate for swapping the bottom edges of ranks ``rank`` and
    ``rank + 1`` of a left-shelling.

    Returns :class:`AlreadyFive` when the face right of the second edge is a
    triangle, else :class:`FlipTopFirst` naming the top edge to flip first.
    In both cases the resulting pseudo-pentagon is checked to have exactly
    five bitangents; the check is done on a copy, ``t`` is left untouched.
    """
    from .flips import exchanging_flip

    pts = t.points
    if not 2 <= rank < pts.n - 2:
        raise PolygonError(f"ranks {rank}, {rank + 1} are not consecutive internal bottom edges")
    order = pts.order
    a, b = edge(order[0], order[rank]), edge(order[0], order[rank + 1])
    if a not in t.edges or b not in t.edges:
        raise PolygonError("bottom edges missing")
    vb = order[rank + 1]
    if len(face_right_of_bottom(t, rank + 1)) == 3:
        cnt = len(bitangents(face_merge(t, a, b)))
        return AlreadyFive(cnt)
    if t.degree(vb) != 2:
        raise PolygonError(f"top endpoint {vb} of the second edge does not have degree two")
    top = next(edge(vb, w) for w in t.neighbors(vb) if w != order[0])
    s = t.copy()
    exchanging_flip(s, top)
    cnt = len(bitangents(face_merge(s, a, b)))
    return FlipTopFirst(top, cnt)
