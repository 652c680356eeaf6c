"""Exact predicates on integer points, convex hulls, convex layers and the
shelling order around the bottom-most point.

All predicates use Python integers, so intermediates never overflow no matter
how large the coordinates are.  Point sets must be in general position: no
duplicates and no three collinear points.
"""
from __future__ import annotations

import enum
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

Coord = tuple[int, int]


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class GeometryError(ValueError):
    """Invalid point input (degenerate, non-integer, too few points)."""


def cross(p: Coord, q: Coord, r: Coord) -> int:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p: Coord, q: Coord, r: Coord) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def orientation(p: Coord, q: Coord, r: Coord) -> Orientation:
    return Orientation(orient(p, q, r))


def segments_cross(a: Coord, b: Coord, c: Coord, d: Coord) -> bool:
    """Proper crossing of segments ab and cd that share no endpoint."""
    return (orient(a, b, c) * orient(a, b, d) < 0
            and orient(c, d, a) * orient(c, d, b) < 0)


def _half(dx: int, dy: int) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def angle_cmp(u: Coord, v: Coord) -> int:
    """Compare direction vectors by polar angle in [0, 2pi)."""
    hu, hv = _half(*u), _half(*v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def sort_ccw(center: Coord, pts: Iterable[tuple[int, Coord]]) -> list[int]:
    """Sort ``(key, point)`` pairs counter-clockwise around ``center``; return keys."""
    items = [(k, (p[0] - center[0], p[1] - center[1])) for k, p in pts]
    items.sort(key=cmp_to_key(lambda a, b: angle_cmp(a[1], b[1])))
    return [k for k, _ in items]


def in_open_sector(a: Coord, b: Coord, d: Coord) -> bool:
    """Is direction ``d`` strictly inside the sector swept counter-clockwise
    from direction ``a`` to direction ``b``?

    ``a == b`` denotes a full turn (an antenna tip) and then every direction
    other than ``a`` is inside.
    """
    ab = a[0] * b[1] - a[1] * b[0]
    ad = a[0] * d[1] - a[1] * d[0]
    db = d[0] * b[1] - d[1] * b[0]
    if ab == 0 and a[0] * b[0] + a[1] * b[1] > 0:
        return not (ad == 0 and a[0] * d[0] + a[1] * d[1] > 0)
    if ab > 0:
        return ad > 0 and db > 0
    # reflex sector: complement of the closed convex sector from b to a
    bd = b[0] * d[1] - b[1] * d[0]
    da = d[0] * a[1] - d[1] * a[0]
    return not (bd >= 0 and da >= 0)


def has_reflex_gap(center: Coord, nbrs: Sequence[Coord]) -> bool:
    """True if some angular gap between consecutive directions exceeds pi."""
    if len(nbrs) <= 2:
        return True
    dirs = [(p[0] - center[0], p[1] - center[1]) for p in nbrs]
    dirs.sort(key=cmp_to_key(angle_cmp))
    for i, a in enumerate(dirs):
        b = dirs[(i + 1) % len(dirs)]
        if a[0] * b[1] - a[1] * b[0] < 0:
            return True
    return False


def convex_hull(points: Sequence[Coord], indices: Iterable[int] | None = None) -> list[int]:
    """Indices of the hull vertices in counter-clockwise order (monotone chain)."""
    idx = sorted(range(len(points)) if indices is None else indices,
                 key=lambda i: points[i])
    if len(idx) < 3:
        if indices is None:
            raise GeometryError("convex hull needs at least 3 points")
        return list(idx)

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orient(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(idx)
    upper = chain(reversed(idx))
    return lower[:-1] + upper[:-1]


def convex_layers(points: Sequence[Coord]) -> list[list[int]]:
    remaining = list(range(len(points)))
    layers = []
    while remaining:
        layer = convex_hull(points, remaining)
        layers.append(layer)
        gone = set(layer)
        remaining = [i for i in remaining if i not in gone]
    return layers


def bottom_most(points: Sequence[Coord]) -> int:
    return min(range(len(points)), key=lambda i: (points[i][1], points[i][0]))


def shelling_order(points: Sequence[Coord]) -> list[int]:
    """v0 is the bottom-most point ((y, x) lexicographic); the rest follow in
    clockwise order around it, i.e. by decreasing polar angle."""
    v0 = bottom_most(points)
    o = points[v0]
    rest = [i for i in range(len(points)) if i != v0]

    # i precedes j iff j is clockwise of i as seen from v0
    rest.sort(key=cmp_to_key(lambda i, j: 1 if orient(o, points[i], points[j]) > 0 else -1))
    return [v0] + rest


def check_general_position(points: Sequence[Coord]) -> None:
    seen = {}
    for i, p in enumerate(points):
        if not (isinstance(p[0], int) and isinstance(p[1], int)):
            raise GeometryError(f"point {i} has non-integer coordinates {p!r}")
        if p in seen:
            raise GeometryError(f"points {seen[p]} and {i} coincide at {p}")
        seen[p] = i
    # O(n^3); point sets here are small
    for i, j, k in combinations(range(len(points)), 3):
        if orient(points[i], points[j], points[k]) == 0:
            raise GeometryError(f"points {i}, {j}, {k} are collinear: "
                                f"{points[i]}, {points[j]}, {points[k]}")


class PointSet:
    """Immutable point set in general position.

    Vertex ids are input positions.  ``order`` is the shelling order
    (``order[0]`` is v0) and ``rank`` its inverse.
    """

    __slots__ = ("coords", "n", "hull", "h", "layers", "c", "order", "rank",
                 "_hull_set", "_hull_edges")

    def __init__(self, points: Iterable[Sequence[int]]):
        coords = tuple((int(p[0]), int(p[1])) if _is_int(p[0]) and _is_int(p[1])
                       else _bad(p) for p in points)
        if len(coords) < 3:
            raise GeometryError("a point set needs at least 3 points")
        check_general_position(coords)
        self.coords = coords
        self.n = len(coords)
        self.hull = tuple(convex_hull(coords))
        self.h = len(self.hull)
        self.layers = tuple(tuple(layer) for layer in convex_layers(coords))
        self.c = len(self.layers)
        self.order = tuple(shelling_order(coords))
        rank = [0] * self.n
        for r, v in enumerate(self.order):
            rank[v] = r
        self.rank = tuple(rank)
        self._hull_set = frozenset(self.hull)
        self._hull_edges = frozenset(
            edge(self.hull[i], self.hull[(i + 1) % self.h]) for i in range(self.h))

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> Coord:
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"PointSet({list(self.coords)!r})"

    @property
    def v0(self) -> int:
        return self.order[0]

    def on_hull(self, v: int) -> bool:
        return v in self._hull_set

    def is_hull_edge(self, e: tuple[int, int]) -> bool:
        return e in self._hull_edges

    @property
    def hull_edges(self) -> frozenset:
        return self._hull_edges

    @property
    def label_universe(self) -> int:
        """Size of the label range {1, ..., 3n - 3 - 2h}."""
        return 3 * self.n - 3 - 2 * self.h

    def internal_vertices(self) -> list[int]:
        return [v for v in self.order if v not in self._hull_set]


def edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _bad(p):
    raise GeometryError(f"non-integer coordinates {p!r}")
