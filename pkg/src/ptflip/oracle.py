"""Brute-force ground truth for tiny point sets: enumeration of
pseudo-triangulations, labelled flip graphs and exact flip distances."""
from __future__ import annotations

import itertools
import math
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .flips import (NotExchangeable, deletion_candidates, exchange_target,
                    insertion_candidates)
from .geometry import PointSet
from .triangulation import PseudoTriangulation, build_left_shelling, canonical_labelling

DEFAULT_N_CAP = 7
DEFAULT_STATE_CAP = 10 ** 6
POINTED, GENERAL = "pointed", "general"


class OracleCapExceeded(RuntimeError):
    def __init__(self, msg: str, estimate: int | None = None):
        super().__init__(msg if estimate is None else f"{msg} (size estimate <= {estimate})")
        self.estimate = estimate


def n_cap() -> int:
    return int(os.environ.get("PTFLIP_ORACLE_CAP", DEFAULT_N_CAP))


def state_cap() -> int:
    return int(os.environ.get("PTFLIP_ORACLE_STATES", DEFAULT_STATE_CAP))


def _check_n(ps: PointSet, cap: int | None) -> None:
    cap = n_cap() if cap is None else cap
    if ps.n > cap:
        segs = ps.n * (ps.n - 1) // 2
        raise OracleCapExceeded(f"n = {ps.n} exceeds the oracle cap {cap}",
                                math.comb(segs, 2 * ps.n - 3))


# -- unlabelled enumeration --------------------------------------------------

def exchange_neighbors(t: PseudoTriangulation) -> Iterable[PseudoTriangulation]:
    for e in t.internal_edges():
        try:
            f = exchange_target(t, e)
        except NotExchangeable:
            continue
        s = t.copy()
        s.remove_edge(e)
        s.add_edge(f)
        yield s


def _closure(start: PseudoTriangulation, step, cap: int) -> list[PseudoTriangulation]:
    seen = {start.key(): start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for s in step(t):
            k = s.key()
            if k not in seen:
                if len(seen) >= cap:
                    raise OracleCapExceeded(f"more than {cap} states", None)
                seen[k] = s
                queue.append(s)
    return sorted(seen.values(), key=lambda t: t.key())


def enumerate_pointed(ps: PointSet, cap: int | None = None,
                      max_states: int | None = None) -> list[PseudoTriangulation]:
    """All pointed pseudo-triangulations, by exchange-flip closure from the
    left-shelling."""
    _check_n(ps, cap)
    start, _ = build_left_shelling(ps)
    return _closure(start, exchange_neighbors, max_states or state_cap())


def _general_step(t: PseudoTriangulation):
    yield from exchange_neighbors(t)
    for e in insertion_candidates(t):
        s = t.copy()
        s.add_edge(e)
        yield s
    for e in deletion_candidates(t):
        s = t.copy()
        s.remove_edge(e)
        yield s


def enumerate_all(ps: PointSet, cap: int | None = None,
                  max_states: int | None = None) -> list[PseudoTriangulation]:
    """All pseudo-triangulations, by closure under all three flip kinds."""
    _check_n(ps, cap)
    start, _ = build_left_shelling(ps)
    return _closure(start, _general_step, max_states or state_cap())


def enumerate_by_subsets(ps: PointSet, pointed_only: bool = False,
                         max_n: int = 6) -> list[tuple]:
    """Independent enumeration: every superset of the hull edges that is a
    valid pseudo-triangulation.  Exponential; only for tiny sets."""
    if ps.n > max_n:
        raise OracleCapExceeded(f"subset enumeration limited to n <= {max_n}")
    hull = sorted(ps.hull_edges)
    others = [e for e in itertools.combinations(range(ps.n), 2) if e not in ps.hull_edges]
    out = []
    sizes = [2 * ps.n - 3 - ps.h] if pointed_only else range(len(others) + 1)
    for k in sizes:
        for extra in itertools.combinations(others, k):
            t = PseudoTriangulation(ps, hull + list(extra))
            rep = t.validate()
            if rep.ok and (not pointed_only or not rep.non_pointed):
                out.append(t.key())
    return sorted(out)


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


# -- labelled flip graphs ----------------------------------------------------

Node = tuple  # (sorted edges, labels in sorted-internal-edge order)


def encode(t: PseudoTriangulation) -> Node:
    ie = t.internal_edges()
    return tuple(sorted(t.edges)), tuple(t.labels.get(e) for e in ie)


def decode(ps: PointSet, node: Node) -> PseudoTriangulation:
    edges, labs = node
    t = PseudoTriangulation(ps, edges)
    for e, lab in zip(t.internal_edges(), labs):
        if lab is not None:
            t.set_label(e, lab)
    return t


def labelled_neighbors(t: PseudoTriangulation, mode: str) -> Iterable[PseudoTriangulation]:
    for e in t.internal_edges():
        try:
            f = exchange_target(t, e)
        except NotExchangeable:
            continue
        s = t.copy()
        lab = s.labels.pop(e)
        s.remove_edge(e)
        s.add_edge(f)
        s.labels[f] = lab
        yield s
    if mode != GENERAL:
        return
    for e in deletion_candidates(t):
        s = t.copy()
        s.take_label(e)
        s.remove_edge(e)
        yield s
    for e in insertion_candidates(t):
        for lab in sorted(t.free):
            s = t.copy()
            s.add_edge(e)
            s.set_label(e, lab)
            yield s


@dataclass
class FlipGraph:
    points: PointSet
    mode: str
    nodes: list[Node] = field(default_factory=list)
    index: dict[Node, int] = field(default_factory=dict)
    adj: list[list[int]] = field(default_factory=list)

    def __len__(self):
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def node_of(self, t: PseudoTriangulation) -> int:
        return self.index[encode(t)]

    def pt(self, i: int) -> PseudoTriangulation:
        return decode(self.points, self.nodes[i])

    def bfs(self, src: int) -> list[int]:
        dist = [-1] * len(self.nodes)
        dist[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def is_connected(self) -> bool:
        return not self.nodes or min(self.bfs(0)) >= 0

    def is_symmetric(self) -> bool:
        sets = [set(a) for a in self.adj]
        return all(u in sets[w] for u, a in enumerate(sets) for w in a)

    def stats(self, sources: Iterable[int] | None = None) -> dict:
        """Node and edge counts, diameter and distance histogram over BFS from
        ``sources`` (all nodes by default)."""
        srcs = range(len(self.nodes)) if sources is None else sources
        hist: Counter = Counter()
        diam = 0
        unreachable = 0
        for s in srcs:
            for d in self.bfs(s):
                if d < 0:
                    unreachable += 1
                else:
                    hist[d] += 1
                    diam = max(diam, d)
        return {"n": self.points.n, "h": self.points.h, "c": self.points.c,
                "mode": self.mode, "nodes": len(self.nodes), "edges": self.edge_count,
                "diameter": diam, "unreachable_pairs": unreachable,
                "histogram": {str(k): v for k, v in sorted(hist.items())}}


def labelled_flip_graph(ps: PointSet, mode: str = POINTED,
                        start: PseudoTriangulation | None = None,
                        max_states: int | None = None) -> FlipGraph:
    """Component of ``start`` (default: canonical labelling) in the labelled
    flip graph; pointed mode uses exchanging flips only, general mode adds
    insertions (any free label) and deletions."""
    if mode not in (POINTED, GENERAL):
        raise ValueError(f"unknown mode {mode!r}")
    _check_n(ps, None)
    cap = max_states or state_cap()
    g = FlipGraph(ps, mode)
    t0 = start.copy() if start is not None else canonical_labelling(ps)

    def add(node):
        if node not in g.index:
            if len(g.nodes) >= cap:
                raise OracleCapExceeded(f"labelled flip graph exceeds {cap} states")
            g.index[node] = len(g.nodes)
            g.nodes.append(node)
            g.adj.append([])
            return True
        return False

    add(encode(t0))
    q = deque([0])
    while q:
        u = q.popleft()
        t = decode(ps, g.nodes[u])
        nbrs = set()
        for s in labelled_neighbors(t, mode):
            node = encode(s)
            if add(node):
                q.append(g.index[node])
            nbrs.add(g.index[node])
        g.adj[u] = sorted(nbrs)
    return g


def expected_labelled_count(ps: PointSet, mode: str = POINTED) -> int:
    """Number of labelled states the whole flip graph must have: pointed
    pseudo-triangulations times label permutations, or, in general mode,
    every pseudo-triangulation with every injective labelling."""
    u = ps.label_universe
    if mode == POINTED:
        k = 2 * ps.n - 3 - ps.h
        return len(enumerate_pointed(ps)) * math.factorial(k)
    return sum(math.perm(u, len(t.internal_edges())) for t in enumerate_all(ps))


def flip_distance(g: FlipGraph, a, b) -> int | None:
    """Exact flip distance; ``None`` if unreachable.  ``a``/``b`` are node ids
    or pseudo-triangulations."""
    ia = a if isinstance(a, int) else g.node_of(a)
    ib = b if isinstance(b, int) else g.node_of(b)
    d = g.bfs(ia)[ib]
    return None if d < 0 else d


def all_nodes_property(ts: Iterable[PseudoTriangulation],
                       pred: Callable[[PseudoTriangulation], Hashable]) -> Counter:
    """Tally ``pred`` over pseudo-triangulations (exhaustive property checks)."""
    return Counter(pred(t) for t in ts)
