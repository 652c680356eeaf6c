"""Seeded point-set generators and random labelled pseudo-triangulations."""
from __future__ import annotations

import math
import random

from .flips import (NotExchangeable, deletion_candidates, deletion_flip, exchanging_flip,
                    insertion_candidates, insertion_flip)
from .geometry import GeometryError, PointSet
from .triangulation import PseudoTriangulation, canonical_labelling

MODES = ("random", "convex", "grid-jittered")


def _try(pts) -> PointSet | None:
    try:
        return PointSet(pts)
    except GeometryError:
        return None


def random_points(n: int, rng: random.Random, box: int = 100) -> PointSet:
    """Uniform integer points; degenerate draws are resampled."""
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(0, box), rng.randint(0, box)))
        ps = _try(sorted(pts))
        if ps is not None:
            return ps


def convex_points(n: int, rng: random.Random, radius: int = 10_000) -> PointSet:
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        pts = {(round(radius * math.cos(a)), round(radius * math.sin(a))) for a in angles}
        if len(pts) == n:
            ps = _try(sorted(pts))
            if ps is not None and ps.h == n:
                return ps


def grid_jittered_points(n: int, rng: random.Random, spacing: int = 20,
                         jitter: int = 6) -> PointSet:
    """Points near a square grid; coordinates stay below ``spacing * (side + 1)``."""
    side = math.ceil(math.sqrt(n))
    while True:
        cells = rng.sample(range(side * side), n)
        pts = [((c % side) * spacing + rng.randint(-jitter, jitter) + jitter,
                (c // side) * spacing + rng.randint(-jitter, jitter) + jitter) for c in cells]
        ps = _try(sorted(set(pts))) if len(set(pts)) == n else None
        if ps is not None:
            return ps


def generate(n: int, seed: int, mode: str = "random") -> PointSet:
    if n < 3:
        raise GeometryError("need at least 3 points")
    rng = random.Random(f"{mode}:{n}:{seed}")
    if mode == "random":
        return random_points(n, rng)
    if mode == "convex":
        return convex_points(n, rng)
    if mode == "grid-jittered":
        return grid_jittered_points(n, rng)
    raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")


def random_pointed(ps: PointSet, rng: random.Random, steps: int = 60,
                   label_set=None) -> PseudoTriangulation:
    """Random walk of exchanging flips from a randomly relabelled
    left-shelling."""
    t = canonical_labelling(ps, label_set)
    labs = list(t.labels.values())
    rng.shuffle(labs)
    t.labels = dict(zip(list(t.labels), labs))
    for _ in range(steps):
        es = t.internal_edges()
        if not es:
            break
        try:
            exchanging_flip(t, rng.choice(es))
        except NotExchangeable:
            pass
    return t


def random_general(ps: PointSet, rng: random.Random, steps: int = 60,
                   inserts: int = 3) -> PseudoTriangulation:
    """Random pointed pseudo-triangulation with labels drawn from the whole
    universe, then a few random insertions (often leaving it non-pointed)."""
    k = 2 * ps.n - 3 - ps.h
    labels = rng.sample(range(1, ps.label_universe + 1), k)
    t = random_pointed(ps, rng, steps, labels)
    for _ in range(rng.randint(0, inserts)):
        c = insertion_candidates(t)
        if not c or not t.free:
            break
        insertion_flip(t, rng.choice(c), rng.choice(sorted(t.free)))
    if rng.random() < 0.2:
        for e in deletion_candidates(t)[:1]:
            deletion_flip(t, e)
    return t
