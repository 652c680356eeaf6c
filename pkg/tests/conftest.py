import random

import pytest

from ptflip.generate import generate, random_general, random_pointed
from ptflip.geometry import PointSet
from ptflip.triangulation import PseudoTriangulation

SET_A = [(0, 0), (6, 0), (6, 6), (0, 6), (2, 1)]

# two fans around one interior point (vertex 4): shared index
SHARED9 = [(0, 0), (707, 293), (1000, 1000), (707, 1707), (325, 1785), (0, 2000),
           (-707, 1707), (-1000, 1000), (-707, 293)]

# two fans indexed by two different interior points (vertices 4 and 5)
DISTINCT9 = [(0, 0), (707, 293), (988, 1156), (454, 1891), (125, 1820), (-125, 1820),
             (-454, 1891), (-988, 1156), (-707, 293)]

# left-shelling whose first two bottom edges bound a pentagon with only four
# bitangents unless the top edge is flipped first
FOUR_BITANGENT = [(4, 15), (6, 8), (9, 13), (13, 20), (16, 12)]

# non-pointed pseudo-triangulation in which no single edge can be deleted
MINIMAL_NON_POINTED = (
    [(4, 1), (8, 20), (14, 8), (16, 12), (30, 11), (33, 34), (34, 0), (36, 5)],
    [(0, 1), (0, 3), (0, 4), (0, 6), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5),
     (4, 6), (4, 7), (5, 7), (6, 7)],
)


@pytest.fixture
def set_a():
    return PointSet(SET_A)


@pytest.fixture
def minimal_non_pointed():
    pts, edges = MINIMAL_NON_POINTED
    return PseudoTriangulation(PointSet(pts), edges)


def pointed_pairs(count, lo, hi, seed, interior=False):
    """Deterministic random pairs of labelled pointed pseudo-triangulations."""
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        n = rng.randint(lo, hi)
        ps = generate(n, seed * 1000 + i)
        i += 1
        if interior and ps.h == ps.n:
            continue
        out.append((random_pointed(ps, rng), random_pointed(ps, rng)))
    return out


def general_pairs(count, lo, hi, seed):
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        n = rng.randint(lo, hi)
        ps = generate(n, seed * 1000 + i)
        i += 1
        if ps.h == ps.n:
            continue
        out.append((random_general(ps, rng), random_general(ps, rng)))
    return out


def small_point_sets(ns, per_n, seed):
    out = []
    for n in ns:
        for i in range(per_n):
            out.append(generate(n, seed + 97 * i + n))
    return out


# criterion number -> (status, title, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {title} ({detail})")
