import pytest

from ptflip.geometry import PointSet
from ptflip.oracle import enumerate_pointed
from ptflip.polygon import (AlreadyFive, FlipTopFirst, PolygonError, PseudoPolygon, bitangents,
                            face_merge, face_right_of_bottom, five_bitangent_certificates,
                            geodesic, vertex_bitangents, wedge_flip_predicate)
from ptflip.flips import exchange_target, exchanging_flip
from ptflip.generate import generate
from ptflip.triangulation import (PseudoTriangulation, build_left_shelling, canonical_labelling,
                                  left_shelling_edges)

from conftest import FOUR_BITANGENT

SQUARE = PointSet([(0, 0), (4, 0), (4, 4), (0, 4)])


def test_convex_quadrilateral():
    t = PseudoTriangulation(SQUARE, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    x = face_merge(t, (0, 2))
    assert x.k == 4
    assert bitangents(x) == {(0, 2), (1, 3)}
    assert geodesic(x, 0, 2) == [0, 2]


def test_hull_edge_cannot_merge():
    t = PseudoTriangulation(SQUARE, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    with pytest.raises(PolygonError):
        face_merge(t, (0, 1))


def test_bottom_edge_of_set_a(set_a):
    t, _ = build_left_shelling(set_a)
    x = face_merge(t, (0, 4))
    assert x.k == 4 and x.walk == (4, 2, 0, 1, 2)    # antenna 2-4
    assert bitangents(x) == {(0, 4), (1, 4)}


def test_two_consecutive_bottoms_make_pentagon():
    ps = generate(8, 4)
    t, _ = build_left_shelling(ps)
    o = ps.order
    assert face_merge(t, (min(o[0], o[2]), max(o[0], o[2])),
                      (min(o[0], o[3]), max(o[0], o[3]))).k == 5


def test_geodesic_around_reflex_chain(set_a):
    t, _ = build_left_shelling(set_a)
    x = face_merge(t, (0, 4))
    assert geodesic(x, 1, 4) == [1, 4]
    tri = PseudoPolygon(set_a.coords, tuple(t.face_walk(0, 4)))
    # corners of a pseudo-triangle are joined along its chains
    path = geodesic(tri, 0, 2)
    assert all(tuple(sorted(p)) in tri.walk_edges for p in zip(path, path[1:]))


def test_quadrilateral_geodesic_is_bitangent():
    for seed in range(3):
        ps = generate(7, seed)
        for t in enumerate_pointed(ps)[:15]:
            for e in t.internal_edges():
                x = face_merge(t, e)
                bt = bitangents(x)
                f = exchange_target(t, e)
                for b in (e, f):
                    path = geodesic(x, *b)
                    interior = [s for s in zip(path, path[1:])
                                if tuple(sorted(s)) not in x.walk_edges]
                    assert len(interior) <= 1
                assert bt == {e, f}


def test_vertex_bitangents_degree_two(set_a):
    t, _ = build_left_shelling(set_a)
    x = face_merge(t, (0, 4), (2, 4))
    assert x.k == 3 and 4 not in x.walk
    assert vertex_bitangents(x, 4) == {(0, 4), (2, 4), (1, 4)}


def test_wedge_predicate_sweep_step():
    checked = 0
    for seed in range(30):
        checked += _wedge_hits(generate(9, seed))
    assert checked > 50


def _wedge_hits(ps):
    t, sh = build_left_shelling(ps)
    checked = 0
    for k in range(ps.n - 1, 1, -1):
        v = ps.order[k]
        if ps.on_hull(v) or t.degree(v) != 2:
            continue
        top = sh.top[k]
        face = t.face_walk(v, ps.v0)      # face right of the bottom edge
        for pos in t.corner_positions(face):
            try:
                ok = wedge_flip_predicate(t, face, pos, top)
            except PolygonError:
                continue
            if ok:
                assert face[pos] in exchange_target(t, top)
                checked += 1
    return checked


def test_wedge_predicate_true_and_false():
    ps = PointSet([(0, 0), (10, -1), (10, 1), (20, 10)])
    t = PseudoTriangulation(ps, [(0, 1), (1, 3), (0, 3), (0, 2), (1, 2)])
    tri = next(f for f in t.faces() if sorted(f) == [0, 1, 2])
    # the thin wedge at 0 misses vertex 3 of the face behind 1-2
    assert wedge_flip_predicate(t, tri, tri.index(0), (1, 2)) is False
    sq = PointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
    t = PseudoTriangulation(sq, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)])
    face = next(f for f in t.faces() if sorted(f) == [1, 2, 3])
    assert wedge_flip_predicate(t, face, face.index(2), (1, 3)) is True
    with pytest.raises(PolygonError):
        wedge_flip_predicate(t, face, face.index(2), (1, 2))


def test_certificates_convex_fan_are_already_five():
    ps = generate(8, 1, "convex")
    t = canonical_labelling(ps)
    for r in range(2, ps.n - 2):
        c = five_bitangent_certificates(t, r)
        assert isinstance(c, AlreadyFive) and c.bitangent_count == 5


def test_certificate_flip_top_first_and_negative_control():
    ps = PointSet(FOUR_BITANGENT)
    t = canonical_labelling(ps)
    o = ps.order
    assert len(face_right_of_bottom(t, 3)) > 3
    a, b = (min(o[0], o[2]), max(o[0], o[2])), (min(o[0], o[3]), max(o[0], o[3]))
    raw = face_merge(t, a, b)
    assert raw.k == 5 and len(bitangents(raw)) == 4
    c = five_bitangent_certificates(t, 2)
    assert isinstance(c, FlipTopFirst) and c.bitangent_count == 5
    assert c.top_edge == left_shelling_edges(ps)[1].top[3]
    s = t.copy()
    exchanging_flip(s, c.top_edge)
    assert len(bitangents(face_merge(s, a, b))) == 5


def test_certificate_rejects_bad_ranks(set_a):
    t = canonical_labelling(set_a)
    with pytest.raises(PolygonError):
        five_bitangent_certificates(t, 3)


def test_polygon_json(set_a):
    t, _ = build_left_shelling(set_a)
    x = face_merge(t, (0, 4))
    doc = x.to_json()
    assert doc["walk"] == [4, 2, 0, 1, 2]
