import pytest

from surfcat.qp import (
    build_qp, check_skewed_gentle, split_qp, Biquiver, NotAdmissible,
    canonical_cycle,
)
from surfcat.surface import MarkedSurface, build_admissible

from .fixtures import d5_triangulation, polygon, hexagon


def test_d5_quiver():
    q = build_qp(d5_triangulation())
    assert q.vertices == ["1", "2", "3", "4"]
    assert q.arrows == {
        "a": ("1", "2"), "b": ("2", "3"), "c": ("3", "1"), "d": ("3", "4")}
    assert q.special == {"1", "4"}
    assert q.Z == {("a", "b"), ("b", "c"), ("c", "a")}
    assert [canonical_cycle(c) for c in q.potential] == [("a", "b", "c")]


def test_d5_is_skewed_gentle():
    q = build_qp(d5_triangulation())
    assert check_skewed_gentle(q) == "ok"


def test_square_single_vertex():
    q = build_qp(polygon(4))
    assert len(q.vertices) == 1
    assert q.arrows == {}
    assert q.potential == []
    assert check_skewed_gentle(q) == "ok"


def test_hexagon_fan_quiver():
    q = build_qp(hexagon())
    # fan triangulation: path quiver of type A3, no interior triangle
    assert len(q.vertices) == 3
    assert len(q.arrows) == 2
    assert q.potential == []
    assert check_skewed_gentle(q) == "ok"


def test_not_admissible_rejected():
    tri = d5_triangulation()
    tri2, _ = tri.flip("1")
    with pytest.raises(NotAdmissible):
        build_qp(tri2)


def test_two_arrows_into_special_violates():
    q = Biquiver(["1", "2", "3"],
                 {"a": ("2", "1"), "b": ("3", "1")},
                 {"1"}, [], set())
    assert check_skewed_gentle(q).startswith("violation")


def test_incomplete_Z_violates():
    q = build_qp(d5_triangulation())
    assert check_skewed_gentle(q, Z={("a", "b")}).startswith("violation")


def test_split_d5():
    q = build_qp(d5_triangulation())
    sq = split_qp(q)
    assert sorted(sq.vertices) == ["1", "1'", "2", "3", "4", "4'"]
    assert len(sq.vertices) == d5_triangulation().surface.rank
    # a: 1->2 has two lifts, b: 2->3 one, c: 3->1 two, d: 3->4 two
    assert len(sq.arrows) == 7
    # potential abc lifts once per variant pair of (a, c) endpoints at 1
    assert len(sq.potential) == 2


def test_split_without_specials_is_identity():
    q = build_qp(hexagon())
    sq = split_qp(q)
    assert sq.vertices == q.vertices
    assert sq.arrows == q.arrows


def test_split_vertex_count_matches_rank():
    for surf in [MarkedSurface(0, [5], 0), MarkedSurface(0, [3], 2),
                 MarkedSurface(0, [4], 1), MarkedSurface(0, [2, 2], 1)]:
        tri = build_admissible(surf)
        sq = split_qp(build_qp(tri))
        assert len(sq.vertices) == surf.rank


def test_dump_format():
    q = build_qp(d5_triangulation())
    text = q.dump()
    assert "vertex 1 special" in text
    assert "arrow a 1 2" in text
    assert "loop 1" in text
    assert "cycle a b c" in text
    assert "rel ba" in text
    assert q.dot().startswith("digraph")
