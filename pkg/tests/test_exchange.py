"""Exchange graph enumeration and the independent census audit."""

import pytest

from .fixtures import pentagon, hexagon, once_punctured
from surfcat.exchange import (
    explore, independent_census, mutate_node, seed_node, _Pool,
    BoundExceeded, ClusterNode,
)
from surfcat.strings import make_context


def test_pentagon_cycle():
    g = explore(pentagon())
    assert len(g.nodes) == 5
    assert len(g.edges) == 5
    assert g.complete
    assert set(g.neighbor_counts().values()) == {2}


def test_hexagon_count():
    g = explore(hexagon())
    assert len(g.nodes) == 14
    assert set(g.neighbor_counts().values()) == {3}


def test_once_punctured_digon_square():
    g = explore(once_punctured(2))
    assert len(g.nodes) == 4
    assert len(g.edges) == 4
    assert set(g.neighbor_counts().values()) == {2}


def test_once_punctured_triangle_regular():
    g = explore(once_punctured(3))
    assert len(g.nodes) == 14
    assert set(g.neighbor_counts().values()) == {3}


def test_mutation_is_involutive():
    ctx = make_context(pentagon())
    pool = _Pool(ctx)
    node = seed_node(ctx)
    for k in range(len(node.curves)):
        other = mutate_node(node, k, pool)
        assert other != node
        back_pos = [j for j, c in enumerate(other.curves)
                    if c not in node.curves]
        assert len(back_pos) == 1
        assert mutate_node(other, back_pos[0], pool) == node


def test_explored_nodes_validate_geometrically():
    for tri in (pentagon(), once_punctured(2)):
        g = explore(tri)
        for node in g.nodes.values():
            node.validate()


@pytest.mark.parametrize("make,label", [
    (pentagon, "pentagon"),
    (lambda: once_punctured(2), "digon"),
    (lambda: once_punctured(3), "triangle"),
])
def test_census_equals_explore(make, label):
    tri = make()
    g = explore(tri)
    census = independent_census(tri, 8)
    assert {n.key() for n in census} == set(g.nodes), label


def test_bound_truncates_and_flags():
    g = explore(hexagon(), bound=4)
    assert not g.complete
    assert len(g.nodes) == 4
    with pytest.raises(BoundExceeded):
        explore(hexagon(), bound=4, strict=True)


def test_dot_and_text_deterministic():
    g1 = explore(pentagon())
    g2 = explore(pentagon())
    assert g1.to_dot() == g2.to_dot()
    assert g1.to_text() == g2.to_text()
    dot = g1.to_dot(labels="full")
    assert dot.startswith("graph exchange {")
    assert dot.count("--") == 5
    txt = g1.to_text()
    assert txt.splitlines()[0] == "nodes=5 edges=5 complete=yes"
