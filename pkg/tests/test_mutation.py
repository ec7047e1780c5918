"""Mutation of quivers with potential and of decorated representations."""

import random

import pytest

from .fixtures import d5_triangulation
from surfcat.linalg import zeros
from surfcat.mutation import (
    DecRep, RelationViolation, decorated_of, dec_isomorphic,
    mutate_qp, mutate_rep, quiver_matchings, relabel_dec,
    flip_compat_check,
)
from surfcat.qp import Biquiver, build_qp
from surfcat.strings import Rep, loop_token, make_context


def mkrep(q, dims, mats):
    """Representation over q with the given nonzero dims and matrices."""
    dd = {v: 0 for v in q.vertices}
    dd.update(dims)
    mm = {}
    for a, (s, t) in q.arrows.items():
        mm[a] = mats.get(a, zeros(dd[t], dd[s]))
    for v in q.special:
        lt = loop_token(v)
        mm[lt] = mats.get(lt, zeros(dd[v], dd[v]))
    return Rep(q, dd, mm)


def cycle_pairs(pot):
    out = set()
    for c in pot:
        for r in range(3):
            out.add((c[r], c[(r + 1) % 3]))
    return out


def local_quad():
    """Two triangles glued along the middle vertex i (no special vertex)."""
    arrows = {"al1": ("a", "i"), "al2": ("e", "i"),
              "be1": ("i", "d"), "be2": ("i", "b"),
              "ga1": ("d", "a"), "ga2": ("b", "e")}
    pot = [("al1", "be1", "ga1"), ("al2", "be2", "ga2")]
    return Biquiver(["a", "b", "i", "d", "e"], arrows, set(),
                    pot, cycle_pairs(pot))


def local_loop():
    """One triangle through a special vertex i (dashed loop at i)."""
    arrows = {"al": ("a", "i"), "be": ("i", "b"), "ga": ("b", "a")}
    pot = [("al", "be", "ga")]
    return Biquiver(["a", "b", "i"], arrows, {"i"}, pot, cycle_pairs(pot))


def mu_square_restores(q, dec, i, rng=None):
    d2 = mutate_rep(mutate_rep(dec, i, rng=rng), i, rng=rng)
    vmap = {v: v for v in q.vertices}
    return any(dec_isomorphic(relabel_dec(d2, q, vmap, m), dec)
               for m in quiver_matchings(d2.q, q, vmap))


# ----------------------------------------------------------------------
# quiver mutation

def test_mutate_qp_quad_shape():
    q = local_quad()
    q2 = mutate_qp(q, "i")
    # same-slot composites cancel against the gamma's; the cross ones stay
    assert sorted(q2.arrows) == ["[be1al2]", "[be2al1]",
                                 "al1*", "al2*", "be1*", "be2*"]
    assert q2.arrows["al1*"] == ("i", "a")
    assert q2.arrows["be1*"] == ("d", "i")
    assert q2.arrows["[be2al1]"] == ("a", "b")
    assert sorted(q2.potential) == [
        ("[be1al2]", "be1*", "al2*"), ("[be2al1]", "be2*", "al1*")]


def test_mutate_qp_loop_shape():
    q = local_loop()
    q2 = mutate_qp(q, "i")
    assert sorted(q2.arrows) == ["[beal]", "al*", "be*"]
    assert q2.arrows["[beal]"] == ("a", "b")
    assert q2.special == {"i"}
    assert q2.potential == [("[beal]", "be*", "al*")]


def test_mutate_qp_square_is_right_equivalent():
    for q in (local_quad(), local_loop()):
        q2 = mutate_qp(mutate_qp(q, "i"), "i")
        vmap = {v: v for v in q.vertices}
        assert any(True for _ in quiver_matchings(q2, q, vmap))


def test_mutate_qp_matches_flip_on_surface():
    tri = d5_triangulation()
    ctx = make_context(tri)
    from surfcat.mutation import _flip_once
    for i in ctx.q.vertices:
        q2m = mutate_qp(ctx.q, i)
        tri2, _gone, _born = _flip_once(tri, i)
        ctx2 = make_context(tri2)
        new = [v for v in ctx2.q.vertices if v not in ctx.q.vertices]
        vmap = {v: v for v in ctx.q.vertices}
        if new:
            vmap[i] = new[0]
        assert list(quiver_matchings(q2m, ctx2.q, vmap))


# ----------------------------------------------------------------------
# representation mutation, loop-free golden data

QUAD_ROWS = [
    ("one cross composite",
     {"a": 1, "b": 1, "i": 1}, {"al1": [[1]], "be2": [[1]]},
     {"a": 1, "b": 1}, {"[be2al1]": [[1]]}, {}),
    ("alpha only",
     {"a": 1, "i": 1}, {"al1": [[1]]}, {"a": 1}, {}, {}),
    ("two alphas",
     {"a": 1, "i": 1, "e": 1}, {"al1": [[1]], "al2": [[1]]},
     {"a": 1, "i": 1, "e": 1}, {"al1*": [[1]], "al2*": [[1]]}, {}),
    ("beta only",
     {"b": 1, "i": 1}, {"be2": [[1]]}, {"b": 1}, {}, {}),
    ("two betas",
     {"b": 1, "i": 1, "d": 1}, {"be1": [[1]], "be2": [[1]]},
     {"b": 1, "i": 1, "d": 1}, {"be1*": [[1]], "be2*": [[1]]}, {}),
    ("simple at i",
     {"i": 1}, {}, {}, {}, {"i": 1}),
]


@pytest.mark.parametrize("label,dims,mats,edims,emats,evd", QUAD_ROWS,
                         ids=[r[0] for r in QUAD_ROWS])
def test_mutate_rep_quad_golden(label, dims, mats, edims, emats, evd):
    q = local_quad()
    q2 = mutate_qp(q, "i")
    dec = DecRep(mkrep(q, dims, mats))
    out = mutate_rep(dec, "i")
    exp = DecRep(mkrep(q2, edims, emats), dict(evd))
    assert dec_isomorphic(out, exp), (out.rep.dims, out.vdims)
    assert mu_square_restores(q, dec, "i")


# ----------------------------------------------------------------------
# representation mutation, loop case golden data

LOOP_ROWS = [
    ("gamma iso",
     {"a": 1, "b": 1}, {"ga": [[1]]},
     {"a": 1, "b": 1, "i": 2},
     {"[beal]": [[0]], "be*": [[1], [0]], "al*": [[0, 1]],
      "ei": [[0, 0], [1, 1]]}, {}, {}),
    ("beta iso rank2",
     {"b": 2, "i": 2}, {"be": [[1, 0], [0, 1]], "ei": [[0, 0], [1, 1]]},
     {"b": 2, "i": 2},
     {"be*": [[1, 0], [0, 1]], "ei": [[0, 0], [1, 1]]}, {}, {}),
    ("simple at b",
     {"b": 1}, {},
     {"b": 1, "i": 2}, {"be*": [[1], [0]], "ei": [[0, 0], [1, 1]]}, {}, {}),
    ("beta iso eps0",
     {"b": 1, "i": 1}, {"be": [[1]], "ei": [[0]]},
     {"b": 1, "i": 1}, {"be*": [[1]], "ei": [[0]]}, {}, {}),
    ("beta iso eps1",
     {"b": 1, "i": 1}, {"be": [[1]], "ei": [[1]]},
     {"b": 1, "i": 1}, {"be*": [[1]], "ei": [[1]]}, {}, {}),
    ("simple at i eps0",
     {"i": 1}, {"ei": [[0]]}, {}, {}, {"i": 1}, {"i": [[1]]}),
    ("simple at i eps1",
     {"i": 1}, {"ei": [[1]]}, {}, {}, {"i": 1}, {"i": [[0]]}),
]


@pytest.mark.parametrize("label,dims,mats,edims,emats,evd,eveps", LOOP_ROWS,
                         ids=[r[0] for r in LOOP_ROWS])
def test_mutate_rep_loop_golden(label, dims, mats, edims, emats, evd, eveps):
    q = local_loop()
    q2 = mutate_qp(q, "i")
    dec = DecRep(mkrep(q, dims, mats))
    out = mutate_rep(dec, "i")
    exp = DecRep(mkrep(q2, edims, emats), dict(evd), dict(eveps))
    assert dec_isomorphic(out, exp), \
        (out.rep.dims, out.vdims, out.veps)
    assert mu_square_restores(q, dec, "i")


# ----------------------------------------------------------------------
# properties

def test_mutate_rep_rejects_relation_violation():
    q = local_quad()
    bad = mkrep(q, {"a": 1, "i": 1, "d": 1},
                {"al1": [[1]], "be1": [[1]]})  # be1 al1 != 0
    with pytest.raises(RelationViolation):
        mutate_rep(DecRep(bad), "i")


def test_mutate_rep_splitting_independence():
    # the construction picks splittings of subspace inclusions; different
    # random choices must give isomorphic results
    tri = d5_triangulation()
    ctx = make_context(tri)
    curves = ctx.curves(3)
    rngs = [random.Random(s) for s in (1, 2, 3)]
    for x in curves[:8]:
        dec = decorated_of(ctx, x)
        outs = [mutate_rep(dec, "2", rng=r) for r in rngs]
        for other in outs[1:]:
            assert dec_isomorphic(outs[0], other)


def test_mu_square_on_surface_curves():
    tri = d5_triangulation()
    ctx = make_context(tri)
    curves = ctx.curves(3)
    for i in ctx.q.vertices:
        for x in curves:
            assert mu_square_restores(ctx.q, decorated_of(ctx, x), i), (i, x)


def test_decorated_dump_format():
    tri = d5_triangulation()
    ctx = make_context(tri)
    for m in ctx.markers():
        v = ctx.pi(m.arc)
        dec = decorated_of(ctx, m)
        decor = [l for l in dec.dump().strip().splitlines()
                 if l.startswith("decor")]
        if v in ctx.q.special:
            assert decor == ["decor %s 1 eps=%d" % (v, 1 - m.kappa)]
        else:
            assert decor == ["decor %s 1" % v]


def test_flip_compat_d5_short():
    tri = d5_triangulation()
    ctx = make_context(tri)
    curves = ctx.curves(3)
    for i in ctx.q.vertices:
        rep = flip_compat_check(ctx, i, curves)
        assert rep.mismatches == [], rep.render()
        assert rep.checked == len(curves)
