"""
Int-pairs between admissible words and the Hom/Ext dimension formulas.

An int-pair is a matched-subword witness between two words: the subwords
strictly between the chosen index pairs agree (directly or up to inverse)
and the flanking letters satisfy strict order inequalities, with flanking
letters beyond the ends of a word satisfying them automatically.  The Hom
dimension between two string modules is the number of int-pairs weighted
by agreement of the eigenvalues at the punctured letters matched by the
pair; Ext^1 dimensions in the cluster category follow by rotating the
second argument.
"""

from collections import namedtuple

from .words import inv, WordError
from .strings import (
    tagged_rotation, make_context, UnsupportedCurve, TaggedCurve,
)
from .surface import UnsupportedGenus
from .refine import (
    refine_marked_points, transport_word, word_endpoints, corridor_of_word,
)


class AlgebraMismatch(ValueError):
    pass


class Unsupported(ValueError):
    pass


IntPair = namedtuple("IntPair", "i j h l kind punctured_count")


def _letter_lt(sy, a, b):
    """Strict inequality a < b for letters; False when incomparable."""
    c = sy.compare_letters(a, b)
    return c == -1


def _flank_ok(sy, a, b):
    """
    One strict flanking inequality a < b of an int-pair candidate; either
    letter may be None when its index runs off the end of its word, in
    which case the inequality holds automatically.
    """
    if a is None or b is None:
        return True
    return _letter_lt(sy, a, b)


def _subword_or_none(w, i, j):
    """
    The subword strictly between i and j, or None when trivial with no
    algebra vertex (a trivial subword beyond an auxiliary end letter is
    not a word over the quiver and supports no int-pair).
    """
    try:
        return w.subword(i, j)
    except WordError:
        return None


def int_pairs(m, r):
    """All int-pairs from the word m to the word r."""
    if m.system is not r.system:
        raise AlgebraMismatch("words over different letter systems")
    sy = m.system
    mm, rr = len(m.letters), len(r.letters)
    out = []
    for i in range(0, mm + 1):
        wi_inv = inv(m.letters[i - 1]) if i >= 1 else None
        for j in range(i + 1, mm + 2):
            wj = m.letters[j - 1] if j <= mm else None
            sub = _subword_or_none(m, i, j)
            if sub is None:
                continue
            for h in range(0, rr + 1):
                mu_h_inv = inv(r.letters[h - 1]) if h >= 1 else None
                for l in range(h + 1, rr + 2):
                    mu_l = r.letters[l - 1] if l <= rr else None
                    rsub = _subword_or_none(r, h, l)
                    if rsub is None:
                        continue
                    kind = None
                    if (sub == rsub
                            and _flank_ok(sy, wi_inv, mu_h_inv)
                            and _flank_ok(sy, wj, mu_l)):
                        kind = "i"
                    elif (sub == rsub.inverse()
                            and _flank_ok(sy, wi_inv, mu_l)
                            and _flank_ok(sy, wj, mu_h_inv)):
                        kind = "ii"
                    if kind is None:
                        continue
                    count = sum(1 for p in m.punctured_positions()
                                if i < p < j)
                    out.append(IntPair(i, j, h, l, kind, count))
    return out


def _matched_end(pair, p, rlen):
    """
    For a punctured letter of m at position p inside the matched subword,
    the end (0 or 1) of r holding the corresponding punctured letter.
    """
    if pair.kind == "i":
        q = pair.h + (p - pair.i)
    else:
        q = pair.l - (p - pair.i)
    if q == 1:
        return 0
    if q == rlen:
        return 1
    raise AssertionError("matched punctured letter not at an end of r")


def pair_contribution(pair, m, vals1, r, vals2):
    """
    dim Hom over the subalgebra attached to an int-pair: a product of
    Kronecker deltas of the eigenvalues at the matched punctured letters.
    """
    rlen = len(r.letters)
    for p in m.punctured_positions():
        if not (pair.i < p < pair.j):
            continue
        end_m = 0 if p == 1 else 1
        end_r = _matched_end(pair, p, rlen)
        if vals1.get(end_m, 0) != vals2.get(end_r, 0):
            return 0
    return 1


def hom_dim(m, vals1, r, vals2):
    """
    dim Hom between the string modules of (m, vals1) and (r, vals2),
    computed by the int-pair formula.  vals maps end (0 for the first
    letter, 1 for the last) to the eigenvalue at a punctured end.
    """
    return sum(pair_contribution(J, m, vals1, r, vals2)
               for J in int_pairs(m, r))


def hom_dim_curves(ctx, c1, c2):
    """Hom dimension between the modules of two tagged curves (markers
    contribute the zero module)."""
    if c1.kind != "word" or c2.kind != "word":
        return 0
    return hom_dim(c1.word, _vals(c1), c2.word, _vals(c2))


def _vals(curve):
    w = curve.word
    out = {}
    for p in w.punctured_positions():
        end = 0 if p == 1 else 1
        out[end] = curve.tags[end]
    return out


def ext1_dim(ctx, c1, c2):
    """
    dim Ext^1 between the string objects of two tagged curves, as the
    symmetrized Hom into the rotation:
        ext1(x, y) = hom(M_x, M_{rho(y)}) + hom(M_y, M_{rho(x)}),
    where the module of a marker is zero.  When an argument is a marker
    the value is cross-checked by shifting both arguments by the rotation
    (which preserves Ext^1 dimensions) until neither is a marker.
    """
    total = _ext1_once(ctx, c1, c2)
    if c1.kind == "arc" or c2.kind == "arc":
        s1, s2 = c1, c2
        for _ in range(8):
            s1 = tagged_rotation(ctx, s1)
            s2 = tagged_rotation(ctx, s2)
            if s1.kind == "word" and s2.kind == "word":
                shifted = _ext1_once(ctx, s1, s2)
                if shifted != total:
                    raise AssertionError(
                        "marker zero-module convention disagrees with the "
                        "rotation cross-check: %d vs %d at (%s, %s)"
                        % (total, shifted, c1, c2))
                break
    return total


IntersectionReport = namedtuple(
    "IntersectionReport", "interior tagged_t1 tagged_t2 total")


def render_report(rep):
    return "interior=%d tagged=%d+%d total=%d" % (
        rep.interior, rep.tagged_t1, rep.tagged_t2, rep.total)


def intersection_number(ctx, c1, c2):
    """
    The tagged intersection number of two tagged curves, split into
    interior crossings and the two kinds of tagged end contributions.

    Computed over a refinement of the triangulation around the marked
    endpoints, where interior crossings, single-puncture end matches, and
    twin end matches correspond to the int-pairs with 0, 1, 2 punctured
    letters between each transported curve and the rotation of the other.
    """
    if ctx.tri.surface.genus != 0:
        raise UnsupportedGenus("intersection numbers need genus 0")
    a, b = c1, c2
    for _ in range(16):
        if a.kind == "word" and b.kind == "word":
            break
        a, b = tagged_rotation(ctx, a), tagged_rotation(ctx, b)
    else:
        # tiny surfaces can lock the rotation parity of an (arc, word)
        # pair; count such pairs directly
        return _int_direct(ctx, c1, c2)
    marked = set()
    for w in (a.word, b.word):
        marked.update(p for p in word_endpoints(ctx, w)
                      if not p.startswith("P"))
    if marked:
        tri2, info = refine_marked_points(ctx.tri, sorted(marked))
        ctx2 = make_context(tri2)
        a = TaggedCurve.from_word(transport_word(ctx, ctx2, info, a.word),
                                  a.tags)
        b = TaggedCurve.from_word(transport_word(ctx, ctx2, info, b.word),
                                  b.tags)
    else:
        ctx2 = ctx
    counts = [0, 0, 0]
    for x, y in ((a, b), (b, a)):
        ry = tagged_rotation(ctx2, y)
        if ry.kind != "word":
            raise UnsupportedCurve("rotation landed in the triangulation")
        for J in int_pairs(x.word, ry.word):
            counts[J.punctured_count] += pair_contribution(
                J, x.word, _vals(x), ry.word, _vals(ry))
    return IntersectionReport(counts[0], counts[1], counts[2], sum(counts))


def _int_direct(ctx, c1, c2):
    """
    Intersection number when at least one curve is an arc of the
    triangulation and no simultaneous rotation turns both into words.
    Arcs of one tagged triangulation never cross each other.  Against a
    word curve, the underlying curve of a tagged arc at a special vertex
    is the folded side, whose interior crossings are the puncture-loop
    letters of the word; tagged contributions come from word ends at the
    arc's puncture carrying the opposite tag.  A plain arc is crossed
    once per string position at its quiver vertex.
    """
    from .strings import x_map

    if c1.kind == "arc" and c2.kind == "arc":
        return IntersectionReport(0, 0, 0, 0)
    if c1.kind != "arc" and c2.kind != "arc":
        raise UnsupportedCurve(
            "no rotation of (%s, %s) avoids the triangulation" % (c1, c2))
    x, y = (c1, c2) if c1.kind == "arc" else (c2, c1)
    v = ctx.pi(x.arc)
    if v not in ctx.q.special:
        interior = x_map(ctx, y).dims[v]
        return IntersectionReport(interior, 0, 0, interior)
    interior = sum(1 for l in y.word.letters
                   if l.kind == "ep" and l.base == v)
    e1, e2 = ctx.tri.arc_endpoints(x.arc)
    punct = e1 if e1.startswith("P") else e2
    tagged = 0
    ends = word_endpoints(ctx, y.word)
    for j in (0, 1):
        if ends[j] == punct and y.tags[j] != x.tags[0]:
            tagged += 1
    return IntersectionReport(interior, tagged, 0, interior + tagged)


def _ext1_once(ctx, c1, c2):
    total = 0
    for a, b in ((c1, c2), (c2, c1)):
        if a.kind != "word":
            continue
        rb = tagged_rotation(ctx, b)
        if rb.kind != "word":
            continue
        total += hom_dim(a.word, _vals(a), rb.word, _vals(rb))
    return total


# ---------------------------------------------------------------------------
# independent crossing oracle
#
# Counts minimal transverse crossings of two curves directly from their
# corridor diagrams, without int-pairs.  The strands crossing each edge
# are totally ordered by walking their continuations until they diverge
# (a curve in minimal position keeps parallel strands parallel for as
# long as their corridors agree); crossings are then exactly the strict
# interleavings of the resulting chords inside each triangle.


def _strand(ctx, word):
    slots = corridor_of_word(ctx, word)
    t0, i0 = slots[0]
    tn, in_ = ctx.tri.opposite(slots[-1])
    return {
        "slots": slots,
        "start": ("c", t0, (i0 + 1) % 3),
        "end": ("c", tn, (in_ + 1) % 3),
    }


def _side_item(tri, strands, occ, slot):
    """The boundary item next to crossing `occ` on the `slot` side.

    Returns (item, continuation) where item is ("c", t, i) or
    ("s", (t, i)) inside slot's triangle, and continuation is the
    neighbouring crossing of the same strand (None at an endpoint).
    """
    sid, k = occ
    st = strands[sid]
    exit_slot = st["slots"][k - 1]
    if slot == exit_slot:
        # chord towards the previous crossing
        if k == 1:
            return st["start"], None
        prev = st["slots"][k - 2]
        return ("s", tri.opposite(prev)), (sid, k - 1)
    # chord towards the next crossing
    if k == len(st["slots"]):
        return st["end"], None
    return ("s", st["slots"][k]), (sid, k + 1)


def _cmp_forward(tri, strands, slot, p, q):
    """Order of crossings p, q along `slot`, judged from its triangle.

    Returns -1/0/1 for p before/parallel-to/after q in the direction
    from corner (t, i-1) to corner (t, i); 0 means the two strands stay
    parallel all the way to a common endpoint corner on this side.
    """
    if p == q:
        return 0
    t, i = slot
    item_p, next_p = _side_item(tri, strands, p, slot)
    item_q, next_q = _side_item(tri, strands, q, slot)
    if item_p == item_q:
        if item_p[0] == "c":
            return 0
        step = item_p[1]
        return _cmp_forward(tri, strands, tri.opposite(step), next_p, next_q)
    # rank boundary items by the walk leaving corner (t, i); a chord
    # attached further along that walk sits closer to corner (t, i-1)
    walk = [("c", t, i), ("s", (t, (i + 1) % 3)), ("c", t, (i + 1) % 3),
            ("s", (t, (i + 2) % 3)), ("c", t, (i + 2) % 3)]
    return -1 if walk.index(item_p) > walk.index(item_q) else 1


def _edge_ranks(tri, strands):
    """Totally order the crossings of every edge; tied = parallel."""
    import functools
    by_edge = {}
    for sid, st in strands.items():
        for k, s in enumerate(st["slots"], start=1):
            by_edge.setdefault(tri.sides[s[0]][s[1]], []).append((sid, k))
    ranks = {}
    for edge, occs in by_edge.items():
        ref = min(occs, key=lambda o: strands[o[0]]["slots"][o[1] - 1])
        ref = strands[ref[0]]["slots"][ref[1] - 1]

        def cmp(p, q, ref=ref):
            r = _cmp_forward(tri, strands, ref, p, q)
            if r == 0:
                r = -_cmp_forward(tri, strands, tri.opposite(ref), p, q)
            return r

        occs.sort(key=functools.cmp_to_key(cmp))
        rank = 0
        for n, occ in enumerate(occs):
            if n and cmp(occs[n - 1], occ) != 0:
                rank += 1
            ranks[occ] = (rank, ref)
    return ranks


def _chord_key(tri, strands, ranks, occ_or_corner, slot):
    """Circular position of a chord endpoint around its triangle."""
    if slot is None:
        _, t, i = occ_or_corner
        return (2 * i, 0)
    t, i = slot
    rank, ref = ranks[occ_or_corner]
    if slot != ref:
        rank = -rank
    return ((2 * i - 1) % 6, rank)


def _triangle_chords(ctx, strands, ranks, sid):
    tri = ctx.tri
    st = strands[sid]
    slots = st["slots"]
    out = []
    for k in range(len(slots) + 1):
        if k == 0:
            tt = slots[0][0]
            a = _chord_key(tri, strands, ranks, st["start"], None)
        else:
            s = tri.opposite(slots[k - 1])
            tt = s[0]
            a = _chord_key(tri, strands, ranks, (sid, k), s)
        if k == len(slots):
            b = _chord_key(tri, strands, ranks, st["end"], None)
        else:
            b = _chord_key(tri, strands, ranks, (sid, k + 1), slots[k])
        out.append((tt, a, b))
    return out


def _chords_cross(a, b, c, d):
    # strict interleaving of chord {a,b} and chord {c,d} around a circle;
    # any shared position (common corner or parallel tie) never crosses
    pts = {a, b, c, d}
    if len(pts) < 4:
        return False
    order = sorted(pts)
    labels = ["x" if p in (a, b) else "y" for p in order]
    return labels in (["x", "y", "x", "y"], ["y", "x", "y", "x"])


def crossing_oracle(ctx, c1, c2):
    """Minimal crossing count of two curves on a genus-0 surface.

    Independent of the Hom/Ext machinery: works on the reduced corridor
    diagrams directly.  Supports at most two punctures and refuses pairs
    sharing a puncture endpoint, where tagged conventions would matter.
    """
    sur = ctx.tri.surface
    if sur.genus != 0 or sur.punctures > 2:
        raise Unsupported("crossing oracle covers genus-0, <= 2 punctures")
    ends = []
    for c in (c1, c2):
        if c.kind == "arc":
            ends.append(set(ctx.tri.arc_endpoints(c.arc)))
        else:
            ends.append(set(word_endpoints(ctx, c.word)))
    if any(e.startswith("P") for e in ends[0] & ends[1]):
        raise Unsupported("curves share a puncture endpoint")
    if c1.kind == "arc" and c2.kind == "arc":
        return 0
    if c1.kind == "arc" or c2.kind == "arc":
        arc = c1.arc if c1.kind == "arc" else c2.arc
        word = c2.word if c1.kind == "arc" else c1.word
        slots = corridor_of_word(ctx, word)
        return sum(1 for t, i in slots if ctx.tri.sides[t][i] == arc)
    strands = {0: _strand(ctx, c1.word), 1: _strand(ctx, c2.word)}
    ranks = _edge_ranks(ctx.tri, strands)
    chords0 = _triangle_chords(ctx, strands, ranks, 0)
    chords1 = _triangle_chords(ctx, strands, ranks, 1)
    total = 0
    for t0, a, b in chords0:
        for t1, c, d in chords1:
            if t0 == t1 and _chords_cross(a, b, c, d):
                total += 1
    return total
