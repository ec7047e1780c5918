"""
Boundary refinement and curve transport.

To count intersections of curves with endpoints at marked points, the
triangulation is refined: around every such endpoint P four new marked
points are inserted on the boundary (two on each side) and P is enclosed
by a small triangle of new arcs, so that the rotation of a curve ending
at P stays strictly between P and its old neighbours.  All old arcs
incident with P are rerouted to the outermost new point on the side
opposite to the rotation direction; the remaining quadrilateral next to P
is closed with one diagonal.  Old triangles keep their list positions and
side order (sides are only renamed in place), so triangle indices and
slot positions are stable under the refinement.

Curves are moved between the two triangulations through their corridors:
the sequence of triangle slots a curve crosses.  A word determines its
corridor and vice versa, and over the refined triangulation a curve
ending at a refined point simply gains the extra crossings of the walk
around its old corner into the small triangle.
"""

from .words import Letter, WordError
from .surface import Triangulation, MarkedSurface, TriangulationError


class TransportError(ValueError):
    pass


# A passage through a self-folded triangle crosses the folded side once;
# the two slots of the folded side distinguish the two sides of the
# enclosed puncture, and correspond to the dashed loop and its inverse.
EPS_SLOT = {False: 0, True: 1}   # letter.inv -> folded-side slot index


def _arrows_by_triangle(q):
    out = {}
    for a, t in q.arrow_triangle.items():
        out.setdefault(t, {})[q.arrows[a]] = a
    return out


def corridor_of_word(ctx, word):
    """
    The corridor of a word: the sequence of slots through which the curve
    exits successive triangles, from the first endpoint to the last.
    """
    sy, tri = ctx.sy, ctx.tri
    letters = word.letters
    if not letters or letters[0].kind != "ax" or not letters[0].inv:
        raise TransportError("word does not start at an endpoint")
    i0, th0 = letters[0].base
    slots = [sy.side_of[(i0, th0)]]
    entered = tri.opposite(slots[-1])
    for lt in letters[1:-1]:
        t = entered[0]
        if lt.kind == "ep":
            if not tri.is_sf[t] or entered[1] != 2:
                raise TransportError("dashed letter outside a folded triangle")
            slots.append((t, EPS_SLOT[lt.inv]))
            entered = tri.opposite(slots[-1])
            slots.append((t, 2))
            entered = tri.opposite(slots[-1])
        elif lt.kind == "ar":
            s, tgt = ctx.q.arrows[lt.base]
            x, y = (tgt, s) if lt.inv else (s, tgt)
            if tri.sides[t][entered[1]] != x:
                raise TransportError("arrow letter does not continue the corridor")
            iy = [k for k in range(3) if tri.sides[t][k] == y and k != entered[1]]
            if len(iy) != 1:
                raise TransportError("exit side %s not found in triangle %d" % (y, t))
            slots.append((t, iy[0]))
            entered = tri.opposite(slots[-1])
        else:
            raise TransportError("auxiliary letter inside a word")
    last = letters[-1]
    if last.kind != "ax" or last.inv:
        raise TransportError("word does not end at an endpoint")
    i1, th1 = last.base
    if sy.side_of[(i1, th1)] != entered:
        raise TransportError("final letter inconsistent with the corridor")
    return slots


def word_of_corridor(ctx, slots):
    """The word of a corridor (inverse of corridor_of_word)."""
    sy, tri, q = ctx.sy, ctx.tri, ctx.q
    arrows = _arrows_by_triangle(q)
    eps_inv = {v: k for k, v in EPS_SLOT.items()}
    t0, i0 = slots[0]
    letters = [Letter("ax", sy.theta_of_slot[slots[0]], True)]
    entered = tri.opposite(slots[0])
    k = 1
    while k < len(slots):
        t, ei = entered
        st = slots[k]
        if st[0] != t:
            raise TransportError("corridor leaves triangle %d via %s" % (t, st))
        if tri.is_sf[t]:
            if ei != 2 or st[1] not in (0, 1) or k + 1 >= len(slots) \
                    or slots[k + 1] != (t, 2):
                raise TransportError("bad passage through folded triangle %d" % t)
            letters.append(Letter("ep", tri.sides[t][2], eps_inv[st[1]]))
            entered = tri.opposite((t, 2))
            k += 2
            continue
        x, y = tri.sides[t][ei], tri.sides[t][st[1]]
        amap = arrows.get(t, {})
        if (x, y) in amap:
            letters.append(Letter("ar", amap[(x, y)], False))
        elif (y, x) in amap:
            letters.append(Letter("ar", amap[(y, x)], True))
        else:
            raise TransportError("no arrow between %s and %s in triangle %d"
                                 % (x, y, t))
        entered = tri.opposite(st)
        k += 1
    letters.append(Letter("ax", sy.theta_of_slot[entered], False))
    return sy.word(letters)


def word_endpoints(ctx, word):
    """Vertex names of the two endpoints (end 0, end 1) of a word curve."""
    out = []
    for lt in (word.letters[0], word.letters[-1]):
        i, theta = lt.base
        t, idx = ctx.sy.side_of[(i, theta)]
        out.append(ctx.tri.vertex_name((t, (idx + 1) % 3)))
    return tuple(out)


# ----------------------------------------------------------------------
# refinement


class RefineInfo:
    def __init__(self, old, new, seg_map, vertex_map, points):
        self.old = old
        self.new = new
        self.seg_map = seg_map        # old segment name -> new segment name
        self.vertex_map = vertex_map  # old marked name -> new marked name
        self.points = points          # old marked name -> per-point record


def refine_marked_points(tri, point_names):
    """
    Refine the triangulation around the given boundary marked points.
    Returns (new_triangulation, RefineInfo).
    """
    surface = tri.surface
    refined = set(point_names)
    for nm in refined:
        v = tri.vertex_by_name.get(nm)
        if v is None or tri.vertices[v]["kind"] != "boundary":
            raise TransportError("%s is not a boundary marked point" % nm)

    # incoming segment of each marked point (the one ending there)
    incoming = {}
    for walk in tri.boundary_walks:
        for a, b in zip(walk, walk[1:] + walk[:1]):
            incoming["M" + b[1:]] = a
    for nm in refined:
        comp = next(w for w in tri.boundary_walks
                    if incoming[nm] in w)
        if len(comp) < 2:
            raise TransportError(
                "cannot refine %s on a one-point boundary component" % nm)

    # new boundary walks: tokens are either ("old", k) segments /
    # plain old vertex names, or ("s", P, i) / ("q", P, i) refinement parts
    comp_tokens = []
    for walk in tri.boundary_walks:
        segs, verts = [], []
        for i, seg in enumerate(walk):
            start = "M" + seg[1:]
            segs.append(("old", seg))
            verts.append(("q", start, 4) if start in refined else start)
            end = "M" + walk[(i + 1) % len(walk)][1:]
            if end in refined:
                segs.extend([("s", end, 2), ("s", end, 3),
                             ("s", end, 4), ("s", end, 5)])
                verts.extend([("q", end, 1), ("q", end, 2),
                              end, ("q", end, 3)])
        comp_tokens.append((segs, verts))

    # assign names
    seg_name, vert_name = {}, {}
    base = 0
    new_counts = []
    for segs, verts in comp_tokens:
        for i, (sgt, vt) in enumerate(zip(segs, verts)):
            seg_name[sgt] = "B%d" % (base + i)
            vert_name[vt] = "M%d" % (base + i)
        new_counts.append(len(segs))
        base += len(segs)

    seg_map = {seg: seg_name[("old", seg)] for seg in tri.boundary_names}
    vertex_map = {v["name"]: vert_name[v["name"]]
                  for v in tri.vertices if v["kind"] == "boundary"}

    def fresh_names(n):
        used = set(tri.arcs)
        out = []
        k = 0
        while len(out) < n:
            cand = "n%d" % k
            k += 1
            if cand not in used:
                used.add(cand)
                out.append(cand)
        return out

    # rebuild triangles with boundary names mapped in place
    def mapped(entry):
        if entry[0] == "tri":
            return ["tri"] + [seg_map.get(s, s) for s in entry[1]]
        return ["sf", entry[1], seg_map.get(entry[2], entry[2])]

    working = [mapped(e) for e in tri.triangles]

    # reroute arcs: endpoints at a refined P move to its outer new point q4
    def arc_vertex(nm):
        if nm in refined:
            return vert_name[("q", nm, 4)]
        return vertex_map.get(nm, nm)

    arcs2 = {a: (arc_vertex(e1), arc_vertex(e2))
             for a, (e1, e2) in tri.arcs.items()}

    points = {}
    names = fresh_names(4 * len(refined))
    for idx, P in enumerate(sorted(refined)):
        e1, e2, cc, dd = names[4 * idx: 4 * idx + 4]
        q1 = vert_name[("q", P, 1)]
        q2 = vert_name[("q", P, 2)]
        q3 = vert_name[("q", P, 3)]
        q4 = vert_name[("q", P, 4)]
        mid = vert_name[P]
        s1 = seg_map[incoming[P]]
        s2, s3, s4, s5 = (seg_name[("s", P, i)] for i in (2, 3, 4, 5))
        # split the triangle at the incoming side: replace s1 by the quad
        # diagonal in place and append the cut-off triangle (s1, c, d)
        holder = None
        for w in working:
            sides = w[1:] if w[0] == "tri" else [w[1], w[1], w[2]]
            if s1 in sides:
                holder = w
                break
        if holder is None or holder[0] != "tri":
            raise TransportError("cannot refine %s: bad incoming triangle" % P)
        pos = holder.index(s1)
        holder[pos] = dd
        working_extra = [
            ["tri", s1, cc, dd],
            ["tri", s2, s3, e1],
            ["tri", s4, s5, e2],
            ["tri", e1, e2, cc],
        ]
        points[P] = {
            "mid": mid, "q1": q1, "q2": q2, "q3": q3, "q4": q4,
            "e1": e1, "e2": e2, "c": cc, "d": dd,
            "extra": working_extra,
        }
        # declared endpoints (first-slot order): d in the split triangle,
        # then c in (s1,c,d), e1 in (s2,s3,e1), e2 in (s4,s5,e2)
        arcs2[dd] = (None, q4)   # completed below once segment starts are known
        arcs2[cc] = (q1, q4)
        arcs2[e1] = (mid, q1)
        arcs2[e2] = (q4, mid)

    # start vertex of each new segment, to finish the d declarations
    start_of_seg = {}
    for segs, verts in comp_tokens:
        for sgt, vt in zip(segs, verts):
            start_of_seg[seg_name[sgt]] = vert_name[vt]
    for P, rec in points.items():
        s1 = seg_map[incoming[P]]
        L = start_of_seg[s1]
        arcs2[rec["d"]] = (L, rec["q4"])

    entries = []
    for w in working:
        if w[0] == "tri":
            entries.append(("tri", tuple(w[1:])))
        else:
            entries.append(("sf", w[1], w[2]))
    for P in sorted(refined):
        for w in points[P]["extra"]:
            entries.append(("tri", tuple(w[1:])))

    surface2 = MarkedSurface(surface.genus, new_counts, surface.punctures)
    tri2 = Triangulation(surface2, arcs2, entries)
    for P in sorted(refined):
        rec = points[P]
        rec["tc_index"] = next(
            t for t, e in enumerate(entries)
            if e[0] == "tri" and set(e[1]) == {rec["e1"], rec["e2"], rec["c"]})
    return tri2, RefineInfo(tri, tri2, seg_map, vertex_map, points)


# ----------------------------------------------------------------------
# transport


def _extension_walk(ctx2, info, point, corner):
    """
    Crossed slots of the walk from ``corner`` (the image of an old corner
    at a refined point, now at its outer new point) into the small
    triangle enclosing the point.
    """
    tri2 = ctx2.tri
    target = info.points[point]["tc_index"]
    out = []
    cur = corner
    for _ in range(6 * len(tri2.sides)):
        if cur[0] == target:
            return out
        prv, crossed = tri2.corner_prev(cur)
        if prv is None:
            raise TransportError("extension walk hit the boundary at %s" % (crossed,))
        out.append(crossed)
        cur = prv
    raise TransportError("extension walk did not terminate")


def transport_word(ctx, ctx2, info, word):
    """
    Re-express a word curve of the original triangulation over the refined
    one.  Old triangle indices and slots are stable, so the old corridor
    is reused verbatim and only extended at refined endpoints.
    """
    tri2 = ctx2.tri
    slots = corridor_of_word(ctx, word)
    ep0, ep1 = word_endpoints(ctx, word)
    if ep0 in info.points:
        t, i = slots[0]
        walk = _extension_walk(ctx2, info, ep0, (t, (i + 1) % 3))
        slots = [tri2.opposite(s) for s in reversed(walk)] + slots
    if ep1 in info.points:
        t, i = tri2.opposite(slots[-1])
        walk = _extension_walk(ctx2, info, ep1, (t, (i + 1) % 3))
        slots = slots + walk
    return word_of_corridor(ctx2, slots)
