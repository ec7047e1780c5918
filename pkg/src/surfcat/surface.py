r"""
Marked surfaces and ideal/admissible triangulations.

A marked surface is a compact oriented genus-g surface with b boundary
components, m marked points distributed over the boundary, and p interior
punctures.  Triangulations are stored purely combinatorially: a list of
triangles, each given by its three sides in clockwise order, where a side
is either an arc or a boundary segment.  Self-folded triangles are stored
as (folded side, remaining side) pairs.

All incidence data (vertices, fans around vertices, boundary walks) is
derived from the triangle gluing, assuming each arc is traversed in
opposite directions by its two sides.  Naming conventions:

* boundary segments are ``B0, B1, ...`` numbered consecutively along each
  boundary component in the positive walk direction, component by
  component;
* marked points are ``M0, M1, ...`` with ``M<k>`` the start point of
  segment ``B<k>``, so the walk reads ``M0 B0 M1 B1 ...``;
* punctures are ``P0, P1, ...`` as declared by the arc lines.

Text format (one directive per line, ``#`` comments)::

    surface g=<int> punctures=<int> boundary=<m1,m2,...>
    arc <id> <endpoint> <endpoint>
    tri <e1> <e2> <e3>
    trisf <folded_arc> <remaining_side>

For ``arc`` lines the first endpoint is the start of the arc's first slot
in triangle-list order.
"""


class SurfaceError(ValueError):
    pass


class TriangulationError(ValueError):
    pass


class FoldedSideError(ValueError):
    pass


class NotInTo(ValueError):
    pass


class UnsupportedGenus(ValueError):
    pass


class MarkedSurface:
    """
    A marked surface (g; b boundary components with marked point counts;
    p punctures).  Rejects data of rank < 1.
    """

    def __init__(self, genus, boundary, punctures):
        genus = int(genus)
        boundary = tuple(int(x) for x in boundary)
        punctures = int(punctures)
        if genus < 0 or punctures < 0:
            raise SurfaceError("genus and puncture count must be non-negative")
        if not boundary:
            raise SurfaceError("surface must have non-empty boundary")
        if any(m < 1 for m in boundary):
            raise SurfaceError("every boundary component needs a marked point")
        self.genus = genus
        self.boundary = boundary
        self.punctures = punctures
        if self.rank < 1:
            raise SurfaceError("surface has rank %d < 1" % self.rank)

    @property
    def num_marked(self):
        return sum(self.boundary)

    @property
    def rank(self):
        g, p, b, m = self.genus, self.punctures, len(self.boundary), self.num_marked
        return 6 * g + 3 * p + 3 * b + m - 6

    @property
    def triangle_count(self):
        g, p, b, m = self.genus, self.punctures, len(self.boundary), self.num_marked
        return 4 * g + 2 * b + 2 * p + m - 4

    def __eq__(self, other):
        return (isinstance(other, MarkedSurface)
                and (self.genus, self.boundary, self.punctures)
                == (other.genus, other.boundary, other.punctures))

    def __hash__(self):
        return hash((self.genus, self.boundary, self.punctures))

    def __repr__(self):
        return "MarkedSurface(genus=%d, boundary=%s, punctures=%d)" % (
            self.genus, list(self.boundary), self.punctures)

    def header_line(self):
        return "surface g=%d punctures=%d boundary=%s" % (
            self.genus, self.punctures, ",".join(str(x) for x in self.boundary))


def rank(surface):
    """Rank 6g+3p+3b+m-6 of a marked surface."""
    return surface.rank


def _is_boundary_name(name):
    return name.startswith("B") and name[1:].isdigit()


class Triangulation:
    """
    An ideal triangulation of a marked surface.

    ``arcs`` maps arc id to its declared endpoint pair; ``triangles`` is a
    list of ``("tri", (e1, e2, e3))`` and ``("sf", folded, remaining)``
    entries.  The constructor derives the full incidence structure
    (slots, corners, vertices, boundary walks) and raises
    TriangulationError on structural inconsistencies.
    """

    def __init__(self, surface, arcs, triangles, predecessors=None):
        self.surface = surface
        self.arcs = dict(arcs)
        self.triangles = list(triangles)
        # arc renaming history across flips (new name -> old name)
        self.predecessors = dict(predecessors or {})
        self._analyze()

    # ------------------------------------------------------------------
    # structure derivation

    def _analyze(self):
        self._build_structure()
        self._build_vertices()
        self._build_boundary()
        self._name_vertices()

    def _build_structure(self):
        self.sides = []      # per triangle, list of 3 side names
        self.is_sf = []      # per triangle, bool
        for entry in self.triangles:
            if entry[0] == "tri":
                e = tuple(entry[1])
                if len(e) != 3:
                    raise TriangulationError("tri needs exactly 3 sides")
                if len(set(e)) < 3:
                    raise TriangulationError(
                        "triangle with repeated side %s must be declared trisf" % (e,))
                self.sides.append(list(e))
                self.is_sf.append(False)
            elif entry[0] == "sf":
                folded, remaining = entry[1], entry[2]
                if folded == remaining:
                    raise TriangulationError("folded and remaining side coincide")
                self.sides.append([folded, folded, remaining])
                self.is_sf.append(True)
            else:
                raise TriangulationError("unknown triangle kind %r" % (entry[0],))

        # slot registry
        self.slots = {}
        for t, sides in enumerate(self.sides):
            for i, name in enumerate(sides):
                self.slots.setdefault(name, []).append((t, i))

        self.boundary_names = sorted(
            (n for n in self.slots if _is_boundary_name(n)),
            key=lambda n: int(n[1:]))
        for name, sl in self.slots.items():
            if _is_boundary_name(name):
                if len(sl) != 1:
                    raise TriangulationError(
                        "boundary segment %s occurs in %d slots" % (name, len(sl)))
            else:
                if name not in self.arcs:
                    raise TriangulationError("undeclared arc %s" % name)
                if len(sl) != 2:
                    raise TriangulationError(
                        "arc %s occurs in %d slots (expected 2)" % (name, len(sl)))
        for name in self.arcs:
            if name not in self.slots:
                raise TriangulationError("declared arc %s unused" % name)

        self.folded = {}     # folded arc -> sf triangle index
        self.remaining = {}  # remaining side -> sf triangle index
        for t, sf in enumerate(self.is_sf):
            if sf:
                self.folded[self.sides[t][0]] = t
                self.remaining[self.sides[t][2]] = t

    def opposite(self, slot):
        """The other slot of the same arc, or None for boundary segments."""
        t, i = slot
        name = self.sides[t][i]
        sl = self.slots[name]
        if len(sl) == 1:
            return None
        return sl[1] if sl[0] == slot else sl[0]

    # Corners: (t, i) is the corner of triangle t between sides i and i+1.
    # Side slot (t, i) is traversed from corner (t, i-1) to corner (t, i);
    # gluing identifies the start of a slot with the end of its opposite.

    def corner_next(self, corner):
        """
        Rotate one step around the vertex of ``corner`` by crossing the
        side after it.  Returns (corner', crossed_slot) or
        (None, crossed_slot) if that side is a boundary segment.
        """
        t, i = corner
        s = (t, (i + 1) % 3)
        opp = self.opposite(s)
        if opp is None:
            return None, s
        return opp, s

    def corner_prev(self, corner):
        t, i = corner
        s = (t, i)
        opp = self.opposite(s)
        if opp is None:
            return None, s
        t2, j = opp
        return (t2, (j - 1) % 3), s

    def _build_vertices(self):
        corners = [(t, i) for t in range(len(self.sides)) for i in range(3)]
        self.vertex_of_corner = {}
        self.vertices = []   # list of dicts: kind, corners (ordered), ends
        seen = set()
        for c0 in corners:
            if c0 in seen:
                continue
            # walk backwards to a boundary start if there is one
            start, start_seg = c0, None
            walked = {c0}
            while True:
                prv, s = self.corner_prev(start)
                if prv is None:
                    start_seg = s
                    break
                if prv in walked:   # interior vertex (cycle)
                    start = c0
                    break
                walked.add(prv)
                start = prv
            chain = [start]
            end_seg = None
            while True:
                nxt, s = self.corner_next(chain[-1])
                if nxt is None:
                    end_seg = s
                    break
                if nxt == chain[0]:
                    break
                chain.append(nxt)
            vid = len(self.vertices)
            kind = "boundary" if start_seg is not None else "puncture"
            self.vertices.append({
                "kind": kind, "corners": chain,
                "start_seg": start_seg, "end_seg": end_seg, "name": None,
            })
            for c in chain:
                self.vertex_of_corner[c] = vid
            seen.update(chain)

    def _build_boundary(self):
        """Boundary walks in the positive direction (via corner_next)."""
        # next segment after B (slot s=(t,i)): walk around the vertex at the
        # end corner of s until the crossing side is a boundary slot.
        self.next_segment = {}
        for name in self.boundary_names:
            (t, i) = self.slots[name][0]
            corner = (t, i)
            while True:
                nxt, s = self.corner_next(corner)
                if nxt is None:
                    self.next_segment[name] = self.sides[s[0]][s[1]]
                    break
                corner = nxt
        self.boundary_walks = []
        visited = set()
        for name in self.boundary_names:
            if name in visited:
                continue
            walk = [name]
            visited.add(name)
            cur = self.next_segment[name]
            while cur != name:
                walk.append(cur)
                visited.add(cur)
                cur = self.next_segment[cur]
            self.boundary_walks.append(walk)

    def _name_vertices(self):
        # Boundary segments must be numbered consecutively along each walk.
        expected = []
        k = 0
        for m in self.surface.boundary:
            expected.append(["B%d" % (k + j) for j in range(m)])
            k += m
        got = sorted(self.boundary_walks, key=lambda w: min(int(x[1:]) for x in w))
        if len(got) != len(expected):
            raise TriangulationError(
                "found %d boundary components, surface declares %d"
                % (len(got), len(expected)))
        for walk, exp in zip(got, expected):
            if sorted(walk) != sorted(exp):
                raise TriangulationError(
                    "boundary component %s does not match declared sizes" % walk)
            lo = min(range(len(walk)), key=lambda j: int(walk[j][1:]))
            rot = walk[lo:] + walk[:lo]
            if rot != exp:
                raise TriangulationError(
                    "boundary segments %s not consecutive along the walk" % walk)
        # M<k> = start vertex of B<k> in the positive walk; the walk reads
        # ... M<k> B<k> M<k+1> ...  The start vertex of segment B (slot
        # (t,i)) is the vertex of corner (t, i-1).
        self._marked_of_segment = {}
        for name in self.boundary_names:
            t, i = self.slots[name][0]
            v = self.vertex_of_corner[(t, (i - 1) % 3)]
            mname = "M" + name[1:]
            if self.vertices[v]["name"] not in (None, mname):
                raise TriangulationError(
                    "vertex naming conflict at %s" % mname)
            self.vertices[v]["name"] = mname
        for v in self.vertices:
            if v["kind"] == "boundary" and v["name"] is None:
                raise TriangulationError("boundary vertex missed by segment naming")

        # punctures: named via declared arc endpoints.  Declarations are
        # matched to derived vertices unordered; the declared order only
        # breaks ties for arcs joining two as-yet-unnamed punctures.
        def arc_vertices(name):
            t, i = self.slots[name][0]
            return (self.vertex_of_corner[(t, (i - 1) % 3)],
                    self.vertex_of_corner[(t, i)])

        def pairing_ok(pairs, extra):
            for ep, v in pairs:
                cur = self.vertices[v]["name"]
                if cur is not None:
                    if cur != ep:
                        return None
                    continue
                if not ep.startswith("P") or self.vertices[v]["kind"] != "puncture":
                    return None
                if any(w != v and e == ep
                       for w, e in extra.items()) or \
                        any(u["name"] == ep for u in self.vertices):
                    return None
                if ep in extra.values() and extra.get(v) != ep:
                    return None
                extra[v] = ep
            return extra

        pending = sorted(self.arcs)
        while True:
            progress = False
            deferred = []
            for name in pending:
                ep1, ep2 = self.arcs[name]
                v1, v2 = arc_vertices(name)
                fwd = pairing_ok([(ep1, v1), (ep2, v2)], {})
                bwd = pairing_ok([(ep1, v2), (ep2, v1)], {})
                if fwd is None and bwd is None:
                    raise TriangulationError(
                        "arc %s declares endpoints (%s, %s) inconsistent with "
                        "the gluing" % (name, ep1, ep2))
                if fwd is not None and bwd is not None and (fwd or bwd) \
                        and fwd != bwd:
                    deferred.append(name)
                    continue
                chosen = fwd if fwd is not None else bwd
                for v, ep in chosen.items():
                    self.vertices[v]["name"] = ep
                    progress = True
            if not deferred:
                break
            if not progress:
                # genuinely ambiguous: trust the declared order
                for name in deferred:
                    ep1, ep2 = self.arcs[name]
                    v1, v2 = arc_vertices(name)
                    chosen = pairing_ok([(ep1, v1), (ep2, v2)], {})
                    if chosen is None:
                        raise TriangulationError(
                            "arc %s endpoint declaration inconsistent" % name)
                    for v, ep in chosen.items():
                        self.vertices[v]["name"] = ep
                break
            pending = deferred
        unnamed = [v for v in self.vertices if v["name"] is None]
        if unnamed:
            raise TriangulationError(
                "%d puncture(s) not named by any arc endpoint" % len(unnamed))
        names = [v["name"] for v in self.vertices]
        if len(set(names)) != len(names):
            raise TriangulationError("duplicate vertex names %s" % names)
        npunct = sum(1 for v in self.vertices if v["kind"] == "puncture")
        if npunct != self.surface.punctures:
            raise TriangulationError(
                "triangulation has %d punctures, surface declares %d"
                % (npunct, self.surface.punctures))
        exp = {"P%d" % i for i in range(npunct)}
        have = {v["name"] for v in self.vertices if v["kind"] == "puncture"}
        if have != exp:
            raise TriangulationError("puncture names %s, expected %s"
                                     % (sorted(have), sorted(exp)))
        self.vertex_by_name = {v["name"]: i for i, v in enumerate(self.vertices)}

    # ------------------------------------------------------------------
    # queries

    @property
    def arc_names(self):
        return sorted(self.arcs, key=_name_key)

    def vertex_name(self, corner):
        return self.vertices[self.vertex_of_corner[corner]]["name"]

    def arc_endpoints(self, name):
        """Derived endpoint names (start of first slot, end of first slot)."""
        t, i = self.slots[name][0]
        return (self.vertex_name((t, (i - 1) % 3)), self.vertex_name((t, i)))

    def segment_endpoints(self, name):
        t, i = self.slots[name][0]
        return (self.vertex_name((t, (i - 1) % 3)), self.vertex_name((t, i)))

    def interior_arc_names(self):
        return list(self.arc_names)

    def quiver_vertex_arcs(self):
        """Arcs that are sides of non-self-folded triangles (the set T°)."""
        out = []
        for name in self.arc_names:
            if name in self.folded:
                continue
            if name in self.remaining and all(
                    self.is_sf[t] for (t, _i) in self.slots[name]):
                # remaining side whose other slot is also self-folded cannot
                # happen (it would need two sf triangles sharing the side);
                # remaining sides always have a non-sf slot except in the
                # once-punctured monogon where the side is a boundary segment.
                continue
            out.append(name)
        return out

    def is_admissible(self):
        """Every puncture is the interior vertex of a self-folded triangle."""
        for v in self.vertices:
            if v["kind"] != "puncture":
                continue
            ok = any(self.is_sf[t] and i == 0 for (t, i) in v["corners"])
            if not ok:
                return False
        return True

    def fresh_arc_name(self):
        used = (set(self.arcs) | set(self.boundary_names)
                | set(self.predecessors) | set(self.predecessors.values()))
        k = 1
        while str(k) in used:
            k += 1
        return str(k)

    # ------------------------------------------------------------------
    # flips

    def flip(self, arc):
        """
        Flip ``arc``, returning (Triangulation, FlipInfo).  The replacement
        arc gets a fresh id recorded in ``predecessors``.
        """
        if arc not in self.arcs:
            raise TriangulationError("cannot flip %r: not an arc" % arc)
        if arc in self.folded:
            raise FoldedSideError(
                "cannot flip %s: folded side of a self-folded triangle" % arc)
        s1, s2 = self.slots[arc]
        (t1, i1), (t2, i2) = s1, s2
        if t1 == t2:
            raise TriangulationError("cannot flip %s" % arc)
        # Rotate both side lists so the flipped arc comes first.  The two
        # triangles glued along ``arc`` only form an abstract square with
        # clockwise boundary x, y, u, v and diagonal arc; the new diagonal
        # joins the other two corners.  Self-folded neighbours need no
        # special case because their repeated folded side is simply listed
        # twice and not glued here.
        a1 = self.sides[t1][i1:] + self.sides[t1][:i1]
        a2 = self.sides[t2][i2:] + self.sides[t2][:i2]
        _, x, y = a1
        _, u, v = a2
        new = self.fresh_arc_name()
        # endpoints of the new diagonal: corners between x,y and u,v
        q = self.vertex_name((t1, (i1 + 1) % 3))
        s = self.vertex_name((t2, (i2 + 1) % 3))
        tri_a = [y, u, new]
        tri_b = [v, x, new]

        def pack(tri):
            if tri[0] == tri[1]:
                return ("sf", tri[0], tri[2])
            if tri[1] == tri[2]:
                return ("sf", tri[1], tri[0])
            if tri[0] == tri[2]:
                return ("sf", tri[0], tri[1])
            return ("tri", tuple(tri))

        triangles = list(self.triangles)
        keep = [k for k in range(len(triangles)) if k not in (t1, t2)]
        new_triangles = [triangles[k] for k in keep] + [pack(tri_a), pack(tri_b)]
        arcs = {k: val for k, val in self.arcs.items() if k != arc}
        arcs[new] = (s, q)  # first slot of `new` is in tri_a at index 2: s -> q
        preds = dict(self.predecessors)
        preds[new] = arc
        result = Triangulation(self.surface, arcs, new_triangles, preds)
        info = FlipInfo(
            old=self, new=result, arc=arc, new_arc=new,
            old_tris=(t1, t2), rotations=(i1, i2),
            quad_sides=(x, y, u, v),
            new_tris=(len(keep), len(keep) + 1))
        return result, info

    def diamond_flip(self, arc):
        """
        Admissibility-preserving flip.  At a remaining side of a
        self-folded triangle this is the two-flip composite through the
        once-punctured digon; elsewhere it is an ordinary flip.  Returns
        (Triangulation, [FlipInfo...]).
        """
        if arc in self.folded:
            raise NotInTo("%s is a folded side" % arc)
        if arc not in self.arcs:
            raise NotInTo("%r is not an arc" % arc)
        if arc not in self.remaining:
            t2, info = self.flip(arc)
            return t2, [info]
        sf = self.remaining[arc]
        folded = self.sides[sf][0]
        mid, info1 = self.flip(arc)
        # the old folded side is an ordinary arc of `mid`; flipping it
        # re-creates a self-folded triangle on the other side
        out, info2 = mid.flip(folded)
        return out, [info1, info2]

    # ------------------------------------------------------------------
    # serialization

    def to_text(self):
        lines = [self.surface.header_line()]
        for name in self.arc_names:
            ep1, ep2 = self.arc_endpoints(name)
            lines.append("arc %s %s %s" % (name, ep1, ep2))
        for entry in self.triangles:
            if entry[0] == "tri":
                lines.append("tri %s %s %s" % entry[1])
            else:
                lines.append("trisf %s %s" % (entry[1], entry[2]))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "Triangulation(%s, arcs=%s)" % (self.surface, self.arc_names)


class FlipInfo:
    """Record of one elementary flip, consumed by curve transport."""

    def __init__(self, old, new, arc, new_arc, old_tris, rotations,
                 quad_sides, new_tris):
        self.old = old
        self.new = new
        self.arc = arc
        self.new_arc = new_arc
        self.old_tris = old_tris      # indices in old triangulation
        self.rotations = rotations    # rotation offsets applied to side lists
        self.quad_sides = quad_sides  # (x, y, u, v), clockwise around the square
        self.new_tris = new_tris      # indices of (tri_a, tri_b) in new


# ----------------------------------------------------------------------
# parsing / validation


def parse_surface(text):
    """Parse the line-oriented surface/triangulation format."""
    surface = None
    arcs = {}
    triangles = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "surface":
            kv = {}
            for item in tok[1:]:
                if "=" not in item:
                    raise SurfaceError("bad surface field %r" % item)
                k, v = item.split("=", 1)
                kv[k] = v
            try:
                surface = MarkedSurface(
                    int(kv.pop("g")),
                    [int(x) for x in kv.pop("boundary").split(",")],
                    int(kv.pop("punctures")))
            except KeyError as e:
                raise SurfaceError("surface line missing field %s" % e)
            if kv:
                raise SurfaceError("unknown surface fields %s" % sorted(kv))
        elif tok[0] == "arc":
            if len(tok) != 4:
                raise SurfaceError("bad arc line %r" % line)
            if tok[1] in arcs:
                raise SurfaceError("duplicate arc %s" % tok[1])
            arcs[tok[1]] = (tok[2], tok[3])
        elif tok[0] == "tri":
            if len(tok) != 4:
                raise SurfaceError("bad tri line %r" % line)
            triangles.append(("tri", (tok[1], tok[2], tok[3])))
        elif tok[0] == "trisf":
            if len(tok) != 3:
                raise SurfaceError("bad trisf line %r" % line)
            triangles.append(("sf", tok[1], tok[2]))
        else:
            raise SurfaceError("unknown directive %r" % tok[0])
    if surface is None:
        raise SurfaceError("missing surface line")
    return surface, arcs, triangles


def load_triangulation(text):
    surface, arcs, triangles = parse_surface(text)
    return Triangulation(surface, arcs, triangles)


def validate_triangulation(surface, arcs, triangles):
    """
    Check the triangulation invariants; returns "ok" or a one-line report
    naming the first violated invariant.
    """
    n = surface.rank
    arc_count = len(arcs)
    if arc_count != n:
        return "violation: arc count %d != rank %d" % (arc_count, n)
    t = surface.triangle_count
    if len(triangles) != t:
        return "violation: triangle count %d != %d" % (len(triangles), t)
    try:
        tri = Triangulation(surface, arcs, triangles)
    except (TriangulationError, SurfaceError) as e:
        return "violation: %s" % e
    # Euler characteristic (orientation-consistency guard)
    V = len(tri.vertices)
    E = len(tri.arcs) + len(tri.boundary_names)
    F = len(tri.triangles)
    chi = V - E + F
    expected = 2 - 2 * surface.genus - len(surface.boundary)
    # each boundary walk contributes its cycle; closed-surface chi minus
    # nothing: the disk-with-b-holes has chi = 2 - 2g - b but segment edges
    # are shared with nothing, so count them once and add no faces for the
    # exterior.
    if chi != expected:
        return "violation: Euler characteristic %d != %d" % (chi, expected)
    return "ok"


def _name_key(name):
    return (0, int(name)) if name.isdigit() else (1, name)


# ----------------------------------------------------------------------
# admissible triangulation synthesis (genus 0)


def build_admissible(surface):
    """
    Construct an admissible triangulation of a genus-0 surface: hang a
    self-folded triangle at a marked point for every puncture, bridge the
    extra boundary components into one polygon, and fan-triangulate.
    """
    if surface.genus != 0:
        raise UnsupportedGenus("only genus 0 is supported")
    counts = surface.boundary
    p = surface.punctures
    arcs = {}
    triangles = []
    fresh = [0]

    def new_arc(ep1, ep2):
        fresh[0] += 1
        name = "a%d" % fresh[0]
        arcs[name] = (ep1, ep2)
        return name

    # special case: once-punctured monogon (single self-folded triangle
    # whose remaining side is the boundary segment)
    if counts == (1,) and p == 1:
        g = new_arc("M0", "P0")
        triangles.append(("sf", g, "B0"))
        return Triangulation(surface, arcs, triangles)

    # polygon boundary as a list of (edge, start_vertex) in positive
    # direction; component 0 first
    offs = []
    k = 0
    for m in counts:
        offs.append(k)
        k += m
    poly = [("B%d" % (offs[0] + j), "M%d" % (offs[0] + j))
            for j in range(counts[0])]
    # bridge in the other components at M0.  An inner boundary component is
    # traversed in the negative direction from the polygon's point of view.
    for c in range(1, len(counts)):
        o, m = offs[c], counts[c]
        br = new_arc("M0", "M%d" % o)
        inner = [("B%d" % (o + j), "M%d" % (o + j)) for j in range(m)]
        poly = [(br, "M0")] + inner + [(br, "M%d" % o)] + poly
    # hang one self-folded triangle per puncture at M0
    for q in range(p):
        g = new_arc("M0", "P%d" % q)
        loop = new_arc("M0", "M0")
        triangles.append(("sf", g, loop))
        poly = [(loop, "M0")] + poly

    # fan-triangulate the polygon from its last vertex
    def fan(polygon):
        if len(polygon) < 3:
            raise SurfaceError("degenerate polygon of size %d" % len(polygon))
        apex = polygon[0][1]
        edges = [e for e, _v in polygon]
        verts = [v for _e, v in polygon]
        d_prev = edges[0]
        for i in range(1, len(edges) - 1):
            if i == len(edges) - 2:
                d_next = edges[-1]
            else:
                d_next = new_arc(verts[i + 1], apex)
            triangles.append(("tri", (d_prev, edges[i], d_next)))
            d_prev = d_next

    fan(poly)
    return Triangulation(surface, arcs, triangles)


# ----------------------------------------------------------------------
# cutting

class SelfIntersecting(ValueError):
    pass


class CutResult:
    """
    Outcome of cutting a triangulated surface along an arc: the
    triangulated pieces of positive rank, the signature (genus, boundary
    sizes, punctures) of any dropped rank-deficient pieces, and the map
    from old vertex names to their copies, as (piece index, new name)
    pairs.
    """

    def __init__(self, pieces, dropped, relabel):
        self.pieces = pieces
        self.dropped = dropped
        self.relabel = relabel

    @property
    def surfaces(self):
        return [t.surface for t in self.pieces]

    def __repr__(self):
        return "CutResult(pieces=%s, dropped=%s)" % (
            self.surfaces, self.dropped)


def _raw_complex(arcs, triangles):
    """Incidence analysis of a triangle complex without vertex naming."""
    raw = Triangulation.__new__(Triangulation)
    raw.surface = None
    raw.arcs = dict(arcs)
    raw.triangles = list(triangles)
    raw.predecessors = {}
    raw._build_structure()
    raw._build_vertices()
    raw._build_boundary()
    return raw


def cut(tri, curve, ctx=None):
    """
    Cut the surface along an arc of the triangulation (plain name or an
    arc-kind tagged curve).  The two slots of the arc become boundary
    segments; endpoint punctures turn into boundary marked points and
    endpoint marked points split in two.  Returns a CutResult keeping the
    connected components of positive rank.
    """
    name = curve
    if hasattr(curve, "kind"):
        if ctx is not None:
            from .homalg import intersection_number
            if intersection_number(ctx, curve, curve).total != 0:
                raise SelfIntersecting(
                    "cannot cut along %r: nonzero self-intersection" % curve)
        if curve.kind != "arc":
            raise SurfaceError(
                "cutting is only implemented along arcs of the "
                "triangulation; got %r" % (curve,))
        name = curve.arc
    if name not in tri.arcs:
        raise TriangulationError("cannot cut along %r: not an arc" % name)

    # replace the two slots of the arc by fresh boundary segments
    nums = [int(b[1:]) for b in tri.boundary_names]
    nxt = (max(nums) + 1) if nums else 0
    sides = [list(s) for s in tri.sides]
    for (t, i) in tri.slots[name]:
        sides[t][i] = "B%d" % nxt
        nxt += 1

    # connected components over the remaining interior arcs
    comp = list(range(len(sides)))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for a, slots in tri.slots.items():
        if a == name or len(slots) != 2:
            continue
        r1, r2 = find(slots[0][0]), find(slots[1][0])
        comp[r1] = r2
    groups = {}
    for t in range(len(sides)):
        groups.setdefault(find(t), []).append(t)

    pieces, dropped, relabel = [], [], {}
    for root in sorted(groups, key=lambda r: min(groups[r])):
        tris = sorted(groups[root])
        local_triangles = []
        for t in tris:
            s0, s1, s2 = sides[t]
            if s0 == s1:
                local_triangles.append(("sf", s0, s2))
            else:
                local_triangles.append(("tri", (s0, s1, s2)))
        here = set(tris)
        local_arcs = {a: tri.arcs[a] for a, slots in tri.slots.items()
                      if a != name and a in tri.arcs
                      and all(t in here for (t, _i) in slots)}
        raw = _raw_complex(local_arcs, local_triangles)

        b = len(raw.boundary_walks)
        m = sum(len(w) for w in raw.boundary_walks)
        p = sum(1 for v in raw.vertices if v["kind"] == "puncture")
        chi = len(raw.vertices) - len(raw.slots) + len(raw.sides)
        genus = (2 - b - chi) // 2
        if 2 - b - chi != 2 * genus:
            raise SurfaceError("inconsistent Euler characteristic after cut")
        piece_rank = 6 * genus + 3 * p + 3 * b + m - 6

        # old vertex name of each raw vertex (cutting only splits vertices)
        old_of = []
        for v in raw.vertices:
            t_local, i = v["corners"][0]
            old_of.append(tri.vertex_name((tris[t_local], i)))

        if piece_rank < 1:
            dropped.append((genus, tuple(sorted(len(w) for w in
                                                raw.boundary_walks)), p))
            continue

        # consecutive boundary numbering, walk by walk
        seg_map = {}
        walks = sorted(raw.boundary_walks,
                       key=lambda w: min(int(x[1:]) for x in w))
        k = 0
        for walk in walks:
            lo = min(range(len(walk)), key=lambda j: int(walk[j][1:]))
            for s in walk[lo:] + walk[:lo]:
                seg_map[s] = "B%d" % k
                k += 1

        # new vertex names: M<k> at the start of B<k>, punctures renumbered
        # in the order of their old names
        new_name = [None] * len(raw.vertices)
        for s, new_s in seg_map.items():
            t, i = raw.slots[s][0]
            v = raw.vertex_of_corner[(t, (i - 1) % 3)]
            new_name[v] = "M" + new_s[1:]
        punct = sorted((v for v in range(len(raw.vertices))
                        if raw.vertices[v]["kind"] == "puncture"),
                       key=lambda v: _name_key(old_of[v]))
        for j, v in enumerate(punct):
            new_name[v] = "P%d" % j

        arcs2 = {}
        for a in local_arcs:
            t, i = raw.slots[a][0]
            arcs2[a] = (new_name[raw.vertex_of_corner[(t, (i - 1) % 3)]],
                        new_name[raw.vertex_of_corner[(t, i)]])
        triangles2 = []
        for entry in local_triangles:
            if entry[0] == "sf":
                triangles2.append((
                    "sf", seg_map.get(entry[1], entry[1]),
                    seg_map.get(entry[2], entry[2])))
            else:
                triangles2.append(("tri", tuple(
                    seg_map.get(s, s) for s in entry[1])))

        surface2 = MarkedSurface(genus, [len(w) for w in walks], p)
        piece = Triangulation(surface2, arcs2, triangles2)
        idx = len(pieces)
        pieces.append(piece)
        for v in range(len(raw.vertices)):
            relabel.setdefault(old_of[v], []).append((idx, new_name[v]))

    return CutResult(pieces, dropped, relabel)
