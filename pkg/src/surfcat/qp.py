r"""
Biquivers with potential from admissible triangulations.

The biquiver of a triangulation has one vertex per side of a
non-self-folded triangle, one solid arrow i -> j per non-self-folded
triangle in which j follows i clockwise, a dashed loop at every remaining
side of a self-folded triangle, and as potential the sum of the 3-cycles
of the interior non-self-folded triangles.  The relation set Z consists of
the compositions of two arrows from one triangle, and together with the
idempotent relations on the dashed loops presents a skewed-gentle algebra.
"""

import string


class QPError(ValueError):
    pass


class Biquiver:
    """
    Solid arrows with named endpoints, dashed loops at the special
    vertices, a cubic potential and the relation set Z.
    """

    def __init__(self, vertices, arrows, special, potential, Z,
                 arrow_triangle=None):
        self.vertices = list(vertices)
        self.arrows = dict(arrows)            # name -> (src, tgt)
        self.special = set(special)           # vertices with a dashed loop
        self.potential = list(potential)      # list of (a, b, c) composition order
        self.Z = set(Z)                       # set of (alpha, beta): beta.alpha
        self.arrow_triangle = dict(arrow_triangle or {})
        names = set(self.arrows) | {self.loop_name(v) for v in self.special}
        if len(names) != len(self.arrows) + len(self.special):
            raise QPError("arrow/loop name clash")

    @staticmethod
    def loop_name(vertex):
        return "e%s" % vertex

    @property
    def loops(self):
        return {v: self.loop_name(v) for v in sorted(self.special)}

    def arrows_into(self, v):
        return sorted(a for a, (s, t) in self.arrows.items() if t == v)

    def arrows_out_of(self, v):
        return sorted(a for a, (s, t) in self.arrows.items() if s == v)

    def dump(self):
        lines = []
        for v in self.vertices:
            lines.append("vertex %s%s" % (v, " special" if v in self.special else ""))
        for a in sorted(self.arrows):
            s, t = self.arrows[a]
            lines.append("arrow %s %s %s" % (a, s, t))
        for v in sorted(self.special):
            lines.append("loop %s" % v)
        for cyc in sorted(canonical_cycle(c) for c in self.potential):
            lines.append("cycle %s %s %s" % cyc)
        for alpha, beta in sorted(self.Z):
            lines.append("rel %s%s" % (beta, alpha))
        return "\n".join(lines) + "\n"

    def dot(self):
        lines = ["digraph biquiver {"]
        for v in self.vertices:
            shape = ' shape="box"' if v in self.special else ""
            lines.append('  "%s" [label="%s"%s];' % (v, v, shape))
        for a in sorted(self.arrows):
            s, t = self.arrows[a]
            lines.append('  "%s" -> "%s" [label="%s"];' % (s, t, a))
        for v in sorted(self.special):
            lines.append('  "%s" -> "%s" [label="%s" style="dashed"];'
                         % (v, v, self.loop_name(v)))
        lines.append("}")
        return "\n".join(lines) + "\n"


def canonical_cycle(cycle):
    """Rotate a cyclic tuple so its lexicographically least entry is first."""
    rots = [tuple(cycle[i:]) + tuple(cycle[:i]) for i in range(len(cycle))]
    return min(rots)


def _arrow_names():
    for c in string.ascii_lowercase:
        yield c
    k = 1
    while True:
        yield "z%d" % k
        k += 1


class NotAdmissible(ValueError):
    pass


def build_qp(tri):
    """
    The biquiver with potential and relation set of an admissible
    triangulation.  Arrows are named a, b, c, ... in triangle-list order.
    """
    if not tri.is_admissible():
        raise NotAdmissible("triangulation is not admissible")
    vertices = tri.quiver_vertex_arcs()
    vset = set(vertices)
    arrows = {}
    arrow_triangle = {}
    potential = []
    Z = set()
    names = _arrow_names()
    arrow_at = {}  # (tri, position i) -> arrow name for side i -> side i+1
    for t, sides in enumerate(tri.sides):
        if tri.is_sf[t]:
            continue
        for i in range(3):
            u, v = sides[i], sides[(i + 1) % 3]
            if u in vset and v in vset:
                name = next(names)
                arrows[name] = (u, v)
                arrow_triangle[name] = t
                arrow_at[(t, i)] = name
        present = [arrow_at.get((t, i)) for i in range(3)]
        if all(present):
            potential.append(tuple(present))
        for i in range(3):
            first, second = arrow_at.get((t, i)), arrow_at.get((t, (i + 1) % 3))
            if first and second:
                Z.add((first, second))
    special = set(tri.remaining) & vset
    return Biquiver(vertices, arrows, special, potential, Z, arrow_triangle)


def check_skewed_gentle(q, Z=None):
    """
    Verify the skewed-gentle conditions; returns "ok" or a violation
    message.
    """
    Z = q.Z if Z is None else set(Z)
    for a, (s, t) in q.arrows.items():
        if s == t:
            return "violation: solid loop %s" % a
    for p in q.vertices:
        ins = q.arrows_into(p)
        outs = q.arrows_out_of(p)
        if p in q.special:
            if len(ins) > 1:
                return "violation: special vertex %s has %d incoming arrows" % (
                    p, len(ins))
            if len(outs) > 1:
                return "violation: special vertex %s has %d outgoing arrows" % (
                    p, len(outs))
            if ins and outs and (ins[0], outs[0]) not in Z:
                return "violation: %s%s missing from Z at special vertex %s" % (
                    outs[0], ins[0], p)
        else:
            if len(ins) > 2 or len(outs) > 2:
                return "violation: vertex %s has too many arrows" % p
            # a labeling alpha_k/beta_k with beta_k.alpha_k in Z must exist
            if not _pairable(ins, outs, Z):
                return "violation: arrows at vertex %s cannot be paired via Z" % p
    for alpha, beta in Z:
        if q.arrows[alpha][1] != q.arrows[beta][0]:
            return "violation: %s%s is not a path" % (beta, alpha)
    return "ok"


def _pairable(ins, outs, Z):
    if len(ins) <= 1 and len(outs) <= 1:
        return True
    # try every assignment of ins/outs to the two slots
    import itertools
    for perm_in in itertools.permutations(ins):
        for perm_out in itertools.permutations(outs):
            pads_in = list(perm_in) + [None] * (2 - len(perm_in))
            pads_out = list(perm_out) + [None] * (2 - len(perm_out))
            ok = True
            for a, b in zip(pads_in, pads_out):
                if a is not None and b is not None and (a, b) not in Z:
                    ok = False
                    break
            if ok:
                return True
    return False


def split_vertex_names(q):
    """Vertices of the split quiver: every special vertex i doubles to i, i'."""
    out = []
    for v in q.vertices:
        out.append(v)
        if v in q.special:
            out.append(v + "'")
    return out


def split_qp(q):
    """
    The ordinary quiver with potential obtained by removing the dashed
    loops and splitting every special vertex in two.  Arrows are indexed
    by source/target variants of the original arrows.
    """
    def variants(v):
        return [v, v + "'"] if v in q.special else [v]

    vertices = split_vertex_names(q)
    arrows = {}
    origin = {}
    for a, (s, t) in q.arrows.items():
        for sv in variants(s):
            for tv in variants(t):
                name = a if (sv == s and tv == t and len(variants(s)) == 1
                             and len(variants(t)) == 1) else "%s[%s>%s]" % (a, sv, tv)
                arrows[name] = (sv, tv)
                origin[name] = a
    potential = {}
    for cyc in q.potential:
        # all variant lifts of the 3-cycle with matching endpoints
        a, b, c = cyc
        for na, (sa, ta) in arrows.items():
            if origin[na] != a:
                continue
            for nb, (sb, tb) in arrows.items():
                if origin[nb] != b or sb != ta:
                    continue
                for nc, (sc, tc) in arrows.items():
                    if origin[nc] != c or sc != tb or tc != sa:
                        continue
                    potential[canonical_cycle((na, nb, nc))] = 1
    return SplitQP(vertices, arrows, potential, origin)


class SplitQP:
    """An ordinary quiver with potential (cycles with coefficients)."""

    def __init__(self, vertices, arrows, potential, origin=None):
        self.vertices = list(vertices)
        self.arrows = dict(arrows)
        self.potential = dict(potential)   # canonical cycle tuple -> coefficient
        self.origin = dict(origin or {})

    def dump(self):
        lines = ["vertex %s" % v for v in self.vertices]
        for a in sorted(self.arrows):
            s, t = self.arrows[a]
            lines.append("arrow %s %s %s" % (a, s, t))
        for cyc in sorted(self.potential):
            coeff = self.potential[cyc]
            lines.append("cycle%s %s" % (
                "" if coeff == 1 else " %s*" % coeff, " ".join(cyc)))
        return "\n".join(lines) + "\n"
