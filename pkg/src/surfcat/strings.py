r"""
String modules and the correspondence between tagged curves and
representations.

A representation of the biquiver assigns an exact-rational matrix to every
solid arrow and every dashed loop, with the dashed loops acting
idempotently and the two-arrow compositions through each interior triangle
vanishing.  From an admissible word and eigenvalues at its punctured ends
one builds a string module; tagged arcs of the triangulation itself are
represented by markers carrying a decoration.  The shift/rotation acts on
words through the successor machinery and exchanges projectives with
markers.
"""

from fractions import Fraction

from . import linalg
from .words import (
    Word, inv, successor, predecessor, right_successor, right_predecessor,
    both_successor, both_predecessor, enumerate_admissible, canonical_form,
)


class ArityMismatch(ValueError):
    pass


class InTriangulation(ValueError):
    pass


class UnsupportedCurve(ValueError):
    pass


def loop_token(v):
    return "e%s" % v


class Rep:
    """A representation: per-vertex dimensions and per-generator matrices."""

    def __init__(self, q, dims, mats):
        self.q = q
        self.dims = dims
        self.mats = mats

    def generators(self):
        gens = []
        for a in sorted(self.q.arrows):
            s, t = self.q.arrows[a]
            gens.append((a, s, t))
        for v in sorted(self.q.special):
            gens.append((loop_token(v), v, v))
        return gens

    def mat(self, name):
        return self.mats[name]

    def total_dim(self):
        return sum(self.dims.values())

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.q.vertices)

    def check_relations(self):
        for v in self.q.special:
            e = self.mats[loop_token(v)]
            if linalg.mat_mul(e, e) != e:
                return "violation: loop at %s is not idempotent" % v
        for alpha, beta in self.q.Z:
            sa, ta = self.q.arrows[alpha]
            sb, tb = self.q.arrows[beta]
            if 0 in (self.dims[sa], self.dims[ta], self.dims[tb]):
                continue
            comp = linalg.mat_mul(self.mats[beta], self.mats[alpha])
            if any(x for row in comp for x in row):
                return "violation: relation %s%s does not vanish" % (beta, alpha)
        return "ok"

    def dump(self):
        lines = []
        for v in self.q.vertices:
            lines.append("dim %s %d" % (v, self.dims[v]))
        for name, s, t in self.generators():
            m = self.mats[name]
            flat = ";".join(",".join(str(x) for x in row) for row in m)
            lines.append("mat %s %s" % (name, flat if flat else "-"))
        return "\n".join(lines) + "\n"


def zero_rep(q):
    dims = {v: 0 for v in q.vertices}
    mats = {}
    for a in sorted(q.arrows):
        mats[a] = []
    for v in q.special:
        mats[loop_token(v)] = []
    return Rep(q, dims, mats)


class StringModule(Rep):
    """
    The representation attached to an admissible word and eigenvalues at
    its punctured ends (keys 0 for the first-letter end, 1 for the last).
    """

    def __init__(self, q, word, values):
        self.word = word
        sy = word.system
        punctured = set()
        if word.letters and sy.is_punctured(word.letters[0]):
            punctured.add(0)
        if word.letters and sy.is_punctured(word.letters[-1]):
            punctured.add(1)
        if set(values) != punctured:
            raise ArityMismatch(
                "eigenvalues %s do not match punctured ends %s"
                % (sorted(values), sorted(punctured)))
        self.values = dict(values)
        dims, mats, index = self._realize(q, word, values)
        self.basis_index = index
        Rep.__init__(self, q, dims, mats)

    @staticmethod
    def _realize(q, word, values):
        sy = word.system
        letters = word.letters
        m = len(letters)
        # interior position j (1-based, 1..m-1) sits at vertex t(omega_j)
        vert_of = {}
        index = {}
        dims = {v: 0 for v in q.vertices}
        for j in range(1, m):
            v = sy.t(letters[j - 1])
            vert_of[j] = v
            index[j] = dims[v]
            dims[v] += 1
        mats = {}
        for a in sorted(q.arrows):
            s, t = q.arrows[a]
            mats[a] = linalg.zeros(dims[t], dims[s])
        for v in q.special:
            mats[loop_token(v)] = linalg.zeros(dims[v], dims[v])
        one = Fraction(1)
        for j in range(1, m - 1):
            l = letters[j]  # omega_{j+1}
            if l.kind == "ar":
                if not l.inv:
                    mats[l.base][index[j + 1]][index[j]] = one
                else:
                    mats[l.base][index[j]][index[j + 1]] = one
            elif l.kind == "ep":
                e = mats[loop_token(l.base)]
                if not l.inv:
                    e[index[j + 1]][index[j]] = one
                    e[index[j + 1]][index[j + 1]] = one
                else:
                    e[index[j]][index[j]] = one
                    e[index[j]][index[j + 1]] = one
        if 0 in values:
            v = sy.t(letters[0])
            e = mats[loop_token(v)]
            e[index[1]][index[1]] = Fraction(values[0])
        if 1 in values:
            v = sy.s(letters[-1])
            e = mats[loop_token(v)]
            e[index[m - 1]][index[m - 1]] = Fraction(values[1])
        return dims, mats, index


def string_module(q, word, values=None):
    return StringModule(q, word, values or {})


# -- homomorphisms by linear algebra ------------------------------------


def intertwiner_space(r1, r2):
    """
    Basis of the space of homomorphisms r1 -> r2: families Phi_v with
    Phi_t M_g = N_g Phi_s for every solid arrow and dashed loop g.
    Returns a list of dicts vertex -> matrix.
    """
    q = r1.q
    verts = list(q.vertices)
    offsets, total = {}, 0
    for v in verts:
        offsets[v] = total
        total += r2.dims[v] * r1.dims[v]
    if total == 0:
        return []
    rows = []
    for name, s, t in r1.generators():
        A, B = r1.mats[name], r2.mats[name]
        # Phi_t A - B Phi_s = 0 : one equation per (row of r2_t, col of r1_s)
        for i in range(r2.dims[t]):
            for j in range(r1.dims[s]):
                row = [Fraction(0)] * total
                for k in range(r1.dims[t]):
                    row[offsets[t] + i * r1.dims[t] + k] += A[k][j]
                for k in range(r2.dims[s]):
                    row[offsets[s] + k * r1.dims[s] + j] -= B[i][k]
                if any(row):
                    rows.append(row)
    if not rows:
        ns = linalg.identity(total)
        basis = [[ns[i][c] for i in range(total)] for c in range(total)]
    else:
        basis = linalg.nullspace(rows)
    out = []
    for vec in basis:
        phi = {}
        for v in verts:
            r, c = r2.dims[v], r1.dims[v]
            phi[v] = [[vec[offsets[v] + i * c + j] for j in range(c)]
                      for i in range(r)]
        out.append(phi)
    return out


def hom_dim_linear(r1, r2):
    return len(intertwiner_space(r1, r2))


def is_isomorphic(r1, r2):
    if r1.q is not r2.q and r1.q.vertices != r2.q.vertices:
        return False
    if r1.dim_vector() != r2.dim_vector():
        return False
    if r1.total_dim() == 0:
        return True
    basis = intertwiner_space(r1, r2)
    if not basis:
        return False
    n = r1.total_dim() * len(basis) + 2
    for t in range(1, n + 1):
        ok = True
        for v in r1.q.vertices:
            if r1.dims[v] == 0:
                continue
            m = linalg.zeros(r1.dims[v], r1.dims[v])
            for k, phi in enumerate(basis):
                m = linalg.mat_add(m, linalg.scalar_mul(
                    Fraction(t) ** k, phi[v]))
            if not linalg.is_invertible(m):
                ok = False
                break
        if ok:
            return True
    return False


# -- projective and injective representations ---------------------------


class _Paths:
    """Reduced-path machinery for the skewed-gentle relations."""

    def __init__(self, q, cap=4000):
        self.q = q
        self.cap = cap
        self.zero_pairs = set(q.Z)  # (alpha, beta): beta after alpha is 0
        self.gens = {}
        for a in sorted(q.arrows):
            s, t = q.arrows[a]
            self.gens[a] = (s, t)
        for v in sorted(q.special):
            self.gens[loop_token(v)] = (v, v)

    def out_of(self, v):
        return [g for g, (s, t) in sorted(self.gens.items()) if s == v]

    def into(self, v):
        return [g for g, (s, t) in sorted(self.gens.items()) if t == v]

    def is_loop(self, g):
        return g.startswith("e") and g not in self.q.arrows

    def step_left(self, path, g):
        """Normal form of g . path, or None when zero; path may be ()."""
        if path:
            last = path[-1]
            if self.is_loop(g) and last == g:
                return path  # idempotent absorbs
            if (last, g) in self.zero_pairs:
                return None
        return path + (g,)

    def step_right(self, path, g):
        """Normal form of path . g (precomposition), or None when zero."""
        if path:
            first = path[0]
            if self.is_loop(g) and first == g:
                return path
            if (g, first) in self.zero_pairs:
                return None
        return (g,) + path


def _module_from_basis(q, basis, vert_of, act):
    """Build a Rep from an abstract basis with a generator action."""
    paths = _Paths(q)
    dims = {v: 0 for v in q.vertices}
    index = {}
    for b in basis:
        v = vert_of(b)
        index[b] = dims[v]
        dims[v] += 1
    mats = {}
    for g, (s, t) in sorted(paths.gens.items()):
        m = linalg.zeros(dims[t], dims[s])
        for b in basis:
            if vert_of(b) != s:
                continue
            img = act(b, g)
            if img is not None:
                m[index[img]][index[b]] = Fraction(1)
        mats[g] = m
    return Rep(q, dims, mats)


def _idempotent_of(q, item):
    """(vertex, tag) for a T^x index: plain arc or (special vertex, kappa)."""
    if isinstance(item, tuple):
        v, kappa = item
        if v not in q.special:
            raise ValueError("vertex %s is not special" % v)
        return v, ("+" if kappa == 0 else "-")
    if item in q.special:
        raise ValueError("special vertex %s needs a tag" % item)
    return item, None


def projective_rep(q, item):
    """
    The projective representation at a primitive idempotent: a vertex of
    the biquiver, with kappa in {0,1} selecting eps / (1-eps) at special
    vertices (kappa=0 gives loop-eigenvalue 1).
    """
    i, tag = _idempotent_of(q, item)
    paths = _Paths(q)
    eloop = loop_token(i) if tag is not None else None

    basis = []
    seen = set()
    stack = [()]
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        basis.append(p)
        if len(seen) > paths.cap:
            raise RuntimeError("projective at %s is too large" % i)
        end = paths.gens[p[-1]][1] if p else i
        for g in paths.out_of(end):
            if not p and g == eloop:
                continue  # absorbed or killed by the end idempotent
            np = paths.step_left(p, g)
            if np is not None and np != p:
                stack.append(np)
    basis.sort()

    def vert_of(p):
        return paths.gens[p[-1]][1] if p else i

    bset = set(basis)

    def act(p, g):
        if not p and g == eloop:
            return p if tag == "+" else None
        np = paths.step_left(p, g)
        if np is None:
            return None
        assert np in bset
        return np

    rep = _module_from_basis(q, basis, vert_of, act)
    rep.basis = basis
    return rep


def injective_rep(q, item):
    """The injective representation at a primitive idempotent (dual side)."""
    i, tag = _idempotent_of(q, item)
    paths = _Paths(q)
    eloop = loop_token(i) if tag is not None else None

    basis = []
    seen = set()
    stack = [()]
    while stack:
        p = stack.pop()
        if p in seen:
            continue
        seen.add(p)
        basis.append(p)
        if len(seen) > paths.cap:
            raise RuntimeError("injective at %s is too large" % i)
        start = paths.gens[p[0]][0] if p else i
        for g in paths.into(start):
            if not p and g == eloop:
                continue
            np = paths.step_right(p, g)
            if np is not None and np != p:
                stack.append(np)
    basis.sort()
    dims = {v: 0 for v in q.vertices}
    index = {}
    for p in basis:
        v = paths.gens[p[0]][0] if p else i
        index[p] = dims[v]
        dims[v] += 1
    bset = set(basis)

    def right_act(p, g):
        if not p and g == eloop:
            return p if tag == "+" else None
        np = paths.step_right(p, g)
        if np is None or np not in bset:
            return None if np is None else np
        return np

    mats = {}
    for g, (s, t) in sorted(paths.gens.items()):
        # dual of right multiplication: maps I_s -> I_t
        m = linalg.zeros(dims[t], dims[s])
        for p in basis:
            start = paths.gens[p[0]][0] if p else i
            if start != t:
                continue
            img = right_act(p, g)
            if img is not None:
                m[index[p]][index[img]] = Fraction(1)
        mats[g] = m
    rep = Rep(q, dims, mats)
    rep.basis = basis
    return rep


# -- tagged curves and markers -------------------------------------------


class TaggedCurve:
    """
    A tagged curve: either a word-curve (admissible word with tags at its
    two ends, tag forced 0 at non-puncture ends) or an arc of the tagged
    triangulation (arc name plus a tag at its puncture end, if any).
    """

    def __init__(self, kind, word=None, arc=None, tags=(0, 0)):
        self.kind = kind
        self.word = word
        self.arc = arc
        self.tags = tuple(tags)

    @classmethod
    def from_word(cls, word, tags=(0, 0)):
        sy = word.system
        t0 = tags[0] if sy.is_punctured(word.letters[0]) else 0
        t1 = tags[1] if sy.is_punctured(word.letters[-1]) else 0
        return cls("word", word=canonical_form_tagged(word, (t0, t1))[0],
                   tags=canonical_form_tagged(word, (t0, t1))[1])

    @classmethod
    def from_arc(cls, arc, kappa=0):
        return cls("arc", arc=arc, tags=(kappa, 0))

    @property
    def kappa(self):
        return self.tags[0]

    def key(self):
        if self.kind == "arc":
            return ("arc", self.arc, self.tags[0])
        return ("word", str(self.word), self.tags)

    def __eq__(self, other):
        return isinstance(other, TaggedCurve) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == "arc":
            return "TaggedCurve(arc %s, kappa=%d)" % (self.arc, self.tags[0])
        return "TaggedCurve(%s, tags=%d%d)" % (self.word, *self.tags)

    def __str__(self):
        if self.kind == "arc":
            return "arc %s tags=%d" % (self.arc, self.tags[0])
        return "%s tags=%d%d" % (self.word, *self.tags)


def canonical_form_tagged(word, tags):
    """Canonical representative of {(w,(a,b)), (w^-1,(b,a))}."""
    c = canonical_form(word)
    if c == word:
        return word, tuple(tags)
    return c, (tags[1], tags[0])


class Marker:
    """A summand of the reference cluster-tilting object."""

    def __init__(self, arc, kappa=0):
        self.arc = arc
        self.kappa = kappa

    def key(self):
        return ("marker", self.arc, self.kappa)

    def __eq__(self, other):
        return isinstance(other, Marker) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Marker(%s, kappa=%d)" % (self.arc, self.kappa)


class Context:
    """A triangulation with its biquiver, letter system and T^x data."""

    def __init__(self, tri, q, sy):
        self.tri = tri
        self.q = q
        self.sy = sy
        self._analyze_tagged()
        self._proj = None

    def _analyze_tagged(self):
        tri = self.tri
        self.folded_of = {}   # special vertex -> folded arc
        self.special_of = {}  # folded arc -> special vertex
        for t, desc in enumerate(tri.triangles):
            if desc[0] == "sf":
                folded, remaining = desc[1], desc[2]
                if remaining in self.q.special:
                    self.folded_of[remaining] = folded
                    self.special_of[folded] = remaining
        self.plain_arcs = [a for a in tri.arcs
                           if a not in self.q.special
                           and a not in self.special_of]

    def pi(self, arc):
        """pi_T: folded arcs map to their remaining side."""
        return self.special_of.get(arc, arc)

    def tagged_arcs(self):
        out = [TaggedCurve.from_arc(a, 0) for a in sorted(self.plain_arcs)]
        for g in sorted(self.special_of):
            out.append(TaggedCurve.from_arc(g, 0))
            out.append(TaggedCurve.from_arc(g, 1))
        return out

    def marker_index(self, marker):
        """The T^x index (vertex or (special, kappa)) of a marker."""
        base = self.pi(marker.arc)
        if base in self.q.special:
            return (base, marker.kappa)
        return base

    def markers(self):
        return [Marker(t.arc, t.tags[0]) for t in self.tagged_arcs()]

    def projectives(self):
        if self._proj is None:
            self._proj = [(m, projective_rep(self.q, self.marker_index(m)))
                          for m in self.markers()]
        return self._proj

    def decoration(self, marker):
        """Construction of the decoration V for a marker."""
        v = self.pi(marker.arc)
        dec = {"vertex": v, "dim": 1}
        if v in self.q.special:
            dec["eps"] = 1 - marker.kappa
        return dec

    def curves(self, maxlen):
        """All tagged curves with words of length <= maxlen, plus arcs."""
        out = list(self.tagged_arcs())
        for w in enumerate_admissible(self.sy, maxlen):
            sy = self.sy
            p0 = sy.is_punctured(w.letters[0])
            p1 = sy.is_punctured(w.letters[-1])
            for t0 in ([0, 1] if p0 else [0]):
                for t1 in ([0, 1] if p1 else [0]):
                    c = TaggedCurve.from_word(w, (t0, t1))
                    if c not in out:
                        out.append(c)
        return out


def make_context(tri):
    from .qp import build_qp
    from .words import build_letter_order
    q = build_qp(tri)
    sy = build_letter_order(q, tri)
    return Context(tri, q, sy)


def x_map(ctx, curve):
    """The bijection from tagged curves to string objects."""
    if curve.kind == "arc":
        return Marker(curve.arc, curve.tags[0])
    word, tags = curve.word, curve.tags
    sy = ctx.sy
    values = {}
    if sy.is_punctured(word.letters[0]):
        values[0] = tags[0]
    if sy.is_punctured(word.letters[-1]):
        values[1] = tags[1]
    return string_module(ctx.q, word, values)


def word_of_curve(ctx, curve):
    if curve.kind == "arc":
        raise InTriangulation("arc %s has no word" % curve.arc)
    return curve.word


def curve_of_word(ctx, word, tags=(0, 0)):
    from .words import is_admissible_word
    if not word.is_maximal() or not is_admissible_word(word):
        from .qp import NotAdmissible
        raise NotAdmissible("word %s is not admissible" % word)
    return TaggedCurve.from_word(word, tags)


def _match_projective(ctx, module):
    for marker, p in ctx.projectives():
        if is_isomorphic(module, p):
            return marker
    return None


def word_of_rep(ctx, rep):
    """
    The (word, values) pair realizing a representation known to be an
    indecomposable string module.
    """
    length = rep.total_dim() + 1
    target = rep.dim_vector()
    for w in enumerate_admissible(ctx.sy, length):
        if len(w) != length:
            continue
        p0 = ctx.sy.is_punctured(w.letters[0])
        p1 = ctx.sy.is_punctured(w.letters[-1])
        for t0 in ([0, 1] if p0 else [None]):
            for t1 in ([0, 1] if p1 else [None]):
                values = {}
                if t0 is not None:
                    values[0] = t0
                if t1 is not None:
                    values[1] = t1
                m = string_module(ctx.q, w, values)
                if m.dim_vector() != target:
                    continue
                if is_isomorphic(m, rep):
                    return w, values
    raise UnsupportedCurve("no word realizes the given representation")


def tagged_rotation(ctx, curve):
    """
    The rotation: move each marked-point end anticlockwise by one marked
    point and flip the tag at each puncture end.
    """
    if curve.kind == "arc":
        idx = ctx.marker_index(Marker(curve.arc, curve.tags[0]))
        inj = injective_rep(ctx.q, idx)
        w, values = word_of_rep(ctx, inj)
        return TaggedCurve.from_word(w, (values.get(0, 0), values.get(1, 0)))
    sy = ctx.sy
    word, tags = curve.word, curve.tags
    marker = _match_projective(ctx, x_map(ctx, curve))
    if marker is not None:
        base = ctx.folded_of.get(marker.arc, marker.arc)
        return TaggedCurve.from_arc(marker.arc, marker.kappa)
    p0 = sy.is_punctured(word.letters[0])
    p1 = sy.is_punctured(word.letters[-1])
    if p0 and p1:
        return TaggedCurve.from_word(word, (1 - tags[0], 1 - tags[1]))
    if p0:
        w2 = successor(word)
        return TaggedCurve.from_word(w2, (1 - tags[0], 0))
    if p1:
        w2 = right_successor(word)
        return TaggedCurve.from_word(w2, (0, 1 - tags[1]))
    w2 = both_successor(word)
    if w2 is None:
        raise UnsupportedCurve("rotation of %s failed" % word)
    return TaggedCurve.from_word(w2, (0, 0))


def tagged_rotation_inverse(ctx, curve):
    """Clockwise rotation; inverse of tagged_rotation."""
    if curve.kind == "arc":
        idx = ctx.marker_index(Marker(curve.arc, curve.tags[0]))
        proj = projective_rep(ctx.q, idx)
        w, values = word_of_rep(ctx, proj)
        return TaggedCurve.from_word(w, (values.get(0, 0), values.get(1, 0)))
    sy = ctx.sy
    word, tags = curve.word, curve.tags
    module = x_map(ctx, curve)
    for marker in ctx.markers():
        idx = ctx.marker_index(marker)
        if is_isomorphic(module, injective_rep(ctx.q, idx)):
            return TaggedCurve.from_arc(marker.arc, marker.kappa)
    p0 = sy.is_punctured(word.letters[0])
    p1 = sy.is_punctured(word.letters[-1])
    if p0 and p1:
        return TaggedCurve.from_word(word, (1 - tags[0], 1 - tags[1]))
    if p0:
        w2 = predecessor(word)
        return TaggedCurve.from_word(w2, (1 - tags[0], 0))
    if p1:
        w2 = right_predecessor(word)
        return TaggedCurve.from_word(w2, (0, 1 - tags[1]))
    w2 = both_predecessor(word)
    if w2 is None:
        raise UnsupportedCurve("inverse rotation of %s failed" % word)
    return TaggedCurve.from_word(w2, (0, 0))


def tau(ctx, x):
    """The translation on string objects; agrees with rotation under x_map."""
    if isinstance(x, Marker):
        rotated = tagged_rotation(ctx, TaggedCurve.from_arc(x.arc, x.kappa))
        return x_map(ctx, rotated)
    marker = _match_projective(ctx, x)
    if marker is not None:
        return marker
    word, values = x.word, x.values
    p0 = 0 in values
    p1 = 1 in values
    if p0 and p1:
        return string_module(ctx.q, word,
                             {0: 1 - values[0], 1: 1 - values[1]})
    if p0:
        return string_module(ctx.q, successor(word), {0: 1 - values[0]})
    if p1:
        return string_module(ctx.q, right_successor(word),
                             {1: 1 - values[1]})
    w2 = both_successor(word)
    if w2 is None:
        raise UnsupportedCurve("translation of %s failed" % word)
    return string_module(ctx.q, w2, {})


def shift(ctx, x):
    return tau(ctx, x)


def string_objects_equal(x, y):
    if isinstance(x, Marker) or isinstance(y, Marker):
        return x == y
    return is_isomorphic(x, y)


def completion_pair(ctx, curve):
    """
    For a curve with exactly one puncture end, the two tagged versions
    sharing its word (the value pair of the completed middle term).
    """
    word, tags = curve.word, curve.tags
    sy = curve.word.system
    p0 = sy.is_punctured(word.letters[0])
    p1 = sy.is_punctured(word.letters[-1])
    if p0 == p1:
        raise UnsupportedCurve("completion needs exactly one puncture end")
    if p0:
        return [TaggedCurve.from_word(word, (0, 0)),
                TaggedCurve.from_word(word, (1, 0))]
    return [TaggedCurve.from_word(word, (0, 0)),
            TaggedCurve.from_word(word, (0, 1))]


def radical_summands(q, item):
    """
    The indecomposable summands of the radical of the projective at a
    primitive idempotent, one per arrow the radical is generated by.
    """
    p = projective_rep(q, item)
    paths = _Paths(q)
    firsts = sorted(set(b[0] for b in p.basis if b))
    out = []
    for g in firsts:
        basis = [b for b in p.basis if b and b[0] == g]
        out.append(_sub_rep(q, paths, basis))
    return out


def _sub_rep(q, paths, basis):
    dims = {v: 0 for v in q.vertices}
    index = {}
    for b in basis:
        v = paths.gens[b[-1]][1]
        index[b] = dims[v]
        dims[v] += 1
    bset = set(basis)
    mats = {}
    for g, (s, t) in sorted(paths.gens.items()):
        m = linalg.zeros(dims[t], dims[s])
        for b in basis:
            if paths.gens[b[-1]][1] != s:
                continue
            img = paths.step_left(b, g)
            if img is not None and img in bset:
                m[index[img]][index[b]] = Fraction(1)
        mats[g] = m
    return Rep(q, dims, mats)


def _marker_middles(ctx, start, end):
    """Marker summands in the middle of the AR-triangle start -> E -> end.

    A marker T sits in the middle exactly when there is an irreducible map
    start -> T.  Shifting down turns this into an irreducible map from the
    end term into the projective P_T, and irreducible maps into a
    projective are precisely the inclusions of radical summands.  So when
    the end term is a word-curve its module must be a radical summand of
    P_T; when the end term is itself a marker, use the irreducible map
    T -> end instead, which becomes P_T -> P_end, so P_T must be a radical
    summand of P_end.
    """
    out = []
    if end.kind == "word":
        target = x_map(ctx, end)
        for marker in ctx.markers():
            idx = ctx.marker_index(marker)
            for s in radical_summands(ctx.q, idx):
                if is_isomorphic(target, s):
                    out.append(TaggedCurve.from_arc(marker.arc, marker.kappa))
                    break
        return out
    end_idx = ctx.marker_index(Marker(end.arc, end.tags[0]))
    summands = radical_summands(ctx.q, end_idx)
    for marker in ctx.markers():
        p = projective_rep(ctx.q, ctx.marker_index(marker))
        for s in summands:
            if is_isomorphic(p, s):
                out.append(TaggedCurve.from_arc(marker.arc, marker.kappa))
                break
    return out


def _coherent_middle(ctx, w, other_side_pred, end):
    """A one-sided pivot w is a mesh middle iff its other-side pivot is end."""
    if w is None or not w.is_maximal():
        return None
    from .words import is_admissible_word
    if not is_admissible_word(w):
        return None
    z = other_side_pred(w)
    if end.kind == "word":
        if z is None:
            return None
        if canonical_form(z) != canonical_form(end.word):
            return None
    else:
        if z is not None:
            zc = TaggedCurve.from_word(z, (0, 0))
            if _match_any_marker_word(ctx, zc) is None:
                return None
    return TaggedCurve.from_word(w, (0, 0))


def _match_any_marker_word(ctx, curve):
    module = x_map(ctx, curve)
    for marker, p in ctx.projectives():
        if is_isomorphic(module, p):
            return marker
    return None


def ar_triangle(ctx, curve):
    """
    The terms of the AR-triangle starting at the object of a tagged curve:
    (middle summands, end term).  Unsupported for puncture-puncture
    curves, whose middle term is not a string object.
    """
    if curve.kind == "arc":
        raise UnsupportedCurve("AR-triangles start at non-marker objects")
    sy = curve.word.system
    word = curve.word
    p0 = sy.is_punctured(word.letters[0])
    p1 = sy.is_punctured(word.letters[-1])
    if p0 and p1:
        raise UnsupportedCurve(
            "no string description for puncture-puncture curves")
    end = tagged_rotation_inverse(ctx, curve)
    if p0 or p1:
        # middle: both tagged versions of the one-sided pivot at the M end
        mid_word = predecessor(word) if p0 else right_predecessor(word)
        middle = []
        if mid_word is not None and mid_word.is_maximal():
            from .words import is_admissible_word
            if is_admissible_word(mid_word):
                middle = completion_pair(
                    ctx, TaggedCurve.from_word(mid_word, (0, 0)))
        return middle, end
    middle = []
    c = _coherent_middle(ctx, predecessor(word),
                         right_predecessor, end)
    if c is not None:
        middle.append(c)
    c = _coherent_middle(ctx, right_predecessor(word),
                         predecessor, end)
    if c is not None:
        middle.append(c)
    middle.extend(_marker_middles(ctx, curve, end))
    return middle, end
