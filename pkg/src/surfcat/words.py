r"""
The letter and word calculus of skewed-gentle pairs.

From the biquiver of a triangulation we form the extended biquiver with
two auxiliary vertices i+, i- and arrows a_{i+}, a_{i-} at every vertex i.
The letters at i are split into two linearly ordered sets L_+(i), L_-(i);
words are right-to-left sequences of letters alternating sides at every
vertex.  The induced partial order on left-inextensible words drives the
successor/predecessor operations, and maximal words satisfying the
admissibility conditions (A1)/(A2) parametrize curves on the surface.

A word ``w`` is stored in traversal order: ``w.letters[0]`` is the first
(rightmost) letter.  The text rendering follows the right-to-left
convention, e.g. ``a3- c^-1 e1^-1 c d^-1 a4-^-1``.
"""

from collections import namedtuple

Letter = namedtuple("Letter", "kind base inv")
# kind "ar": base = arrow name
# kind "ep": base = special vertex (dashed loop)
# kind "ax": base = (vertex, theta) auxiliary arrow


class WordError(ValueError):
    pass


class NotMaximal(ValueError):
    pass


class NotInextensible(ValueError):
    pass


def inv(letter):
    return Letter(letter.kind, letter.base, not letter.inv)


def letter_token(letter):
    if letter.kind == "ar":
        tok = letter.base
    elif letter.kind == "ep":
        tok = "e%s" % letter.base
    else:
        tok = "a%s%s" % letter.base
    return tok + "^-1" if letter.inv else tok


MAX_EXTENSION = 400


class LetterSystem:
    """
    The ordered letter sets of a triangulation's biquiver, together with
    the side (triangle slot) assignment that realizes them.
    """

    def __init__(self, q, tri):
        self.q = q
        self.tri = tri
        self.special = set(q.special)
        self.side_of = {}        # (vertex, theta) -> triangle slot
        self.theta_of_slot = {}  # slot -> (vertex, theta)
        self.orders = {}         # (vertex, theta) -> descending letter list
        self._build()
        self._index()

    def _build(self):
        tri, q = self.tri, self.q
        arrows_by_tri = {}
        for a, t in q.arrow_triangle.items():
            arrows_by_tri.setdefault(t, []).append(a)
        for i in q.vertices:
            slots = list(tri.slots[i])
            if i in self.special:
                sf = [s for s in slots if tri.is_sf[s[0]]]
                other = [s for s in slots if not tri.is_sf[s[0]]]
                if len(sf) != 1 or len(other) != 1:
                    raise WordError("special vertex %s has bad slots" % i)
                assign = {"+": other[0], "-": sf[0]}
            else:
                slots.sort()
                assign = {"+": slots[0], "-": slots[1]}
            for theta, slot in assign.items():
                self.side_of[(i, theta)] = slot
                self.theta_of_slot[slot] = (i, theta)
                t = slot[0]
                if tri.is_sf[t]:
                    eps = Letter("ep", i, False)
                    order = [inv(eps), Letter("ax", (i, theta), False), eps]
                else:
                    alpha = [a for a in arrows_by_tri.get(t, [])
                             if q.arrows[a][1] == i]
                    beta = [a for a in arrows_by_tri.get(t, [])
                            if q.arrows[a][0] == i]
                    order = []
                    if alpha:
                        order.append(Letter("ar", alpha[0], True))
                    order.append(Letter("ax", (i, theta), False))
                    if beta:
                        order.append(Letter("ar", beta[0], False))
                self.orders[(i, theta)] = order

    def _index(self):
        self.home = {}  # letter -> (vertex, theta, position)
        for (i, theta), order in self.orders.items():
            for pos, l in enumerate(order):
                if l in self.home:
                    raise WordError("letter %s appears twice" % (l,))
                self.home[l] = (i, theta, pos)
        self.token_table = {letter_token(l): l for l in self.home}
        for (i, theta) in self.side_of:
            l = Letter("ax", (i, theta), True)
            self.token_table[letter_token(l)] = l

    # -- letter structure ------------------------------------------------

    def s(self, letter):
        """Source vertex of a letter (None when outside Q0)."""
        if letter.kind == "ar":
            s, t = self.q.arrows[letter.base]
            return t if letter.inv else s
        if letter.kind == "ep":
            return letter.base
        # aux arrow i -> i_theta
        return None if letter.inv else letter.base[0]

    def t(self, letter):
        if letter.kind == "ar":
            s, t = self.q.arrows[letter.base]
            return s if letter.inv else t
        if letter.kind == "ep":
            return letter.base
        return letter.base[0] if letter.inv else None

    def is_punctured(self, letter):
        return letter.kind == "ax" and letter.base[0] in self.special \
            and letter.base[1] == "-"

    def home_side(self, letter):
        """(vertex, theta) of the ordered set containing the letter."""
        h = self.home.get(letter)
        return (h[0], h[1]) if h else None

    def compare_letters(self, l1, l2):
        """-1/0/1 within one ordered set; None if incomparable."""
        if l1 == l2:
            return 0
        h1, h2 = self.home.get(l1), self.home.get(l2)
        if h1 is None or h2 is None or h1[:2] != h2[:2]:
            return None
        return 1 if h1[2] < h2[2] else -1  # descending storage

    def available_after(self, letter):
        """Letters that may follow ``letter`` in a word (on its left)."""
        v = self.t(letter)
        if v is None:
            return []
        side = self.home_side(inv(letter))
        if side is None:  # inverse aux letter: home is the aux vertex
            assert letter.kind == "ax" and letter.inv
            theta = letter.base[1]
        else:
            theta = side[1]
        other = "-" if theta == "+" else "+"
        return self.orders[(v, other)]

    def root_letters(self):
        """
        First-letter candidates for left-inextensible word families: the
        letters of every L_theta(i) plus the inverse auxiliary letters.
        """
        out = []
        for key in sorted(self.orders):
            out.extend(self.orders[key])
        for key in sorted(self.side_of):
            out.append(Letter("ax", key, True))
        return out

    # -- words -----------------------------------------------------------

    def word(self, letters, vertex=None):
        return Word(self, tuple(letters), vertex)

    def trivial_word(self, vertex):
        return Word(self, (), vertex)

    def parse_word(self, text):
        toks = text.split()
        letters = []
        for tok in reversed(toks):
            if tok not in self.token_table:
                raise WordError("unknown letter token %r" % tok)
            letters.append(self.token_table[tok])
        return self.word(letters)


class Word:
    """A word in traversal order (letters[0] = rightmost letter)."""

    def __init__(self, system, letters, vertex=None):
        self.system = system
        self.letters = tuple(letters)
        if not letters and vertex is None:
            raise WordError("trivial word needs a vertex")
        self.vertex = vertex
        if letters:
            self._check()

    def _check(self):
        sy = self.system
        for j in range(len(self.letters) - 1):
            a, b = self.letters[j], self.letters[j + 1]
            va, vb = sy.t(a), sy.s(b)
            if va is None or va != vb:
                raise WordError("letters %s, %s do not compose"
                                % (letter_token(a), letter_token(b)))
            sa = sy.home_side(inv(a))
            sb = sy.home_side(b)
            if sa is None or sb is None or sa[0] != sb[0] or sa[1] == sb[1]:
                raise WordError("letters %s, %s on the same side"
                                % (letter_token(a), letter_token(b)))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return bool(isinstance(other, Word) and self.letters == other.letters
                    and (self.letters or self.vertex == other.vertex))

    def __hash__(self):
        return hash((self.letters, None if self.letters else self.vertex))

    def __repr__(self):
        return "Word(%s)" % str(self)

    def __str__(self):
        if not self.letters:
            return "1_%s" % self.vertex
        return " ".join(letter_token(l) for l in reversed(self.letters))

    def inverse(self):
        if not self.letters:
            return self
        return Word(self.system, tuple(inv(l) for l in reversed(self.letters)))

    def first(self):
        return self.letters[0]

    def last(self):
        return self.letters[-1]

    def is_left_inextensible(self):
        return bool(self.letters) and self.system.t(self.letters[-1]) is None

    def is_right_inextensible(self):
        return bool(self.letters) and self.system.s(self.letters[0]) is None

    def is_maximal(self):
        return self.is_left_inextensible() and self.is_right_inextensible()

    def punctured_positions(self):
        """1-based positions of punctured letters (only 1 and m possible)."""
        sy = self.system
        return [j + 1 for j, l in enumerate(self.letters) if sy.is_punctured(l)]

    def subword(self, i, j):
        """
        The subword strictly between positions i and j (1-based letters,
        0 <= i < j <= m+1); a trivial word when j = i+1.
        """
        m = len(self.letters)
        if not (0 <= i < j <= m + 1):
            raise WordError("bad subword bounds (%d, %d)" % (i, j))
        if j == i + 1:
            if i == 0:
                v = self.system.s(self.letters[0]) if self.letters else self.vertex
            else:
                v = self.system.t(self.letters[i - 1])
            return Word(self.system, (), v)
        return Word(self.system, self.letters[i:j - 1])


def concat(letter, w):
    """The word letter . w (extension at the left end), or None."""
    try:
        return Word(w.system, w.letters + (letter,))
    except WordError:
        return None


def compare(w1, w2):
    """
    Compare two words: 1 if w1 > w2, -1 if w1 < w2, 0 if equal, None if
    incomparable (different families or one a proper prefix of the other).
    """
    sy = w1.system
    for a, b in zip(w1.letters, w2.letters):
        if a == b:
            continue
        return sy.compare_letters(a, b)
    if len(w1) == len(w2):
        return 0
    return None


def _extend_greedy(word, biggest, bound=MAX_EXTENSION):
    """Extend to a left-inextensible word always taking the extreme letter."""
    sy = word.system
    letters = list(word.letters)
    while True:
        if sy.t(letters[-1]) is None:
            return Word(sy, tuple(letters))
        avail = sy.available_after(letters[-1])
        if not avail:
            return Word(sy, tuple(letters))
        letters.append(avail[0] if biggest else avail[-1])
        if len(letters) > bound:
            raise WordError("extension exceeded %d letters (infinite family?)"
                            % bound)


def _neighbor(w, smaller):
    sy = w.system
    if not w.is_left_inextensible():
        raise NotInextensible("word %s is not left-inextensible" % w)
    letters = w.letters
    for j in range(len(letters) - 1, -1, -1):
        if j == 0:
            side = sy.home_side(letters[0])
            if side is None:
                continue  # inverse aux first letter: family of one root
            avail = sy.orders[side]
        else:
            avail = sy.available_after(letters[j - 1])
        pos = avail.index(letters[j])
        cands = avail[pos + 1:] if smaller else avail[:pos]
        if not cands:
            continue
        pick = cands[0] if smaller else cands[-1]
        prefix = Word(sy, letters[:j] + (pick,))
        return _extend_greedy(prefix, biggest=smaller)
    return None


def successor(w):
    """The largest left-inextensible word strictly smaller than w."""
    return _neighbor(w, smaller=True)


def predecessor(w):
    return _neighbor(w, smaller=False)


def right_successor(w):
    """w^bt = (bt(w^-1))^-1, the successor at the right end."""
    if not w.is_right_inextensible():
        raise NotInextensible("word %s is not right-inextensible" % w)
    s = successor(w.inverse())
    return None if s is None else s.inverse()


def right_predecessor(w):
    if not w.is_right_inextensible():
        raise NotInextensible("word %s is not right-inextensible" % w)
    p = predecessor(w.inverse())
    return None if p is None else p.inverse()


def both_successor(w):
    """
    bt w bt for maximal words, composing the two one-sided successors in
    whichever order is defined; None when neither order goes through.
    """
    s = successor(w)
    if s is not None and s.is_right_inextensible():
        out = right_successor(s)
        if out is not None:
            return out
    s = right_successor(w)
    if s is not None and s.is_left_inextensible():
        return successor(s)
    return None


def both_predecessor(w):
    """yd w yd, dual of both_successor."""
    p = predecessor(w)
    if p is not None and p.is_right_inextensible():
        out = right_predecessor(p)
        if out is not None:
            return out
    p = right_predecessor(w)
    if p is not None and p.is_left_inextensible():
        return predecessor(p)
    return None


def F_image(w):
    """
    The cyclic letter sequence F(w_m)...F(w_1)F(w_2^-1)...F(w_{m-1}^-1)
    with all letters of the special forms collapsed to a marker per dashed
    loop.
    """
    sy = w.system

    def F(l):
        if l.kind == "ep":
            return ("estar", l.base)
        if sy.is_punctured(l):
            return ("estar", l.base[0])
        return l

    m = len(w.letters)
    seq = [F(l) for l in reversed(w.letters)]
    seq += [F(inv(w.letters[j])) for j in range(1, m - 1)]
    return seq


def is_primitive(seq):
    """A cyclic sequence is primitive iff it is not a proper power."""
    n = len(seq)
    if n <= 1:
        return True
    double = seq + seq
    for off in range(1, n):
        if double[off:off + n] == seq:
            return False
    return True


def is_admissible_word(w, with_reason=False):
    """
    Check conditions (A1) and (A2) on a maximal word.
    """
    sy = w.system
    if not w.is_maximal():
        raise NotMaximal("word %s is not maximal" % w)
    letters = w.letters
    m = len(letters)
    for idx in range(m):
        l = letters[idx]
        if l.kind != "ep":
            continue
        i = idx + 1  # 1-based position
        left = Word(sy, tuple(inv(x) for x in reversed(letters[:i - 1])))
        right = Word(sy, letters[i:])
        c = compare(left, right)
        want = 1 if not l.inv else -1
        if c != want:
            if with_reason:
                return False, "A1 at position %d" % i
            return False
    if len(w.punctured_positions()) == 2:
        if not is_primitive(F_image(w)):
            if with_reason:
                return False, "A2"
            return False
    return (True, "ok") if with_reason else True


def canonical_form(w):
    """The canonical representative of {w, w^-1}."""
    wi = w.inverse()
    k1 = tuple((l.kind, str(l.base), l.inv) for l in w.letters)
    k2 = tuple((l.kind, str(l.base), l.inv) for l in wi.letters)
    return w if k1 <= k2 else wi


def enumerate_left_inextensible(system, root, maxlen):
    """All left-inextensible words of length <= maxlen starting with root."""
    out = []
    stack = [(root,)]
    while stack:
        letters = stack.pop()
        if system.t(letters[-1]) is None:
            out.append(Word(system, letters))
            continue
        if len(letters) >= maxlen:
            continue
        for l in system.available_after(letters[-1]):
            stack.append(letters + (l,))
    return out


def enumerate_admissible(system, maxlen):
    """
    Canonical representatives of all admissible words of length <= maxlen.
    """
    seen = set()
    out = []
    for i, theta in sorted(system.side_of):
        root = Letter("ax", (i, theta), True)
        for w in enumerate_left_inextensible(system, root, maxlen):
            if not w.is_maximal():
                continue
            if not is_admissible_word(w):
                continue
            c = canonical_form(w)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def build_letter_order(q, tri):
    return LetterSystem(q, tri)
