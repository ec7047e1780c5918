r"""
Exact linear algebra over the rationals.

Small dense matrices with ``fractions.Fraction`` entries.  This is all the
representation-theoretic parts of the package need: ranks, kernels, images,
solving, and splittings of surjections/injections used when mutating
decorated representations.  Matrices are lists of lists, row major.
"""

from fractions import Fraction


def mat(rows):
    """Deep-copy ``rows`` into a Fraction matrix."""
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = Fraction(1)
    return M


def shape(M):
    return (len(M), len(M[0]) if M else 0)


def mat_mul(A, B):
    ma, na = shape(A)
    mb, nb = shape(B)
    if na != mb:
        raise ValueError("dimension mismatch in mat_mul: %s x %s" % ((ma, na), (mb, nb)))
    C = zeros(ma, nb)
    for i in range(ma):
        Ai = A[i]
        Ci = C[i]
        for k in range(na):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(nb):
                    if Bk[j]:
                        Ci[j] += a * Bk[j]
    return C


def mat_add(A, B):
    m, n = shape(A)
    if shape(B) != (m, n):
        raise ValueError("dimension mismatch in mat_add")
    return [[A[i][j] + B[i][j] for j in range(n)] for i in range(m)]


def mat_neg(A):
    return [[-x for x in row] for row in A]


def mat_sub(A, B):
    return mat_add(A, mat_neg(B))


def scalar_mul(c, A):
    c = Fraction(c)
    return [[c * x for x in row] for row in A]


def transpose(A):
    m, n = shape(A)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def hstack(blocks):
    """Concatenate matrices with equal row counts side by side."""
    blocks = [B for B in blocks if shape(B)[1] > 0 or shape(B)[0] > 0]
    if not blocks:
        return []
    m = len(blocks[0])
    for B in blocks:
        if len(B) != m:
            raise ValueError("hstack: row count mismatch")
    return [sum((list(B[i]) for B in blocks), []) for i in range(m)]


def vstack(blocks):
    """Concatenate matrices with equal column counts on top of each other."""
    out = []
    width = None
    for B in blocks:
        for row in B:
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("vstack: column count mismatch")
            out.append(list(row))
    return out


def block_diag(blocks):
    ms = [shape(B)[0] for B in blocks]
    ns = [shape(B)[1] for B in blocks]
    M = zeros(sum(ms), sum(ns))
    r = c = 0
    for B, m, n in zip(blocks, ms, ns):
        for i in range(m):
            for j in range(n):
                M[r + i][c + j] = B[i][j]
        r += m
        c += n
    return M


def rref(M):
    """
    Reduced row echelon form.

    Returns ``(R, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row of ``R``.
    """
    R = [list(row) for row in M]
    m, n = shape(R)
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = Fraction(1) / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M):
    """
    Basis of ``ker M`` as a list of column vectors (each a length-n list).
    ``M`` maps column vectors of length n to length m.
    """
    m, n = shape(M)
    if n == 0:
        return []
    if m == 0:
        return [[Fraction(i == j) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def column_space(M):
    """Basis of the column space, as a list of column vectors."""
    m, n = shape(M)
    if m == 0 or n == 0:
        return []
    _, pivots = rref(M)
    return [[M[i][j] for i in range(m)] for j in pivots]


def cols_to_matrix(cols, m):
    """Pack a list of length-m column vectors into an m x k matrix."""
    if not cols:
        return [[] for _ in range(m)]
    return [[col[i] for col in cols] for i in range(m)]


def solve(A, b):
    """
    One solution x of ``A x = b`` (b a column vector), or None if
    inconsistent.
    """
    m, n = shape(A)
    aug = [list(A[i]) + [Fraction(b[i])] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = R[r][n]
    return x


def solve_matrix(A, B):
    """One solution X of ``A X = B``, or None."""
    m, n = shape(A)
    mb, k = shape(B)
    if mb != m:
        raise ValueError("solve_matrix: shape mismatch")
    cols = []
    for j in range(k):
        x = solve(A, [B[i][j] for i in range(m)])
        if x is None:
            return None
        cols.append(x)
    return cols_to_matrix(cols, n)


def preimage_section(A):
    """
    For A: k^n -> k^m, return S with ``A S A = A`` restricted to im(A); i.e.
    S sends each image column basis vector to one preimage.  Returned as a
    pair (img_basis_matrix, S) with A S = identity on the image basis.
    """
    m, n = shape(A)
    img = column_space(A)
    Img = cols_to_matrix(img, m)
    S = solve_matrix(A, Img)
    return Img, S


def coker_projection(A):
    """
    For A: k^n -> k^m, return (P, d) where P is a d x m matrix whose rows
    project k^m onto a complement basis of im(A), i.e. P is surjective with
    ker P = im A ... composed with the quotient identification.
    """
    m, n = shape(A)
    img = column_space(A)
    r = len(img)
    # Extend image basis with standard vectors to a basis of k^m.
    basis = list(img)
    for j in range(m):
        e = [Fraction(i == j) for i in range(m)]
        trial = cols_to_matrix(basis + [e], m)
        if rank(trial) > len(basis):
            basis.append(e)
        if len(basis) == m:
            break
    B = cols_to_matrix(basis, m)  # change of basis: new -> std
    Binv = solve_matrix(B, identity(m))
    # Rows r..m-1 of Binv give coordinates along the complement.
    P = [Binv[i] for i in range(r, m)]
    return P, m - r


def is_invertible(A):
    m, n = shape(A)
    return m == n and rank(A) == n


def inverse(A):
    if not is_invertible(A):
        raise ValueError("matrix not invertible")
    return solve_matrix(A, identity(len(A)))
