from fractions import Fraction

from hypothesis import given, strategies as st

from surfcat import linalg as la


def test_rref_rank():
    M = la.mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert la.rank(M) == 2
    R, piv = la.rref(M)
    assert piv == [0, 1]
    assert R[0][0] == 1 and R[1][1] == 1


def test_nullspace_is_kernel():
    M = la.mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    for v in la.nullspace(M):
        Mv = la.mat_mul(M, la.cols_to_matrix([v], 3))
        assert all(x[0] == 0 for x in Mv)
    assert len(la.nullspace(M)) == 3 - la.rank(M)


def test_solve():
    A = la.mat([[1, 1], [0, 1]])
    x = la.solve(A, [3, 2])
    assert x == [Fraction(1), Fraction(2)]
    B = la.mat([[1, 1], [1, 1]])
    assert la.solve(B, [0, 1]) is None


def test_inverse():
    A = la.mat([[2, 1], [1, 1]])
    Ainv = la.inverse(A)
    assert la.mat_mul(A, Ainv) == la.identity(2)


def test_coker_projection():
    A = la.mat([[1, 0], [0, 0], [1, 0]])
    P, d = la.coker_projection(A)
    assert d == 2
    # P kills the image of A
    PA = la.mat_mul(P, A)
    assert all(all(x == 0 for x in row) for row in PA)
    assert la.rank(P) == 2


def test_preimage_section():
    A = la.mat([[1, 2], [2, 4]])
    Img, S = la.preimage_section(A)
    assert la.mat_mul(A, S) == Img


@st.composite
def small_matrix(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    return [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(m)]


@given(small_matrix())
def test_rank_nullity(M):
    M = la.mat(M)
    m, n = la.shape(M)
    assert la.rank(M) + len(la.nullspace(M)) == n
    assert la.rank(M) == la.rank(la.transpose(M))


@given(small_matrix())
def test_column_space_spans(M):
    M = la.mat(M)
    m, n = la.shape(M)
    cols = la.column_space(M)
    assert len(cols) == la.rank(M)
    stacked = la.hstack([M, la.cols_to_matrix(cols, m)]) if cols else M
    assert la.rank(stacked) == la.rank(M)
