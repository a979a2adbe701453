import sympy
from hypothesis import given, settings, strategies as st

from artifact.linalg import LinMap, Quotient, Subspace, intersect, kernel, image, saturate, solve, span_sum, \
    tensor_vec, vec_add
from artifact.scalars import QQ, QQq, Cyclotomic

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def linmap(rows):
    """Matrix with the given rows as a map K^cols -> K^rows."""
    return LinMap.from_dense(QQ, rows)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_nullity_against_sympy(rows):
    f = linmap(rows)
    M = sympy.Matrix(rows)
    assert image(f).dim == M.rank()
    ker = kernel(f)
    assert ker.dim == len(rows[0]) - M.rank()
    for v in ker.rows:
        assert not f.apply(v)


@settings(max_examples=60, deadline=None)
@given(matrices, matrices)
def test_sum_and_intersection_dimensions(a, b):
    n = min(len(a[0]), len(b[0]))
    A = Subspace.span(QQ, n, [{j: QQ(x) for j, x in enumerate(r[:n]) if x} for r in a])
    B = Subspace.span(QQ, n, [{j: QQ(x) for j, x in enumerate(r[:n]) if x} for r in b])
    assert span_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
    assert A.issubspace(span_sum(A, B))
    assert intersect(A, B).issubspace(A)


def test_rref_is_canonical():
    rows = [{0: QQ(2), 1: QQ(4)}, {0: QQ(1), 1: QQ(2), 2: QQ(1)}]
    A = Subspace.span(QQ, 3, rows)
    B = Subspace.span(QQ, 3, list(reversed(rows)) + [vec_add(rows[0], rows[1])])
    assert A == B
    assert A.rows == B.rows


def test_quotient_projection_kills_subspace():
    N = Subspace.span(QQ, 4, [{0: QQ(1), 1: QQ(1)}, {2: QQ(1), 3: QQ(-1)}])
    Q = Quotient(N)
    assert Q.dim == 2
    for r in N.rows:
        assert not Q.project(r)
    for k in range(Q.dim):
        assert Q.project(Q.lift({k: QQ.one})) == {k: QQ.one}


def test_solve():
    f = LinMap.from_dense(QQ, [[1, 2], [3, 4]])
    x = solve(f, {0: QQ(5), 1: QQ(6)})
    assert f.apply(x) == {0: QQ(5), 1: QQ(6)}
    g = LinMap.from_dense(QQ, [[1, 1], [1, 1]])
    assert solve(g, {0: QQ(1)}) is None


def test_saturate_shift_operator():
    n = 4
    shift = LinMap(QQ, n, n, [{i + 1: QQ.one} if i + 1 < n else {} for i in range(n)])
    S = saturate(QQ, n, [{1: QQ.one}], [shift])
    assert S.dim == 3


def test_tensor_vec_index_convention():
    assert tensor_vec({1: QQ(2)}, {2: QQ(3)}, 4) == {1 * 4 + 2: QQ(6)}


def test_other_fields():
    K = Cyclotomic(3)
    z = K.zeta()
    f = LinMap(K, 2, 1, [{0: K.one}, {0: z}])
    assert kernel(f).dim == 1
    q = QQq.q
    g = LinMap(QQq, 2, 2, [{0: q, 1: QQq.one}, {0: q * q, 1: q}])
    assert kernel(g).dim == 1
