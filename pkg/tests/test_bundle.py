import pytest

from artifact.bicross import universal_fibre_example
from artifact.bundle import BundleError, beta_condition_check, build_calculus, \
    connection_from_beta_universal, connection_to_splitting, hat_phi, n0_from_connection, \
    random_trivial_bundle_check, random_trivial_bundle_suite, right_ideal, splitting_to_connection, \
    trivial_bundle, verify_universal_bundle
from artifact.calculus import lmul, theta_map
from artifact.discrete import set_algebra
from artifact.hopf import ComoduleAlgebra, Group, function_algebra, group_algebra, tensor_algebra
from artifact.linalg import LinMap, Subspace, _iadd, tensor_vec
from artifact.scalars import QQ

one = QQ.one


def setup(m=2, H=None, beta=None):
    H = H or function_algebra(Group.cyclic(3))
    M = set_algebra([f"x{i}" for i in range(m)])
    CA, Phi, Phi_inv, Msub = trivial_bundle(M, H)
    B = verify_universal_bundle(CA, Msub)
    n = B.n
    if beta is None:
        beta = LinMap.zero_map(QQ, H.n, n * n)
    elif isinstance(beta, dict):
        cols = [dict() for _ in range(H.n)]
        for hb, entries in beta.items():
            for i, j, c in entries:
                for x, cx in tensor_vec({i: one}, H.unit, H.n).items():
                    for y, cy in tensor_vec({j: one}, H.unit, H.n).items():
                        _iadd(cols[hb], {x * n + y: cx * cy}, QQ(c))
        beta = LinMap(QQ, H.n, n * n, cols)
    return B, Phi, Phi_inv, beta


def test_trivial_bundle_passes():
    B, *_ = setup()
    assert B.report.ok
    assert B.M.dim == 2


def test_hopf_algebra_over_a_point():
    H = group_algebra(Group.cyclic(3))
    B, *_ = setup(1, H)
    assert B.horizontal.dim == 0


def test_trivial_coaction_is_not_a_bundle():
    M = set_algebra(["x", "y"])
    H = function_algebra(Group.cyclic(2))
    P = tensor_algebra(M, M)
    cols = [tensor_vec({i: one}, H.unit, H.n) for i in range(P.n)]
    CA = ComoduleAlgebra(P, H, LinMap(QQ, P.n, P.n * H.n, cols))
    with pytest.raises(BundleError):
        verify_universal_bundle(CA)


def test_trivial_connection_and_maximal_calculus():
    B, Phi, Phi_inv, beta = setup()
    conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
    assert conn.report.ok
    # beta_U = 0: omega_U(h) = Phi^{-1}(h1) d_U Phi(h2)
    H = B.H
    for i in range(H.n):
        want: dict = {}
        for x, c in H.delta[i].items():
            a, b = divmod(x, H.n)
            _iadd(want, lmul(B.P, Phi_inv.cols[a], B.U.d(Phi.cols[b])), c)
        assert conn({i: one}) == {k: v for k, v in want.items() if v}
    bc = build_calculus(B, Subspace.zero(QQ, H.n), conn)
    assert bc.N.dim == 0
    assert bc.dim == B.U.omega1.dim


def test_beta_must_be_horizontal():
    B, Phi, Phi_inv, _ = setup()
    n = B.n
    bad = LinMap(QQ, 3, n * n, [{}, {0 * n + 1: one, 0: -one}, {}])
    with pytest.raises(BundleError):
        connection_from_beta_universal(B, Phi, bad, Phi_inv)


def test_n0_of_zero_ideal_is_zero():
    B, Phi, Phi_inv, beta = setup(beta={1: [(0, 1, 2)]})
    conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
    assert n0_from_connection(B, Subspace.zero(QQ, 3), conn).dim == 0


@pytest.mark.parametrize("nhor", ["maximal", "minimal"])
def test_calculus_with_ideal(nhor):
    B, Phi, Phi_inv, beta = setup(3, beta={1: [(0, 1, 2)], 2: [(1, 2, -1)]})
    conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
    Q = right_ideal(B.H, [{2: one}])
    bc = build_calculus(B, Q, conn, nhor)
    assert bc.report.ok
    # uniqueness: N is inside any subbimodule containing N_hor and omega_U(Q)
    N = B.U.closure(list(bc.Nhor.rows) + [conn(q) for q in Q.rows])
    assert N == bc.N
    # beta condition holds for the construction
    assert beta_condition_check(B, Q, bc.N, Phi, Phi_inv, beta).ok
    # hat-Phi description of N
    th, _ = theta_map(B.H)
    H = B.H
    rows = list(bc.Nhor.rows)
    for g in range(H.n):
        for qrow in Q.rows:
            t = th.apply(tensor_vec({g: one}, qrow, H.n))
            v: dict = {}
            for x, c in t.items():
                a, b = divmod(x, H.n)
                _iadd(v, hat_phi(B, Phi, Phi_inv, beta, a, b), c)
            rows.append(v)
    assert B.U.closure(rows) == bc.N


def test_random_beta_violates_condition():
    B, Phi, Phi_inv, beta = setup(2, beta={1: [(0, 1, 1)]})
    conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
    Q = right_ideal(B.H, [{2: one}])
    bc = build_calculus(B, Q, conn, "maximal")
    _, _, _, other = setup(2, beta={2: [(0, 1, 5)], 1: [(1, 0, 3)]})
    assert not beta_condition_check(B, Q, bc.N, Phi, Phi_inv, other).ok


def test_canonical_connection_and_splitting_round_trip():
    rep = universal_fibre_example(2, 3)
    bcx = rep.calc
    bc = bcx.bc
    ibar = connection_to_splitting(bc)
    back = splitting_to_connection(bc, ibar)
    assert back.cols == bc.omega.cols
    assert connection_to_splitting(bc, back).cols == ibar.cols


def test_random_trivial_bundles():
    rep = random_trivial_bundle_suite(seed=3, count=6)
    assert rep.ok, rep.to_text()
    assert random_trivial_bundle_check(7).to_json() == random_trivial_bundle_check(7).to_json()
