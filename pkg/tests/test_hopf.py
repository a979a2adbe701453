import json

import pytest

from artifact.hopf import FinHopf, Group, HopfError, adjoint_coaction, check_hopf_axioms, convolution, \
    convolution_inverse, function_algebra, group_algebra, invariant_subalgebra, left_integral, tensor_hopf
from artifact.linalg import LinMap, Subspace
from artifact.scalars import QQ, Cyclotomic

Z2, Z3, Z6, S3 = Group.cyclic(2), Group.cyclic(3), Group.cyclic(6), Group.symmetric3()


@pytest.mark.parametrize("G", [Z2, Z3, Z6, S3], ids=lambda G: G.name)
@pytest.mark.parametrize("build", [function_algebra, group_algebra], ids=["C(G)", "CG"])
def test_axioms(G, build):
    assert check_hopf_axioms(build(G)).ok


def test_function_algebra_z3_coproduct():
    H = function_algebra(Z3)
    s = Z3.index("g")
    d = H.delta[s]
    n = H.n
    want = {(0, 1), (1, 0), (2, 2)}
    assert {divmod(x, n) for x in d} == want


def test_function_algebra_z2_antipode_fixed():
    H = function_algebra(Z2)
    assert H.S({1: QQ.one}) == {1: QQ.one}


def test_group_algebra_cyclotomic_counit():
    K = Cyclotomic(3)
    H = group_algebra(Z3, K)
    z = K.zeta()
    assert H.eps({0: K.one, 1: z, 2: z * z}) == K.zero


def test_corrupted_antipode_is_reported():
    H = group_algebra(Z3)
    bad = FinHopf(QQ, H.labels, H.mult, H.unit, H.delta, H.counit, LinMap.identity(QQ, 3), "bad", validate=False)
    rep = check_hopf_axioms(bad)
    fails = {c.name: c.witness for c in rep.failures()}
    assert any("antipode" in k for k in fails)
    assert "g" in fails.values()
    with pytest.raises(HopfError):
        FinHopf(QQ, H.labels, H.mult, H.unit, H.delta, H.counit, LinMap.identity(QQ, 3), "bad")


def test_group_table_validation():
    with pytest.raises(HopfError):
        Group([[0, 1], [0, 1]])
    with pytest.raises(HopfError):
        Group([[1, 0], [0, 1]], identity=0)


def test_group_json_roundtrip():
    data = S3.to_json()
    assert data["schema"] == 1
    G = Group.from_json(json.dumps(data))
    assert G.table == S3.table and G.labels == S3.labels


def test_adjoint_coaction_abelian_trivial_on_group_likes():
    H = group_algebra(Z3)
    Ad = adjoint_coaction(H)
    for g in range(3):
        assert Ad.apply({g: QQ.one}) == {g * 3 + 0: QQ.one}


def test_adjoint_coaction_is_coaction():
    H = function_algebra(S3)
    Ad = adjoint_coaction(H)
    n = H.n
    I = LinMap.identity(QQ, n)
    for i in range(n):
        lhs = Ad.kron(I).apply(Ad.apply({i: QQ.one}))
        rhs = I.kron(H.coproduct_map()).apply(Ad.apply({i: QQ.one}))
        assert lhs == rhs
    ker = H.ker_counit()
    KH = ker.tensor(Subspace.full(QQ, n))
    assert all(KH.contains(Ad.apply(r)) for r in ker.rows)


def test_convolution_inverse_of_identity_is_antipode():
    H = function_algebra(S3)
    g = convolution_inverse(LinMap.identity(QQ, H.n), H, H)
    assert g.cols == H.antipode.cols
    assert convolution(LinMap.identity(QQ, H.n), g, H, H).cols == convolution(g, LinMap.identity(QQ, H.n), H, H).cols


def test_left_integrals():
    assert left_integral(function_algebra(Z2)) == [QQ.parse("1/2")] * 2
    assert left_integral(group_algebra(Z3)) == [1, 0, 0]


def test_invariants_of_tensor_bundle():
    from artifact.bundle import trivial_bundle
    from artifact.discrete import set_algebra

    M = set_algebra(["x", "y"])
    H = function_algebra(Z3)
    CA, _, _, Msub = trivial_bundle(M, H)
    assert invariant_subalgebra(CA) == Msub
    assert CA.check().ok


def test_tensor_hopf():
    H = tensor_hopf(function_algebra(Z2), group_algebra(Z3))
    assert H.n == 6 and check_hopf_axioms(H).ok
