import itertools
import random

import pytest

from artifact.discrete import DiscreteComplex, DiscreteError, algebra_inverse, builtin_covers, cover_from_json, \
    curvature, gauge_transform, h1, induced_bundle_edges_check, moduli_zero_curvature, nerve_from_cover, \
    omega1_from_edges, omega2_local, random_cover, scalar_algebra, set_algebra, simplicial_h1, universal_forms
from artifact.scalars import QQ

one = QQ.one


def rand_form(U, n, rng):
    return {t: QQ(rng.randint(-3, 3)) for t in U.basis(n) if rng.random() < 0.6}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_universal_dims(m):
    U = universal_forms(m)
    for n in range(3):
        assert U.dim(n) == m * (m - 1) ** n


def test_universal_d_squared_and_leibniz():
    rng = random.Random(3)
    U = universal_forms(3)
    for _ in range(10):
        f = rand_form(U, 1, rng)
        assert U.d(U.d(f)) == {}
        g = rand_form(U, 0, rng)
        # d(g f) = dg f + g df, g of degree 0
        lhs = U.d(U.product(g, f))
        rhs = dict(U.product(U.d(g), f))
        for t, v in U.product(g, U.d(f)).items():
            s = rhs.get(t, QQ.zero) + v
            if s:
                rhs[t] = s
            else:
                rhs.pop(t, None)
        assert lhs == rhs


def test_d_of_zero_cochain():
    U = universal_forms(3)
    g = {(0,): QQ(5), (1,): QQ(2), (2,): QQ(-1)}
    dg = U.d(g)
    for (i, j), v in dg.items():
        assert v == g[(j,)] - g[(i,)]


def test_omega1_universal_and_empty():
    labels = ["a", "b", "c"]
    full = [(i, j) for i in range(3) for j in range(3) if i != j]
    assert omega1_from_edges(labels, full).dim == 6
    C0 = omega1_from_edges(labels, [])
    assert C0.dim == 0
    assert C0.d({0: one}) == {}


def test_omega1_cycle_supported_on_edges():
    E = [(0, 1), (1, 2), (2, 0)]
    C = omega1_from_edges(["e", "s", "s2"], E)
    assert C.dim == 3
    assert C.check().ok
    # d delta_e lives on the two edges touching e
    U = C.U
    raw = U.d({0: one})
    n = 3
    touched = {divmod(k, n) for k in raw}
    assert touched == {(0, 1), (1, 0), (0, 2), (2, 0)}
    assert C.d({0: one}) == C.project({k: v for k, v in raw.items() if divmod(k, n) in set(E)})


def test_omega1_rejects_loops():
    with pytest.raises(DiscreteError):
        omega1_from_edges(["a", "b"], [(0, 0)])


def test_complex_validation():
    with pytest.raises(DiscreteError):
        DiscreteComplex.make(2, [(0, 1)], F0=[(0, 1)])
    with pytest.raises(DiscreteError):
        DiscreteComplex.make(3, [(0, 1), (1, 2)], F=[(0, 1, 2)])
    with pytest.raises(DiscreteError):
        DiscreteComplex.make(2, [(0, 2)])


def test_empty_faces_all_closed():
    cx = DiscreteComplex.make(3, [(0, 1), (1, 0), (1, 2)])
    L = omega2_local(cx)
    assert L.faces == []
    assert h1(cx)[0] == 3 - 2


def test_triangle_closed_means_antisymmetric_cocycle():
    cx = builtin_covers()["disk-3"]
    L = omega2_local(cx)
    from artifact.linalg import kernel

    Z = kernel(L.d1)
    for r in Z.rows:
        f = {L.edges[k]: x for k, x in r.items()}
        get = lambda e: f.get(e, QQ.zero)  # noqa: E731
        for i, j in cx.F0:
            assert get((i, j)) + get((j, i)) == 0
        for i, j, k in itertools.permutations(range(3)):
            assert get((i, j)) - get((i, k)) + get((j, k)) == 0


@pytest.mark.parametrize("seed", range(15))
def test_d1_d0_and_h1_oracle_random(seed):
    cx = random_cover(seed)
    assert omega2_local(cx).check().ok
    assert h1(cx)[0] == simplicial_h1(cx)


@pytest.mark.parametrize("name,want", [("circle-3", 1), ("disk-3", 0), ("tetrahedron", 0)])
def test_h1_builtins(name, want):
    cx = builtin_covers()[name]
    dim, reps = h1(cx)
    assert dim == want == simplicial_h1(cx)
    assert len(reps) == dim


def test_h1_representatives_closed_not_exact():
    cx = builtin_covers()["circle-3"]
    L = omega2_local(cx)
    (_, reps) = h1(cx)
    assert L.d1_of(reps[0]) == {}
    assert any(reps[0].values())


def test_nerve_single_set_and_errors():
    cx = nerve_from_cover(["U"], [], [])
    assert cx.E == () and h1(cx)[0] == 0
    with pytest.raises(DiscreteError):
        nerve_from_cover(["A", "B", "C"], [(0, 1)], [(0, 1, 2)])
    with pytest.raises(DiscreteError):
        nerve_from_cover(["A", "B"], [(0, 0)], [])


def test_cover_json():
    cx = cover_from_json('{"sets": ["A", "B", "C"], "pairs": [["A", "B"], ["B", "C"], ["A", "C"]]}')
    assert cx.vertices == ("A", "B", "C")
    assert cx.E == builtin_covers()["circle-3"].E
    assert h1(cx)[0] == 1
    assert cx.to_json()["schema"] == 1


def cycle_beta(vals):
    return {e: ({0: QQ(v)} if v else {}) for e, v in vals.items()}


def test_curvature_zero_and_pure_gauge():
    cx = builtin_covers()["disk-3"]
    A = scalar_algebra()
    assert curvature(cx, {}, A) == {}
    gamma = [{0: QQ(2)}, {0: QQ(-3)}, {0: QQ(5)}]
    pure = gauge_transform(cx, {}, gamma, A)
    assert pure
    assert curvature(cx, pure, A) == {}


def test_curvature_nonzero_on_f0():
    cx = builtin_covers()["circle-3"]
    A = scalar_algebra()
    beta = cycle_beta({(0, 1): 1})
    F = curvature(cx, beta, A)
    assert ("F0", 0, 1) in F and ("F0", 1, 0) in F


def test_gauge_group_action_and_formula():
    cx = builtin_covers()["disk-3"]
    A = set_algebra(["x", "y"])
    rng = random.Random(7)
    beta = {e: {a: x for a in range(2) if (x := QQ(rng.randint(-2, 2)))} for e in cx.E}
    gamma = [{0: QQ(rng.choice([1, 2, -1])), 1: QQ(rng.choice([3, -2]))} for _ in range(3)]
    assert gauge_transform(cx, beta, [A.unit] * 3, A) == {e: v for e, v in beta.items() if v}
    bg = gauge_transform(cx, beta, gamma, A)
    inv = [algebra_inverse(A, g) for g in gamma]
    back = gauge_transform(cx, bg, inv, A)
    assert back == {e: v for e, v in beta.items() if v}
    for (i, j) in cx.E:
        lhs = {a: x for a, x in A.unit.items()}
        for a, x in bg.get((i, j), {}).items():
            lhs[a] = lhs.get(a, QQ.zero) + x
        one_plus = dict(A.unit)
        for a, x in beta[(i, j)].items():
            one_plus[a] = one_plus.get(a, QQ.zero) + x
        rhs = A.mul(A.mul(inv[i], one_plus), gamma[j])
        assert {a: x for a, x in lhs.items() if x} == rhs


def test_zero_curvature_preserved():
    cx = builtin_covers()["disk-3"]
    A = scalar_algebra()
    # g_ij = c_j / c_i is a flat field
    c = [QQ(2), QQ(3), QQ(7)]
    beta = {(i, j): {0: c[j] / c[i] - one} for (i, j) in cx.E}
    assert curvature(cx, beta, A) == {}
    bg = gauge_transform(cx, beta, [{0: QQ(-1)}, {0: QQ(4)}, {0: QQ(9)}], A)
    assert curvature(cx, bg, A) == {}


def test_non_invertible_gauge():
    A = set_algebra(["x", "y"])
    with pytest.raises(DiscreteError):
        algebra_inverse(A, {0: one})


@pytest.mark.parametrize("k", [2, 3, 4])
def test_moduli_circle(k):
    res = moduli_zero_curvature(builtin_covers()["circle-3"], k)
    assert res["classes"] == k
    assert res["biconditional_failures"] == 0


def test_moduli_disk_and_point():
    assert moduli_zero_curvature(builtin_covers()["disk-3"], 3)["classes"] == 1
    assert moduli_zero_curvature(nerve_from_cover(["U"], [], []), 2)["classes"] == 1


def test_moduli_budget():
    with pytest.raises(DiscreteError):
        moduli_zero_curvature(builtin_covers()["tetrahedron"], 3, budget=100)


def test_induced_edges_zero_beta():
    labels = ["0", "1", "2"]
    E = [(i, j) for i in range(3) for j in range(3) if i != j]
    z = [[0] * 3 for _ in range(3)]
    rep = induced_bundle_edges_check(labels, E, z, z)
    c = {x.name: x.passed for x in rep.checks}
    assert c["edge set matches the closed-form rules"]
    assert c["N spanned by delta pairs"]
    assert all(x.passed for x in rep.checks if x.name.startswith("pipeline omega"))


def test_induced_edges_single_point():
    rep = induced_bundle_edges_check(["p"], [], [[0]], [[0]])
    assert rep.data["edges"] == 3
    assert {x.name: x.passed for x in rep.checks}["edge set matches the closed-form rules"]


def test_induced_edges_beta1_removes_edge():
    labels = ["0", "1", "2"]
    E = [(i, j) for i in range(3) for j in range(3) if i != j]
    z = [[0] * 3 for _ in range(3)]
    b1 = [[0, 2, 0], [0, 0, 0], [0, 0, 0]]
    base = induced_bundle_edges_check(labels, E, z, z).data["edges"]
    rep = induced_bundle_edges_check(labels, E, b1, z)
    c = {x.name: x.passed for x in rep.checks}
    assert c["edge set matches the closed-form rules"]
    assert rep.data["edges"] == base - 3


def test_induced_edges_cancellation_extra_edge():
    # beta1 + beta2 = 1 on an edge keeps (i, a+1) -> (j, a): the refined rule
    labels = ["0", "1", "2"]
    E = [(i, j) for i in range(3) for j in range(3) if i != j]
    z = [[0] * 3 for _ in range(3)]
    b1 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    rep = induced_bundle_edges_check(labels, E, b1, z)
    c = {x.name: x.passed for x in rep.checks}
    assert not c["edge set matches the closed-form rules"]
    assert c["edge set matches the refined rules"]
