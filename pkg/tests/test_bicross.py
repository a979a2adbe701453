import random

import pytest

from artifact.bicross import BicrossError, GammaData, MatchedPair, beta_compatibility_check, beta_from_gamma, \
    bicross_calculus, bicrossproduct, universal_fibre_example, zero_fibre_example, gamma_condition_check, gamma_space_dimension, z3z2, \
    z6z6
from artifact.hopf import Group, check_hopf_axioms
from artifact.linalg import Subspace
from artifact.scalars import QQ, QQq


@pytest.fixture(scope="module")
def bx3():
    return z3z2()


@pytest.fixture(scope="module")
def mp6():
    return z6z6(build=False)


def test_z3z2_structure(bx3):
    assert bx3.P.n == 6
    assert bx3.report.ok
    assert check_hopf_axioms(bx3.P).ok


def test_z6z6_is_36_dim_hopf():
    bx = z6z6()
    assert bx.P.n == 36
    assert bx.report.ok
    assert check_hopf_axioms(bx.P).ok


def test_z6z6_actions_by_inversion(mp6):
    G, Sg = mp6.G, mp6.Sigma
    g, s = G.index("g"), Sg.index("s")
    assert mp6.tri[s][g] == G.inv[g]
    assert mp6.tle[s][g] == Sg.inv[s]


def test_gamma_dims(bx3, mp6):
    dim, rep = gamma_space_dimension(bx3.mp)
    assert dim == 2 and rep.ok
    dim, rep = gamma_space_dimension(mp6)
    assert dim == 13 and rep.ok
    iso = rep.data["isotropy"]
    full = sorted(mp6.Sigma.labels)
    assert sorted(iso["e"]) == full and sorted(iso["g^3"]) == full
    for k in (1, 2, 4, 5):
        assert sorted(iso[f"g^{k}" if k > 1 else "g"]) == sorted(["e", "s^2", "s^4"])


def random_gamma(mp, rng, K=QQ):
    vals = {}
    for g, s in mp.Y:
        if g != mp.G.e and s != mp.Sigma.e:
            vals[(g, s)] = K(rng.choice([2, 3, -1, 5]))
    return GammaData(mp, vals, K)


@pytest.mark.parametrize("seed", range(3))
def test_random_gamma_on_z6z6(seed):
    bx = z6z6()
    gd = random_gamma(bx.mp, random.Random(seed))
    assert gamma_condition_check(bx, gd.linmap()).ok
    beta = beta_from_gamma(bx, gd)
    rep = beta_compatibility_check(bx, beta)
    assert rep.ok, rep.to_text()


def test_gamma_validation(bx3):
    mp = bx3.mp
    G, Sg = mp.G, mp.Sigma
    with pytest.raises(BicrossError):
        GammaData(mp, {(G.e, Sg.index("s")): QQ(2)})
    mp6 = z6z6(build=False)
    off = next((g, s) for g in range(mp6.G.n) for s in range(mp6.Sigma.n) if (g, s) not in set(mp6.Y))
    with pytest.raises(BicrossError):
        GammaData(mp6, {off: QQ(2)})


def test_gamma_outside_condition_rejected(bx3, mp6):
    from artifact.linalg import LinMap

    H, M = bx3.H, bx3.M
    # gamma(g, e) = 2 breaks eps o gamma = eps
    bad = LinMap(QQ, H.n, M.n, [dict(M.unit), {0: QQ(2), 1: QQ(1)}])
    rep = gamma_condition_check(bx3, bad)
    assert [c.name for c in rep.failures()] == ["eps o gamma = eps"]
    with pytest.raises(BicrossError):
        beta_from_gamma(bx3, bad)
    # support off the isotropy set breaks the intertwiner identity
    bx = z6z6()
    G, Sg = bx.mp.G, bx.mp.Sigma
    g = G.index("g")
    s = next(t for t in range(Sg.n) if (g, t) not in set(bx.mp.Y))
    cols = [dict(bx.M.unit) if a == G.e else {Sg.e: QQ.one} for a in range(G.n)]
    cols[g][s] = QQ(3)
    rep = gamma_condition_check(bx, LinMap(QQ, G.n, Sg.n, cols))
    assert [c.name for c in rep.failures()] == ["gamma(h_1) h_2^(2) (x) h_2^(1) = gamma(h_2) (x) h_1"]


def test_json_round_trips(bx3):
    mp = bx3.mp
    again = MatchedPair.from_json(mp.to_json())
    assert again.tri == mp.tri and again.tle == mp.tle
    gd = GammaData(mp, {(mp.G.index("g"), mp.Sigma.index("s")): QQ.parse("2/3")})
    back = GammaData.from_json(mp, gd.to_json())
    assert back.values == gd.values


def test_matched_pair_validation():
    Z2, Z3 = Group.cyclic(2), Group.cyclic(3)
    triv_tri = [list(range(2)) for _ in range(3)]
    triv_tle = [[s] * 2 for s in range(3)]
    mp = MatchedPair(Z2, Z3, triv_tri, triv_tle)
    assert bicrossproduct(mp).P.n == 6
    with pytest.raises(BicrossError):
        MatchedPair(Z2, Z3, triv_tri[:2], triv_tle)
    bad = [row[:] for row in triv_tle]
    bad[1][0] = 2
    with pytest.raises(BicrossError):
        MatchedPair(Z2, Z3, triv_tri, bad)
    with pytest.raises(BicrossError):
        MatchedPair.from_json({**mp.to_json(), "cocycle": []})


def test_universal_fibre_example():
    rep = universal_fibre_example()
    assert rep.ok, rep.to_text()
    assert rep.data["dim ker eps / Q_P"] == 3
    # the displayed omega_2 rule shifts the wrong way; the derived one is checked in the report
    assert rep.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"] is False
    assert rep.data["beta_U(g) + (J - I) equals the displayed matrix"] is True


@pytest.mark.parametrize("g1,g2,dim", [(2, 3, 0), (2, "1/2", 2), (-1, -1, 2), (3, 5, 0)])
def test_zero_fibre_dims(g1, g2, dim):
    rep = zero_fibre_example(QQ.parse(str(g1)), QQ.parse(str(g2)))
    assert rep.ok, rep.to_text()
    assert rep.data["dim ker eps / Q_P"] == dim


def test_zero_fibre_symbolic():
    q = QQq.q
    rep = zero_fibre_example(q, 1 / q, QQq)
    assert rep.ok, rep.to_text()
    assert rep.data["dim ker eps / Q_P"] == 2
    rep = zero_fibre_example(q, q, QQq)
    assert rep.ok
    assert rep.data["dim ker eps / Q_P"] == 0


def test_killed_set_rejects_identity(bx3):
    gd = GammaData(bx3.mp, {})
    with pytest.raises(BicrossError):
        bicross_calculus(bx3, gd, Subspace.zero(QQ, bx3.H.n), ["e"])


def test_trivial_gamma_universal(bx3):
    bcx = bicross_calculus(bx3, GammaData(bx3.mp, {}), Subspace.zero(QQ, bx3.H.n), [])
    assert bcx.report.ok
    assert bcx.dim == bx3.P.n - 1
