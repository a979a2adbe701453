import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact.qpoly import FibrePoly, NCPoly, QPolyError, alpha, antipode, beta, coproduct, counit, delta, \
    dimension_report, gamma, monomials, one, parse_family, project_pi, q, q0_generators, q0_quotient_report, \
    qkl_generators, qp_generators, relations_report, rewrite_word, splitting_i, truncated_ideal, \
    truncated_quotient_dim, verify_identities, word
from artifact.scalars import QQq

words = st.text(alphabet="abcd", max_size=6)


def test_basic_relations():
    assert word("ba") == q ** -1 * alpha * beta
    assert word("ad") - word("da") == (q - q ** -1) * word("bc")
    assert word("cb") == word("bc")
    assert alpha * delta == one + q * beta * gamma


@settings(max_examples=60, deadline=None)
@given(words, st.integers(0, 1000))
def test_confluence(w, seed):
    assert rewrite_word(w, random.Random(seed)) == word(w)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_associative(x, y, z):
    a, b, c = word(x), word(y), word(z)
    assert (a * b) * c == a * (b * c)


def test_word_rejects_letters():
    with pytest.raises(QPolyError):
        word("ax")


def test_monomials_count():
    # (t + 1)^2 triples (e, j, k) with |e| + j + k = t
    assert len(monomials(3)) == sum((t + 1) ** 2 for t in range(4))
    assert all(sum(map(abs, m)) % 2 == 0 for m in monomials(4, even=True))


def test_coproduct_generators():
    assert coproduct(alpha) == {((1, 0, 0), (1, 0, 0)): QQq.one, ((0, 1, 0), (0, 0, 1)): QQq.one}
    assert counit(alpha) == 1 and counit(beta) == 0
    assert antipode(alpha) == delta and antipode(beta) == -q ** -1 * beta
    assert antipode(gamma) == -q * gamma


def test_coproduct_budget():
    with pytest.raises(QPolyError):
        coproduct(alpha ** 13)


@settings(max_examples=25, deadline=None)
@given(words, words)
def test_antipode_anti_multiplicative(x, y):
    a, b = word(x), word(y)
    assert antipode(a * b) == antipode(b) * antipode(a)


def test_pi_and_splitting():
    assert project_pi(alpha ** 2) == FibrePoly.Z(1)
    assert project_pi(delta ** 2) == FibrePoly.Z(-1)
    assert project_pi(beta * gamma) == FibrePoly()
    assert project_pi(alpha * beta) == FibrePoly()
    for x in (alpha, alpha * beta * gamma):
        with pytest.raises(QPolyError):
            project_pi(x)
    for n in range(-3, 4):
        assert project_pi(splitting_i(n)) == FibrePoly.Z(n)
    assert FibrePoly.Z(2).counit() == 1


def test_generator_memberships():
    P11 = truncated_ideal(qp_generators(1, 1), 6)
    assert all(P11.contains(g) for g in q0_generators())
    I0 = truncated_ideal(q0_generators(), 6)
    assert not I0.contains(beta ** 2)
    assert I0.contains(beta * gamma * alpha ** 2)


def test_truncated_ideal_degree_guard():
    with pytest.raises(QPolyError):
        truncated_ideal([beta ** 8], 6)


@pytest.mark.parametrize("k,l,want", [(1, 1, 4), (1, 2, 8), (2, 2, 12)])
def test_qkl_dims(k, l, want):
    res = truncated_quotient_dim("ker_pi", qkl_generators(k, l), (6, 8))
    assert res["stabilized"] and res["value"] == want


def test_qp_dims():
    assert truncated_quotient_dim("ker_eps", qp_generators(1, 1), (6, 8))["value"] == 5
    assert truncated_quotient_dim("ker_eps", qp_generators(1, 1, 0, 0), (6, 8))["value"] == 3


def test_rs_family_matches_plain_at_top():
    # r = k, s = l adds nothing new
    a = truncated_quotient_dim("ker_pi", qkl_generators(1, 1), (6, 8))["value"]
    b = truncated_quotient_dim("ker_pi", qkl_generators(1, 1, 1, 1), (6, 8))["value"]
    assert a == b


def test_rs_range_checked():
    with pytest.raises(QPolyError):
        qkl_generators(1, 1, 2, 0)


def test_parse_family():
    assert parse_family("2,2,1,1") == (2, 2, 1, 1)
    for bad in ("1", "0,1", "1,2,3"):
        with pytest.raises(QPolyError):
            parse_family(bad)


def test_reports():
    assert verify_identities().ok
    assert q0_quotient_report().ok
    assert dimension_report().ok


def test_relations_derived_versions_hold():
    rep = relations_report()
    assert rep.ok, rep.to_text()
    shown = rep.data["displayed relations"]
    assert sum(1 for v in shown.values() if not v) == 4


def test_ncpoly_arithmetic():
    p = alpha + 2 * beta
    assert p - p == NCPoly()
    assert not (p - p)
    assert (p ** 2).degree() == 2
    assert (alpha * delta).is_even()
    assert str(NCPoly()) == "0"
