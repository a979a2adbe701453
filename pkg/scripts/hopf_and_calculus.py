"""Finite-group Hopf algebras and their left-covariant calculi.

Builds C(S3) and CS3, runs the axiom checks, then walks through the
calculi on C(S3) coming from Ad-stable right ideals: the universal one,
the one of the conjugacy class of transpositions, and the zero calculus.
"""

from artifact.bundle import right_ideal
from artifact.calculus import bicovariance_check, calculus_from_ideal
from artifact.hopf import Group, check_hopf_axioms, function_algebra, group_algebra
from artifact.linalg import Subspace
from artifact.scalars import QQ

S3 = Group.symmetric3()
for H in (function_algebra(S3), group_algebra(S3)):
    rep = check_hopf_axioms(H)
    print(f"{H.name}: dim {H.n}, {len(rep.checks)} axioms, {'all pass' if rep.ok else 'FAILURES'}")

H = function_algebra(S3)
one = QQ.one
# delta functions on the non-identity elements outside a chosen set C span Q_C
transpositions = ["a", "b", "aba"]
cases = {
    "universal": [],
    "transpositions": [l for l in H.labels if l != "d:e" and l[2:] not in transpositions],
    "zero": [l for l in H.labels if l != "d:e"],
}
for name, killed in cases.items():
    Q = right_ideal(H, [{H.labels.index(l): one} for l in killed]) if killed else Subspace.zero(QQ, H.n)
    C = calculus_from_ideal(H, Q)
    print(f"{name:>15}: dim Q = {Q.dim}, invariant forms = {C.forms_dim}, "
          f"dim Omega^1 = {C.dim}, bicovariant = {bicovariance_check(H, Q)}")
