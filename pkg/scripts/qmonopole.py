"""Truncated checks on the q-monopole ideals of SU_q(2) / SO_q(3).

Quotient dimensions are computed at degrees 6 and 8 and must agree; the
list covers the families whose closed-form count holds and one where it
does not (r = 0 with k >= 2).
"""

from artifact.qpoly import alpha, beta, qkl_generators, truncated_quotient_dim, word

print("ad - da =", word("ad") - word("da"))
print("(a + b)^2 =", (alpha + beta) ** 2)

for fam in [(1, 1), (1, 2), (2, 2), (3, 2), (2, 2, 1, 1), (2, 2, 0, 0)]:
    res = truncated_quotient_dim("ker_pi", qkl_generators(*fam), (6, 8))
    k, l = fam[:2]
    formula = 4 * (k + l - 1) if len(fam) == 2 else 3 * k + 3 * l + sum(fam[2:]) - 4
    print(f"Q^{fam}: dims {res['dims']}, formula {formula}")

