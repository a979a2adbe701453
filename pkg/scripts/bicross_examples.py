"""Calculi on the bicrossproduct C(Z3) >|< CZ2 as gamma varies.

The zero fibre calculus only survives when gamma1 gamma2 = 1; the scan
below shows the jump, including a symbolic point over Q(q).
"""

from artifact.bicross import universal_fibre_example, zero_fibre_example, gamma_space_dimension, z6z6
from artifact.scalars import QQ, QQq

rep = universal_fibre_example()
print(f"universal fibre, S = {{s^2}}: {rep.data['dim ker eps / Q_P']} invariant forms, "
      f"{'all relations hold' if rep.ok else 'FAILURES'}")
print("  beta_U(g) =", rep.data["beta_U(g)"])

print("\nzero fibre calculus, universal base:")
for g1, g2 in [("2", "3"), ("2", "1/2"), ("-1", "-1"), ("5", "1/5"), ("3", "1/2")]:
    r = zero_fibre_example(QQ.parse(g1), QQ.parse(g2))
    print(f"  gamma = ({g1:>2}, {g2:>3}): dim Q0 = {r.data['dim Q0']}, forms = {r.data['dim ker eps / Q_P']}")
q = QQq.q
r = zero_fibre_example(q, 1 / q, QQq)
print(f"  gamma = (q, 1/q) over Q(q): forms = {r.data['dim ker eps / Q_P']}")

dim, grep = gamma_space_dimension(z6z6(build=False))
print(f"\nZ6 |><| Z6 inside S3 x S3: gamma space of dimension {dim}")
for g, iso in grep.data["isotropy"].items():
    print(f"  I({g}) = {{{', '.join(iso)}}}")
