"""Quantum H^1 of nerves against simplicial cohomology, and flat gauge fields.

Every random cover is fed to both the forms computation (h1) and the
independent sympy oracle; on the circle the mu_k moduli count is k.
"""

from collections import Counter

from artifact.discrete import builtin_covers, h1, moduli_zero_curvature, random_cover, simplicial_h1

seen = Counter()
for seed in range(200):
    cx = random_cover(seed)
    a, b = h1(cx)[0], simplicial_h1(cx)
    assert a == b, (seed, a, b)
    seen[a] += 1
print("200 random nerves, h1 == oracle; H^1 distribution:", dict(sorted(seen.items())))

for name, cx in builtin_covers().items():
    dim, reps = h1(cx)
    rep = ", ".join(f"{i}-{j}: {c}" for (i, j), c in sorted(reps[0].items())) if reps else "none"
    print(f"{name:>12}: H^1 = {dim}, representative {rep}")

for k in (2, 3, 4, 5):
    res = moduli_zero_curvature(builtin_covers()["circle-3"], k)
    print(f"circle-3, mu_{k}: {res['cocycles']} flat fields in {res['classes']} gauge classes")
