"""Differential forms and cohomology on a finite set.

Universal n-forms on C(Sigma) are tensors ``f[i0, ..., in]`` that vanish
whenever two adjacent indices agree.  A first-order calculus is fixed by a
directed edge set E, and a local second-order one by pairs F0 and
triples F.  The differentials are

    (d g)[i, j]       = g[j] - g[i]
    (d f)[i, j, i]    = f[i, j] + f[j, i]          on F0
    (d f)[i, j, k]    = f[i, j] - f[i, k] + f[j, k]  on F

and ``H^1 = ker d1 / im d0``.  Gauge fields with values in a unital
algebra A, their curvature and gauge action are also provided, together
with a brute-force count of zero-curvature gauge classes for roots of
unity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .hopf import FinAlgebra, Group, function_algebra, tensor_algebra
from .linalg import LinMap, tensor_vec, Subspace, _iadd, image, kernel, solve, vec_add, vec_scale
from .report import Report
from .scalars import QQ, Cyclotomic

__all__ = [
    "DiscreteError",
    "DiscreteComplex",
    "UniversalForms",
    "universal_forms",
    "set_algebra",
    "scalar_algebra",
    "omega1_from_edges",
    "LocalOmega2",
    "omega2_local",
    "h1",
    "nerve_from_cover",
    "cover_from_json",
    "curvature",
    "gauge_transform",
    "algebra_inverse",
    "moduli_zero_curvature",
    "induced_bundle_edges_check",
    "displayed_omega_g",
    "displayed_omega_u_g2",
    "builtin_covers",
    "random_cover",
    "simplicial_h1",
    "cycle_bundle_sweep",
]


class DiscreteError(ValueError):
    pass


# ---------------------------------------------------------------- complexes

@dataclass(frozen=True)
class DiscreteComplex:
    vertices: tuple
    E: tuple
    F0: tuple
    F: tuple

    def __post_init__(self):
        n = len(self.vertices)
        E = set(self.E)
        for i, j in E:
            if not (0 <= i < n and 0 <= j < n):
                raise DiscreteError(f"edge {(i, j)} outside the vertex set")
            if i == j:
                raise DiscreteError(f"loop at vertex {self.vertices[i]}")
        for i, j in self.F0:
            if (i, j) not in E or (j, i) not in E:
                raise DiscreteError(f"F0 entry {(i, j)} needs both edges {i}-{j} and {j}-{i}")
        for i, j, k in self.F:
            if (i, j) not in E or (j, k) not in E or (i, k) not in E:
                raise DiscreteError(f"F entry {(i, j, k)} needs edges i-j, j-k and i-k")

    @classmethod
    def make(cls, n_or_labels, E, F0=(), F=()):
        labels = tuple(str(v) for v in (range(n_or_labels) if isinstance(n_or_labels, int) else n_or_labels))
        return cls(labels, tuple(sorted(set(map(tuple, E)))), tuple(sorted(set(map(tuple, F0)))),
                   tuple(sorted(set(map(tuple, F)))))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"schema": 1, "vertices": list(self.vertices), "edges": [list(e) for e in self.E],
                "F0": [list(e) for e in self.F0], "F": [list(t) for t in self.F]}


def nerve_from_cover(sets, pairs, triples) -> DiscreteComplex:
    """Local calculus of the nerve: E symmetric from pairs, F0 = E, F all edge-compatible orderings."""
    labels = [str(s) for s in sets]
    n = len(labels)
    E = set()
    for i, j in pairs:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise DiscreteError(f"bad pair {(i, j)}")
        E.add((i, j))
        E.add((j, i))
    F = set()
    for t in triples:
        if len(set(t)) != 3:
            raise DiscreteError(f"triple {t} must have three distinct sets")
        for a, b in itertools.combinations(t, 2):
            if (a, b) not in E:
                raise DiscreteError(f"triple {t} meets but pair {(a, b)} is missing")
        for p in itertools.permutations(t):
            i, j, k = p
            if (i, j) in E and (j, k) in E and (i, k) in E:
                F.add(p)
    return DiscreteComplex.make(labels, E, E, F)


def cover_from_json(data) -> DiscreteComplex:
    if isinstance(data, str):
        data = json.loads(data)
    sets = data["sets"]
    idx = {str(s): k for k, s in enumerate(sets)}

    def ix(x):
        return x if isinstance(x, int) else idx[str(x)]

    pairs = [tuple(ix(x) for x in p) for p in data.get("pairs", [])]
    triples = [tuple(ix(x) for x in t) for t in data.get("triples", [])]
    return nerve_from_cover(sets, pairs, triples)


def builtin_covers() -> dict:
    return {
        "circle-3": nerve_from_cover(["U0", "U1", "U2"], [(0, 1), (1, 2), (0, 2)], []),
        "disk-3": nerve_from_cover(["U0", "U1", "U2"], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)]),
        "tetrahedron": nerve_from_cover(
            ["U0", "U1", "U2", "U3"],
            list(itertools.combinations(range(4), 2)),
            list(itertools.combinations(range(4), 3)),
        ),
    }



def random_cover(seed: int, max_sets: int = 7, p_pair: float = 0.5, p_triple: float = 0.5) -> DiscreteComplex:
    """Nerve of a random cover: random pairwise overlaps, then random triple overlaps among triangles."""
    import random

    rng = random.Random(seed)
    n = rng.randint(1, max_sets)
    pairs = [p for p in itertools.combinations(range(n), 2) if rng.random() < p_pair]
    ps = set(pairs)
    triples = [t for t in itertools.combinations(range(n), 3)
               if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= ps and rng.random() < p_triple]
    return nerve_from_cover([f"U{i}" for i in range(n)], pairs, triples)

# ----------------------------------------------------------- universal forms

class UniversalForms:
    """Omega^n C(Sigma) as tensors on index tuples with distinct neighbours."""

    def __init__(self, n_points: int, K=QQ):
        self.m = n_points
        self.K = K
        self._basis = {}

    def basis(self, n: int) -> list:
        if n not in self._basis:
            out = [()]
            for _ in range(n + 1):
                out = [t + (i,) for t in out for i in range(self.m) if not t or t[-1] != i]
            self._basis[n] = out
        return self._basis[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def d(self, f: dict) -> dict:
        """(d f)[i0..i_{n+1}] = sum_j (-1)^j f[..., i_j omitted, ...]."""
        if not f:
            return {}
        n = len(next(iter(f))) - 1
        out = {}
        for t in self.basis(n + 1):
            s = self.K.zero
            for j in range(n + 2):
                sub = t[:j] + t[j + 1:]
                v = f.get(sub)
                if v:
                    s = s + v if j % 2 == 0 else s - v
            if s:
                out[t] = s
        return out

    def product(self, f: dict, g: dict) -> dict:
        """(f g)[i0..i_{n+m}] = f[i0..in] g[in..i_{n+m}]."""
        out = {}
        for a, x in f.items():
            for b, y in g.items():
                if a[-1] != b[0]:
                    continue
                t = a + b[1:]
                if any(t[k] == t[k + 1] for k in range(len(t) - 1)):
                    continue
                v = out.get(t, self.K.zero) + x * y
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return out


def universal_forms(n_points: int, K=QQ) -> UniversalForms:
    return UniversalForms(n_points, K)


def set_algebra(labels, K=QQ, name: str = "C(Sigma)") -> FinAlgebra:
    """Functions on a finite set in the delta basis."""
    n = len(labels)
    one = K.one
    mult = [[({i: one} if i == j else {}) for j in range(n)] for i in range(n)]
    return FinAlgebra(K, [f"d:{l}" for l in labels], mult, {i: one for i in range(n)}, name)


def scalar_algebra(K=QQ) -> FinAlgebra:
    return FinAlgebra(K, ["1"], [[{0: K.one}]], {0: K.one}, str(K))


def omega1_from_edges(labels, E, K=QQ):
    """First-order calculus on C(Sigma) with edges E."""
    from .calculus import QuotientCalculus, UniversalCalculus

    A = set_algebra(labels, K)
    n = A.n
    U = UniversalCalculus(A)
    E = set(map(tuple, E))
    for i, j in E:
        if i == j:
            raise DiscreteError("edges must not be loops")
    killed = [{i * n + j: K.one} for i in range(n) for j in range(n) if i != j and (i, j) not in E]
    return QuotientCalculus(U, Subspace.span(K, n * n, killed))


# ------------------------------------------------------------------ degree 2

class LocalOmega2:
    """d0: C(Sigma) -> C(E) and d1: C(E) -> C(F) + C(F0) as matrices."""

    def __init__(self, cx: DiscreteComplex, K=QQ):
        self.cx = cx
        self.K = K
        self.edges = list(cx.E)
        self.eidx = {e: k for k, e in enumerate(self.edges)}
        self.faces = [("F",) + t for t in cx.F] + [("F0",) + p for p in cx.F0]
        one = K.one
        n, m = cx.n, len(self.edges)
        d0 = [{} for _ in range(n)]
        for k, (i, j) in enumerate(self.edges):
            d0[j][k] = d0[j].get(k, K.zero) + one
            d0[i][k] = d0[i].get(k, K.zero) - one
        self.d0 = LinMap(K, n, m, d0)
        d1 = [{} for _ in range(m)]
        for r, face in enumerate(self.faces):
            if face[0] == "F":
                _, i, j, k = face
                terms = [((i, j), one), ((i, k), -one), ((j, k), one)]
            else:
                _, i, j = face
                terms = [((i, j), one), ((j, i), one)]
            for e, c in terms:
                col = d1[self.eidx[e]]
                v = col.get(r, K.zero) + c
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
        self.d1 = LinMap(K, m, len(self.faces), d1)

    def d0_of(self, g) -> dict:
        """g: sequence over vertices -> {edge: value}."""
        v = self.d0.apply({i: x for i, x in enumerate(g) if x})
        return {self.edges[k]: x for k, x in v.items()}

    def d1_of(self, f: dict) -> dict:
        v = self.d1.apply({self.eidx[e]: x for e, x in f.items() if x})
        return {self.faces[k]: x for k, x in v.items()}

    def check(self) -> Report:
        rep = Report("local Omega^2")
        rep.add("d1 o d0 = 0", all(not c for c in self.d1.compose(self.d0).cols))
        return rep


def omega2_local(cx: DiscreteComplex, K=QQ) -> LocalOmega2:
    return LocalOmega2(cx, K)


def h1(cx: DiscreteComplex, K=QQ):
    """(dim H^1, representatives as {edge: value})."""
    L = LocalOmega2(cx, K)
    Z = kernel(L.d1)
    B = image(L.d0)
    reps = Subspace.span(K, len(L.edges), (B.reduce(r) for r in Z.rows))
    out = [{L.edges[k]: x for k, x in r.items()} for r in reps.rows]
    return Z.dim - B.dim, out


# -------------------------------------------------------------- gauge fields

def algebra_inverse(A: FinAlgebra, a: dict) -> dict:
    x = solve(A.left_op(a), A.unit)
    if x is None or A.mul(x, a) != A.unit:
        raise DiscreteError("gauge value is not invertible")
    return x


def curvature(cx: DiscreteComplex, beta: dict, A: FinAlgebra) -> dict:
    """F(beta) on F and F0; beta maps edges to elements of A (sparse vectors)."""
    out = {}
    for (i, j) in cx.F0:
        b1, b2 = beta.get((i, j), {}), beta.get((j, i), {})
        v = vec_add(vec_add(b1, b2), A.mul(b1, b2))
        if v:
            out[("F0", i, j)] = v
    for (i, j, k) in cx.F:
        bij, bjk, bik = beta.get((i, j), {}), beta.get((j, k), {}), beta.get((i, k), {})
        v = vec_add(vec_add(vec_add(bij, bjk), bik, -1), A.mul(bij, bjk))
        if v:
            out[("F", i, j, k)] = v
    return out


def gauge_transform(cx: DiscreteComplex, beta: dict, gamma, A: FinAlgebra) -> dict:
    """beta^gamma_ij = gamma_i^{-1} beta_ij gamma_j + gamma_i^{-1} gamma_j - 1."""
    inv = [algebra_inverse(A, g) for g in gamma]
    out = {}
    for (i, j) in cx.E:
        b = beta.get((i, j), {})
        v = A.mul(A.mul(inv[i], b), gamma[j])
        v = vec_add(v, A.mul(inv[i], gamma[j]))
        v = vec_add(v, A.unit, -1)
        if v:
            out[(i, j)] = v
    return out


def _is_cocycle(cx, g, one) -> bool:
    for (i, j) in cx.F0:
        if g[(i, j)] * g[(j, i)] != one:
            return False
    for (i, j, k) in cx.F:
        if g[(i, j)] * g[(j, k)] != g[(i, k)]:
            return False
    return True


def moduli_zero_curvature(cx: DiscreteComplex, k: int, budget: int = 1 << 20) -> dict:
    """Gauge classes of zero-curvature fields g = 1 + beta with values in mu_k.

    Every map E -> mu_k is enumerated; for each one the curvature of
    beta = g - 1 is computed in the scalar algebra over Q(zeta_k) and
    compared with the multiplicative cocycle test.
    """
    K = Cyclotomic(k)
    A = scalar_algebra(K)
    one = K.one
    roots = [K.zeta(a) for a in range(k)]
    edges = list(cx.E)
    total = k ** len(edges)
    if total > budget:
        raise DiscreteError(f"{total} candidates exceed the enumeration budget {budget}")
    cocycles = []
    mismatches = []
    for exps in itertools.product(range(k), repeat=len(edges)):
        g = {e: roots[a] for e, a in zip(edges, exps)}
        beta = {e: ({0: g[e] - one} if g[e] != one else {}) for e in edges}
        flat = not curvature(cx, beta, A)
        cyc = _is_cocycle(cx, g, one)
        if flat != cyc:
            mismatches.append(exps)
        if cyc:
            cocycles.append(exps)
    # gauge orbits: g_ij -> gamma_i^{-1} g_ij gamma_j on exponents
    eidx = {e: t for t, e in enumerate(edges)}
    parent = {c: c for c in cocycles}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cocycles:
        for v in range(cx.n):
            # gamma = zeta at vertex v only
            d = list(c)
            for (i, j), t in eidx.items():
                d[t] = (d[t] - (1 if i == v else 0) + (1 if j == v else 0)) % k
            d = tuple(d)
            if d not in parent:
                raise DiscreteError("gauge action left the cocycle set")
            ra, rb = find(c), find(d)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes = sorted({find(c) for c in cocycles})
    reps = [{f"{cx.vertices[i]}-{cx.vertices[j]}": str(roots[c[eidx[(i, j)]]]) for (i, j) in edges}
            for c in classes]
    return {
        "k": k,
        "candidates": total,
        "cocycles": len(cocycles),
        "classes": len(classes),
        "biconditional_failures": len(mismatches),
        "representatives": reps,
    }


# ------------------------------------------------------- induced bundle edges

def induced_bundle_edges_check(labels, E, beta1, beta2, K=QQ) -> Report:
    """Build the calculus on C(Sigma x Z3) from edges on Sigma and beta_U = (beta1, beta2).

    beta1, beta2 are |Sigma| x |Sigma| matrices with zero diagonal.  The
    fibre carries the calculus of the right ideal spanned by d:g^2.
    """
    from .bundle import build_calculus, check_connection, connection_from_beta_universal, trivial_bundle, \
        verify_universal_bundle

    m = len(labels)
    E = set(map(tuple, E))
    one = K.one
    for i in range(m):
        if beta1[i][i] or beta2[i][i]:
            raise DiscreteError("beta matrices must vanish on the diagonal")
    M = set_algebra(labels, K)
    Z3 = Group.cyclic(3)
    H = function_algebra(Z3, K)
    CA, Phi, Phi_inv, Msub = trivial_bundle(M, H)
    B = verify_universal_bundle(CA, Msub)
    n = B.n  # = 3m, index i*3 + a

    def emb(i):
        return {i * 3 + a: one for a in range(3)}

    def beta_elem(mat):
        out = {}
        for i in range(m):
            for j in range(m):
                if mat[i][j]:
                    for a in range(3):
                        for b in range(3):
                            _iadd(out, {(i * 3 + a) * n + j * 3 + b: K(mat[i][j])}, 1)
        return out

    b1, b2 = beta_elem(beta1), beta_elem(beta2)
    beta = LinMap(K, 3, n * n, [vec_add(vec_scale(b1, -one), b2, -1), b1, b2])
    conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
    Q = Subspace.span(K, 3, [{2: one}])
    from .bundle import n0_from_connection

    N0 = n0_from_connection(B, Q, conn)
    NM = [{(i * 3 + a) * n + j * 3 + b: one}
          for i in range(m) for j in range(m) if i != j and (i, j) not in E
          for a in range(3) for b in range(3)]
    Nhor = B.U.closure(NM + list(N0.rows))
    bc = build_calculus(B, Q, conn, Nhor)

    rep = Report(f"induced calculus on C(Sigma x Z3), |Sigma| = {m}")
    got = set()
    for x in range(n):
        for y in range(n):
            if x != y and not bc.N.contains({x * n + y: one}):
                got.add((divmod(x, 3), divmod(y, 3)))
    spanned = Subspace.span(K, n * n, [{x * n + y: one} for x in range(n) for y in range(n)
                                       if x != y and (divmod(x, 3), divmod(y, 3)) not in got])
    rep.add("N spanned by delta pairs", spanned == bc.N)
    def rules(refined):
        want = set()
        for i, j in itertools.product(range(m), repeat=2):
            for a, b in itertools.product(range(3), repeat=2):
                if (i, a) == (j, b):
                    continue
                ok = (a == b and (i, j) in E and not beta2[i][j]) \
                    or (i == j and a == (b - 1) % 3) \
                    or ((a + 1) % 3 == b and (i, j) in E and not beta1[i][j])
                # d-term and beta(pi_eps d:e) cancel on (i, a+1) -> (j, a)
                if refined and a == (b + 1) % 3 and (i, j) in E and K(beta1[i][j]) + K(beta2[i][j]) == one:
                    ok = True
                if ok:
                    want.add(((i, a), (j, b)))
        return want

    for refined, name in ((False, "edge set matches the closed-form rules"),
                          (True, "edge set matches the refined rules")):
        want = rules(refined)
        extra, missing = sorted(got - want), sorted(want - got)
        rep.add(name, not extra and not missing,
                {"unexpected": [str(e) for e in extra[:5]], "missing": [str(e) for e in missing[:5]]})
    rep.data["edges"] = len(got)
    rep.data["dim Omega^1(P)"] = bc.dim

    disp = displayed_omega_g(m, E, beta1, beta2, K)
    cls = bc.form_class({1: one})  # [d:g] in the chosen basis of ker eps / Q
    w = vec_scale(bc.calc.project(disp), one / cls[0])
    omega_disp = LinMap(K, bc.forms_dim, bc.dim, [w])
    rep.extend(check_connection(bc, omega_disp), "displayed omega(d:g): ")
    chi = bc.chi_N(w)
    unit_form = tensor_vec(B.P.unit, {0: one}, bc.forms_dim)
    k0 = next(iter(unit_form))
    ratio = chi.get(k0, K.zero) / unit_form[k0]
    rep.data["chi_N(displayed) / (1 (x) [d:g])"] = \
        str(ratio) if chi == vec_scale(unit_form, ratio) else "not proportional"
    rep.extend(check_connection(bc, bc.omega), "pipeline omega: ")
    bc.displayed = omega_disp
    rep.bc = bc
    return rep


def _pair(m, i, a, j, b):
    n = 3 * m
    return (i * 3 + a % 3) * n + j * 3 + b % 3


def displayed_omega_g(m, E, beta1, beta2, K=QQ) -> dict:
    """The projected connection form on [d:g] exactly as displayed for this example."""
    one = K.one
    E = set(map(tuple, E))
    out = {}
    for i, j in E:
        for a in range(3):
            if not beta2[i][j] and beta1[i][j]:
                _iadd(out, {_pair(m, i, a, j, a): K(beta1[i][j])}, 1)
            if not beta1[i][j]:
                _iadd(out, {_pair(m, i, a - 1, j, a): one}, -1)
    for i in range(m):
        for a in range(3):
            _iadd(out, {_pair(m, i, a - 1, i, a): one}, -1)
    return out


def displayed_omega_u_g2(m, beta1, beta2, K=QQ, corrected=False) -> dict:
    """omega_U(d:g^2) as displayed; ``corrected`` flips the d_U term and adds beta(pi_eps d:e)."""
    one = K.one
    out = {}
    for i in range(m):
        for j in range(m):
            for a in range(3):
                if beta1[i][j]:
                    _iadd(out, {_pair(m, i, a - 1, j, a): K(beta1[i][j])}, 1)
                if beta2[i][j]:
                    _iadd(out, {_pair(m, i, a, j, a): K(beta2[i][j])}, 1)
                if corrected and (beta1[i][j] or beta2[i][j]):
                    _iadd(out, {_pair(m, i, a + 1, j, a): K(beta1[i][j]) + K(beta2[i][j])}, -1)
                # 1 (x) d:g^{a+1} (x) 1 (x) d:g^a with 1 = sum of d:i
                _iadd(out, {_pair(m, i, a + 1, j, a): one}, 1 if corrected else -1)
    return out


def cycle_bundle_sweep(values=(1, 2, -1), K=QQ) -> Report:
    """Sigma a 3-cycle; beta1, beta2 each zero or a single entry equal to v, for v in values."""
    from .bundle import check_connection

    labels = ["0", "1", "2"]
    E = [(i, j) for i in range(3) for j in range(3) if i != j]
    rep = Report("induced calculus on C(Sigma x Z3), Sigma a 3-cycle, single-entry sweep")
    names = {
        "closed": "edge set matches the closed-form rules",
        "refined": "edge set matches the refined rules",
        "disp": "displayed omega(d:g) passes both connection axioms",
        "neg": "negated displayed omega(d:g) passes both connection axioms",
        "pipe": "pipeline omega passes both connection axioms",
    }
    for v in values:
        def mat(p):
            m = [[0] * 3 for _ in range(3)]
            if p:
                m[p[0]][p[1]] = v
            return m

        count = dict.fromkeys(names, 0)
        bad = dict.fromkeys(names)
        points = 0
        for p1, p2 in itertools.product([None] + E, repeat=2):
            r = induced_bundle_edges_check(labels, E, mat(p1), mat(p2), K)
            c = {x.name: x.passed for x in r.checks}
            bc = r.bc
            neg = LinMap(K, 1, bc.dim, [vec_scale(bc.displayed.cols[0], -K.one)])
            got = {
                "closed": c[names["closed"]],
                "refined": c[names["refined"]],
                "disp": all(x.passed for x in r.checks if x.name.startswith("displayed omega")),
                "neg": check_connection(bc, neg).ok,
                "pipe": all(x.passed for x in r.checks if x.name.startswith("pipeline omega")),
            }
            points += 1
            for key, ok in got.items():
                count[key] += ok
                if not ok and bad[key] is None:
                    bad[key] = {"beta1": p1, "beta2": p2}
        rep.data[f"value {v}"] = {names[k]: f"{count[k]}/{points}" for k in names}
        for key, name in names.items():
            rep.add(f"value {v}: {name}", count[key] == points, bad[key])
    return rep


def simplicial_h1(cx: DiscreteComplex) -> int:
    """dim H^1 of the simplicial complex underlying cx, computed with sympy.

    Vertices, unordered edges {i, j} with both directions in E, and
    unordered triangles whose orderings all lie in F.  Independent of the
    forms machinery; used as an oracle for :func:`h1`.
    """
    import sympy

    n = cx.n
    E = set(cx.E)
    F = set(cx.F)
    edges = sorted({(min(i, j), max(i, j)) for i, j in E if (j, i) in E})
    tris = sorted(t for t in itertools.combinations(range(n), 3)
                  if all(p in F for p in itertools.permutations(t)))
    eidx = {e: k for k, e in enumerate(edges)}
    d0 = sympy.zeros(len(edges), n)
    for k, (i, j) in enumerate(edges):
        d0[k, i], d0[k, j] = -1, 1
    d1 = sympy.zeros(len(tris), len(edges))
    for k, (i, j, l) in enumerate(tris):
        d1[k, eidx[(j, l)]] += 1
        d1[k, eidx[(i, l)]] -= 1
        d1[k, eidx[(i, j)]] += 1
    r0 = d0.rank() if edges else 0
    r1 = d1.rank() if tris and edges else 0
    return len(edges) - r1 - r0
