"""Bicrossproduct Hopf algebras C(Sigma) >|< CG from a group factorization X = G Sigma.

For every x in X there are unique g in G, s in Sigma with x = g s.  The
actions are read off from s g = (s |> g)(s <| g).  The bicrossproduct has
basis d:s (x) g with

    (d:s (x) g)(d:t (x) h) = [s <| g == t] d:s (x) gh
    Delta(d:s (x) g)       = sum_{ab=s} d:a (x) (b |> g)  (x)  d:b (x) g
    S(d:s (x) g)           = d:(s <| g)^-1 (x) (s |> g)^-1

It is a trivial bundle over C(Sigma) with fibre CG, pi(m (x) h) = eps(m) h
and Phi(h) = 1 (x) h.  A map gamma: CG -> C(Sigma), i.e. a function on
G x Sigma supported on Y = {(g, s) : s |> g = g}, gives a strong
left-invariant connection, and with a subset S of Sigma a left-covariant
calculus on the total space.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .bundle import (
    BundleCalculus,
    _forms_quotient,
    _theta_N,
    build_calculus,
    canonical_connection,
    connection_from_beta_universal,
    homogeneous_bundle,
    left_covariance_check,
    n0_from_connection,
    verify_universal_bundle,
)
from .calculus import left_coproduct_tensor, theta_map
from .hopf import FinHopf, Group, function_algebra, group_algebra, invariant_subalgebra, tensor_label
from .linalg import LinMap, Quotient, Subspace, _iadd, tensor_vec, vec_add, vec_scale
from .report import Report
from .scalars import QQ, parse_scalar

__all__ = [
    "BicrossError",
    "MatchedPair",
    "matched_pair_from_factorization",
    "Bicross",
    "bicrossproduct",
    "GammaData",
    "gamma_condition_check",
    "beta_from_gamma",
    "beta_compatibility_check",
    "q0_bicross",
    "q0_bicross_finite",
    "qp_bicross_finite",
    "BicrossCalculus",
    "bicross_calculus",
    "gamma_space_dimension",
    "z3z2",
    "z6z6",
    "universal_fibre_example",
    "zero_fibre_example",
]


class BicrossError(ValueError):
    pass


# ------------------------------------------------------------ matched pairs

@dataclass
class MatchedPair:
    G: Group
    Sigma: Group
    tri: list  # tri[s][g] = s |> g
    tle: list  # tle[s][g] = s <| g

    def __post_init__(self):
        G, Sg = self.G, self.Sigma
        if len(self.tri) != Sg.n or len(self.tle) != Sg.n:
            raise BicrossError("action tables need one row per element of Sigma")
        for s in range(Sg.n):
            if len(self.tri[s]) != G.n or len(self.tle[s]) != G.n:
                raise BicrossError("action tables need one column per element of G")
            if self.tri[s][G.e] != G.e:
                raise BicrossError(f"s |> e != e at s = {Sg.labels[s]}")
            if self.tle[s][G.e] != s:
                raise BicrossError(f"s <| e != s at s = {Sg.labels[s]}")
        for g in range(G.n):
            if self.tle[Sg.e][g] != Sg.e:
                raise BicrossError(f"e <| g != e at g = {G.labels[g]}")
            if self.tri[Sg.e][g] != g:
                raise BicrossError(f"e |> g != g at g = {G.labels[g]}")

    def isotropy(self, g: int) -> list:
        return [s for s in range(self.Sigma.n) if self.tri[s][g] == g]

    @property
    def Y(self) -> list:
        return [(g, s) for g in range(self.G.n) for s in self.isotropy(g)]

    def to_json(self) -> dict:
        return {"schema": 1, "G": self.G.to_json(), "Sigma": self.Sigma.to_json(),
                "tri": self.tri, "tle": self.tle}

    @classmethod
    def from_json(cls, data) -> "MatchedPair":
        if isinstance(data, str):
            data = json.loads(data)
        if "cocycle" in data:
            raise BicrossError("cocycle bicrossproducts are not supported")
        G, Sg = Group.from_json(data["G"]), Group.from_json(data["Sigma"])
        return cls(G, Sg, [list(r) for r in data["tri"]], [list(r) for r in data["tle"]])


def _subgroup(X: Group, gens, name: str, gen_name: str | None) -> tuple:
    elems = X.subgroup_generated(gens)
    if gen_name is not None and len(gens) == 1:
        g = gens[0]
        order = [X.power(g, k) for k in range(X.order(g))]
        labels = ["e"] + [gen_name if k == 1 else f"{gen_name}^{k}" for k in range(1, len(order))]
    else:
        order = [X.e] + [x for x in elems if x != X.e]
        labels = [X.labels[x] for x in order]
    pos = {x: i for i, x in enumerate(order)}
    table = [[pos[X.mul(a, b)] for b in order] for a in order]
    return Group(table, 0, labels, name), order


def matched_pair_from_factorization(X: Group, g_gens, s_gens, g_name="g", s_name="s") -> MatchedPair:
    """Actions from s g = (s |> g)(s <| g) for X = G Sigma, G = <g_gens>, Sigma = <s_gens>.

    Generators may be element indices or labels of X.  Single cyclic
    generators get power labels e, g, g^2, ...
    """
    def idx(x):
        return X.index(x) if isinstance(x, str) else int(x)

    g_gens = [idx(x) for x in g_gens]
    s_gens = [idx(x) for x in s_gens]
    G, gl = _subgroup(X, g_gens, f"Z{X.order(g_gens[0])}" if len(g_gens) == 1 else "G", g_name)
    Sg, sl = _subgroup(X, s_gens, f"Z{X.order(s_gens[0])}" if len(s_gens) == 1 else "Sigma", s_name)
    fact = {}
    for a, g in enumerate(gl):
        for b, s in enumerate(sl):
            x = X.mul(g, s)
            if x in fact:
                raise BicrossError(f"factorization is not unique at {X.labels[x]}")
            fact[x] = (a, b)
    if len(fact) != X.n:
        raise BicrossError(f"G Sigma covers {len(fact)} of {X.n} elements")
    tri = [[0] * G.n for _ in range(Sg.n)]
    tle = [[0] * G.n for _ in range(Sg.n)]
    for b, s in enumerate(sl):
        for a, g in enumerate(gl):
            tri[b][a], tle[b][a] = fact[X.mul(s, g)]
    return MatchedPair(G, Sg, tri, tle)


# ---------------------------------------------------------- bicrossproduct

@dataclass
class Bicross:
    mp: MatchedPair
    P: FinHopf
    H: FinHopf
    M: FinHopf
    pi: LinMap
    Phi: LinMap
    Phi_inv: LinMap
    Msub: Subspace

    @property
    def K(self):
        return self.P.K

    def idx(self, s: int, g: int) -> int:
        return s * self.mp.G.n + g

    def elem(self, s, g) -> dict:
        """d:s (x) g with s, g as indices or labels."""
        if isinstance(s, str):
            s = self.mp.Sigma.index(s)
        if isinstance(g, str):
            g = self.mp.G.index(g)
        return {self.idx(s, g): self.K.one}

    def m(self, v: dict) -> dict:
        """C(Sigma) -> P, m |-> m (x) e."""
        e = self.mp.G.e
        return {self.idx(s, e): c for s, c in v.items()}

    def h(self, v: dict) -> dict:
        return self.Phi.apply(v)

    def mm(self, rho: dict) -> dict:
        """C(Sigma) (x) C(Sigma) -> P (x) P."""
        n, k = self.P.n, self.M.n
        e = self.mp.G.e
        return {self.idx(a, e) * n + self.idx(b, e): c for x, c in rho.items() for a, b in [divmod(x, k)]}

    def act(self, h: dict, m: dict) -> dict:
        """h |> m = Phi(h_1) m Phi(S h_2), returned in C(Sigma)."""
        P, H = self.P, self.H
        out: dict = {}
        for x, c in H.coproduct(h).items():
            a, b = divmod(x, H.n)
            v = P.mul(P.mul(self.Phi.cols[a], self.m(m)), self.Phi.apply(H.S({b: H.K.one})))
            _iadd(out, v, c)
        G = self.mp.G
        res = {}
        for y, c in out.items():
            s, g = divmod(y, G.n)
            if g != G.e:
                raise BicrossError("action left C(Sigma)")
            res[s] = c
        return res

    def coaction(self, h: dict) -> dict:
        """alpha: CG -> CG (x) C(Sigma), g |-> sum_s (s |> g) (x) d:s; index g*|Sigma| + s."""
        mp = self.mp
        k = mp.Sigma.n
        out: dict = {}
        for g, c in h.items():
            for s in range(k):
                _iadd(out, {mp.tri[s][g] * k + s: c}, 1)
        return out

    def fmt(self, v: dict) -> str:
        return self.P.fmt(v)


def bicrossproduct(mp: MatchedPair, K=QQ) -> Bicross:
    G, Sg = mp.G, mp.Sigma
    ng, ns = G.n, Sg.n
    n = ng * ns
    one = K.one

    def ix(s, g):
        return s * ng + g

    labels = [tensor_label("d:" + Sg.labels[s], G.labels[g]) for s in range(ns) for g in range(ng)]
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for s, g, t, h in itertools.product(range(ns), range(ng), range(ns), range(ng)):
        if mp.tle[s][g] == t:
            mult[ix(s, g)][ix(t, h)] = {ix(s, G.mul(g, h)): one}
    unit = {ix(s, G.e): one for s in range(ns)}
    delta = [{} for _ in range(n)]
    for a, b in itertools.product(range(ns), repeat=2):
        s = Sg.mul(a, b)
        for g in range(ng):
            delta[ix(s, g)][ix(a, mp.tri[b][g]) * n + ix(b, g)] = one
    counit = [one if s == Sg.e else K.zero for s in range(ns) for g in range(ng)]
    S = [{ix(Sg.inv[mp.tle[s][g]], G.inv[mp.tri[s][g]]): one} for s in range(ns) for g in range(ng)]
    name = f"C({Sg.name})>|<C{G.name}"
    try:
        P = FinHopf(K, labels, mult, unit, delta, counit, S, name)
    except ValueError as exc:
        raise BicrossError(f"not a matched pair: {exc}") from exc
    H = group_algebra(G, K)
    M = function_algebra(Sg, K)
    pi = LinMap(K, n, ng, [({g: one} if s == Sg.e else {}) for s in range(ns) for g in range(ng)])
    Phi = LinMap(K, ng, n, [{ix(s, g): one for s in range(ns)} for g in range(ng)])
    Phi_inv = Phi.compose(H.antipode)
    Msub = Subspace.span(K, n, [{ix(s, G.e): one} for s in range(ns)])
    bx = Bicross(mp, P, H, M, pi, Phi, Phi_inv, Msub)
    rep = _structure_report(bx)
    rep.raise_on_failure(BicrossError)
    bx.report = rep
    return bx


def _structure_report(bx: Bicross) -> Report:
    P, H, K = bx.P, bx.H, bx.K
    one = K.one
    n, h = P.n, H.n
    rep = Report(f"bicrossproduct {P.name}")
    rep.add("Phi is an algebra map",
            all(bx.Phi.apply(H.mult[a][b]) == P.mul(bx.Phi.cols[a], bx.Phi.cols[b])
                for a in range(h) for b in range(h)) and bx.Phi.apply(H.unit) == P.unit)
    rep.add("pi is an algebra map",
            all(bx.pi.apply(P.mult[i][j]) == H.mul(bx.pi.cols[i], bx.pi.cols[j])
                for i in range(n) for j in range(n)))
    rep.add("pi is a coalgebra map",
            all(bx.pi.kron(bx.pi).apply(P.delta[i]) == H.coproduct(bx.pi.cols[i]) for i in range(n)))
    idpi = LinMap.identity(K, n).kron(bx.pi)
    rep.add("Delta_R o Phi = (Phi (x) id) Delta",
            all(idpi.apply(P.coproduct(bx.Phi.cols[a])) == bx.Phi.kron(LinMap.identity(K, h)).apply(H.delta[a])
                for a in range(h)))
    # Delta Phi(h) = Phi(h_1^(1)) (x) h_1^(2) Phi(h_2)
    ok = True
    k = bx.M.n
    for a in range(h):
        rhs: dict = {}
        for x, c in H.delta[a].items():
            a1, a2 = divmod(x, h)
            for y, v in bx.coaction({a1: one}).items():
                hb, s = divmod(y, k)
                right = P.mul(bx.m({s: one}), bx.Phi.cols[a2])
                _iadd(rhs, tensor_vec(bx.Phi.cols[hb], right, n), c * v)
        if P.coproduct(bx.Phi.cols[a]) != rhs:
            ok = False
            break
    rep.add("Delta Phi(h) = Phi(h_1^(1)) (x) h_1^(2) Phi(h_2)", ok)
    return rep


# -------------------------------------------------------------------- gamma

@dataclass
class GammaData:
    mp: MatchedPair
    values: dict = field(default_factory=dict)  # (g, s) -> scalar, free entries only
    K: object = QQ

    def __post_init__(self):
        G, Sg = self.mp.G, self.mp.Sigma
        Y = set(self.mp.Y)
        vals = {}
        for (g, s), v in self.values.items():
            v = self.K(v) if not hasattr(v, "parent") else v
            if not v:
                continue
            if (g, s) not in Y:
                raise BicrossError(f"gamma({G.labels[g]}, {Sg.labels[s]}) is outside Y")
            if (g == G.e or s == Sg.e) and v != self.K.one:
                raise BicrossError("gamma(e, s) = 1 = gamma(g, e) is required")
            vals[(g, s)] = v
        for s in range(Sg.n):
            vals[(G.e, s)] = self.K.one
        for g in range(G.n):
            vals[(g, Sg.e)] = self.K.one
        self.values = vals

    def __call__(self, g: int, s: int):
        return self.values.get((g, s), self.K.zero)

    def linmap(self) -> LinMap:
        """gamma: CG -> C(Sigma)."""
        G, Sg = self.mp.G, self.mp.Sigma
        cols = [{s: self(g, s) for s in range(Sg.n) if self(g, s)} for g in range(G.n)]
        return LinMap(self.K, G.n, Sg.n, cols)

    def to_json(self) -> dict:
        G, Sg = self.mp.G, self.mp.Sigma
        return {"schema": 1, "gamma": [[G.labels[g], Sg.labels[s], str(v)]
                                       for (g, s), v in sorted(self.values.items())
                                       if g != G.e and s != Sg.e]}

    @classmethod
    def from_json(cls, mp: MatchedPair, data, K=QQ) -> "GammaData":
        if isinstance(data, str):
            data = json.loads(data)
        G, Sg = mp.G, mp.Sigma
        vals = {}
        for g, s, v in data["gamma"]:
            gi = G.index(g) if isinstance(g, str) else g
            si = Sg.index(s) if isinstance(s, str) else s
            vals[(gi, si)] = parse_scalar(str(v), K)
        return cls(mp, vals, K)


def gamma_space_dimension(mp: MatchedPair):
    """Number of free values of gamma on Y after gamma(e, .) = gamma(., e) = 1."""
    G, Sg = mp.G, mp.Sigma
    rep = Report(f"gamma space for {Sg.name} acting on {G.name}")
    iso = {}
    dim = 0
    for g in range(G.n):
        I = mp.isotropy(g)
        iso[G.labels[g]] = [Sg.labels[s] for s in I]
        if g != G.e:
            dim += len(I) - 1
    rep.data["isotropy"] = iso
    rep.data["|Y|"] = len(mp.Y)
    rep.data["dimension"] = dim
    rep.add("I(e) = Sigma", len(mp.isotropy(G.e)) == Sg.n)
    rep.add("isotropy sets are subgroups",
            all(set(Sg.subgroup_generated(mp.isotropy(g))) == set(mp.isotropy(g)) for g in range(G.n)))
    return dim, rep


def gamma_condition_check(bx: Bicross, gamma: LinMap) -> Report:
    """gamma(1) = 1, eps o gamma = eps and gamma(h_1) h_2^(2) (x) h_2^(1) = gamma(h_2) (x) h_1."""
    H, M, K = bx.H, bx.M, bx.K
    one = K.one
    h, k = H.n, M.n
    rep = Report("gamma intertwiner")
    rep.add("gamma(1) = 1", gamma.apply(H.unit) == M.unit)
    bad = next((H.labels[a] for a in range(h) if M.eps(gamma.cols[a]) != H.counit[a]), None)
    rep.add("eps o gamma = eps", bad is None, bad)
    bad = None
    for a in range(h):
        lhs, rhs = {}, {}
        for x, c in H.delta[a].items():
            a1, a2 = divmod(x, h)
            g1 = gamma.cols[a1]
            for y, v in bx.coaction({a2: one}).items():
                hb, s = divmod(y, k)
                for z, w in M.mul(g1, {s: one}).items():
                    _iadd(lhs, {z * h + hb: w}, c * v)
            for z, w in gamma.cols[a2].items():
                _iadd(rhs, {z * h + a1: w}, c)
        if lhs != rhs:
            bad = H.labels[a]
            break
    rep.add("gamma(h_1) h_2^(2) (x) h_2^(1) = gamma(h_2) (x) h_1", bad is None, bad)
    return rep


def _beta_general(bx: Bicross, gamma: LinMap) -> LinMap:
    """beta_U(h) = S(gamma(h)_1) d_U gamma(h)_2 in C(Sigma) (x) C(Sigma)."""
    M, K = bx.M, bx.K
    k = M.n
    cols = []
    for a in range(bx.H.n):
        out: dict = {}
        for x, c in M.coproduct(gamma.cols[a]).items():
            u, v = divmod(x, k)
            Su = M.S({u: K.one})
            # S(u) (1 (x) v - v (x) 1)
            _iadd(out, tensor_vec(Su, {v: K.one}, k), c)
            _iadd(out, tensor_vec(M.mul(Su, {v: K.one}), M.unit, k), -c)
        cols.append(out)
    return LinMap(K, bx.H.n, k * k, cols)


def beta_from_gamma(bx: Bicross, gamma) -> LinMap:
    """beta_U as a map CG -> C(Sigma) (x) C(Sigma), beta_U(g)_{s,t} = gamma(g, s^-1 t) - 1.

    Both the coproduct formula and the matrix formula are computed and
    must agree; the value on e is 0 so beta_U(pi_eps h) = beta_U(h).
    """
    gl = gamma.linmap() if isinstance(gamma, GammaData) else gamma
    gamma_condition_check(bx, gl).raise_on_failure(BicrossError)
    G, Sg, K = bx.mp.G, bx.mp.Sigma, bx.K
    k = Sg.n
    general = _beta_general(bx, gl)
    cols = []
    for g in range(G.n):
        col = gl.cols[g]
        out = {}
        for s, t in itertools.product(range(k), repeat=2):
            v = col.get(Sg.mul(Sg.inv[s], t), K.zero) - col.get(Sg.e, K.zero)
            if v:
                out[s * k + t] = v
        cols.append(out)
    finite = LinMap(K, G.n, k * k, cols)
    if finite != general:
        raise BicrossError("the two beta_U formulas disagree")
    return finite


def beta_compatibility_check(bx: Bicross, beta: LinMap) -> Report:
    """Left invariance of beta_U and the compatibility identity on group-likes.

    For h = g group-like both sides live in C(Sigma)^(x)2 (x) CG:
        X(g) = sum_s [beta(g) d:s - d:s beta(g)] (x) (s |> g)
        D(g) = sum_s d_U(d:s) (x) (s |> g)
    The identity that holds is X = -D; the opposite sign is recorded in
    the report data since it only agrees when |> is trivial.
    """
    M, H, K = bx.M, bx.H, bx.K
    one = K.one
    k, h = M.n, H.n
    kk = k * k
    rep = Report("beta_U compatibility")
    bad = None
    for g in range(h):
        lhs = left_coproduct_tensor(M, beta.cols[g])
        if lhs != tensor_vec(M.unit, beta.cols[g], kk):
            bad = H.labels[g]
            break
    rep.add("beta_U left-invariant", bad is None, bad)
    plus = minus = None
    for g in range(h):
        X, D = {}, {}
        b = beta.cols[g]
        for y, c in bx.coaction({g: one}).items():
            hb, s = divmod(y, k)
            for x, v in b.items():
                u, w = divmod(x, k)
                # (beta d:s)_{u,w} = beta_{u,w}[w = s]; (d:s beta)_{u,w} = [u = s] beta_{u,w}
                coef = (v if w == s else 0) - (v if u == s else 0)
                if coef:
                    _iadd(X, {x * h + hb: coef}, c)
            for u in range(k):
                # d_U d:s = 1 (x) d:s - d:s (x) 1
                _iadd(D, {(u * k + s) * h + hb: one}, c)
                _iadd(D, {(s * k + u) * h + hb: one}, -c)
        if X != D and plus is None:
            plus = H.labels[g]
        if X != vec_scale(D, -one) and minus is None:
            minus = H.labels[g]
    rep.add("beta(h_1) h_2^(2) (x) h_2^(1) - h_1^(2) beta(h_2) (x) h_1^(1) = -d_U h^(2) (x) h^(1)",
            minus is None, minus)
    rep.data["same identity with +d_U h^(2) (x) h^(1)"] = plus is None
    return rep


# ------------------------------------------------------------------ ideals

def _i_map(bx: Bicross, gamma: LinMap) -> LinMap:
    """i(h) = gamma(h_1) Phi(h_2)."""
    P, H = bx.P, bx.H
    cols = []
    for a in range(H.n):
        out: dict = {}
        for x, c in H.delta[a].items():
            a1, a2 = divmod(x, H.n)
            _iadd(out, P.mul(bx.m(gamma.cols[a1]), bx.Phi.cols[a2]), c)
        cols.append(out)
    return LinMap(bx.K, H.n, P.n, cols)


def _iqp_rows(bx: Bicross, gamma: LinMap, Q: Subspace) -> list:
    """gamma(q_1)(q_2 |> m) Phi(q_3 h) over bases."""
    P, H, K = bx.P, bx.H, bx.K
    one = K.one
    h = H.n
    rows = []
    for q in Q.rows:
        terms = [(x, c) for x, c in H.coproduct2(q).items()]
        for mi in range(bx.M.n):
            for hb in range(h):
                out: dict = {}
                for x, c in terms:
                    ab, a3 = divmod(x, h)
                    a1, a2 = divmod(ab, h)
                    gm = bx.M.mul(gamma.cols[a1], bx.act({a2: one}, {mi: one}))
                    _iadd(out, P.mul(bx.m(gm), bx.Phi.apply(H.mul({a3: one}, {hb: one}))), c)
                rows.append(out)
    return rows


def q0_bicross(bx: Bicross, gamma, Q: Subspace) -> Subspace:
    """span{gamma(q_1)(q_2 |> m) (x) q_3 h - eps(m) gamma(q_1 h_1) (x) q_2 h_2}."""
    gl = gamma.linmap() if isinstance(gamma, GammaData) else gamma
    P, H, K = bx.P, bx.H, bx.K
    one = K.one
    h = H.n
    i_map = _i_map(bx, gl)
    rows = []
    for q in Q.rows:
        terms = list(H.coproduct2(q).items())
        for mi in range(bx.M.n):
            em = bx.M.counit[mi]
            for hb in range(h):
                out: dict = {}
                for x, c in terms:
                    ab, a3 = divmod(x, h)
                    a1, a2 = divmod(ab, h)
                    gm = bx.M.mul(gl.cols[a1], bx.act({a2: one}, {mi: one}))
                    _iadd(out, P.mul(bx.m(gm), bx.Phi.apply(H.mul({a3: one}, {hb: one}))), c)
                if em:
                    _iadd(out, i_map.apply(H.mul(q, {hb: one})), -em)
                rows.append(out)
    return Subspace.span(K, P.n, rows)


def q0_bicross_finite(bx: Bicross, gamma: GammaData, Q: Subspace) -> Subspace:
    """Finite-group form: sum_g q_g gamma(g) d:(s <| g^-1) (x) gh for s != e, plus
    sum_g q_g (d:e - gamma(g)) (x) g."""
    mp, P, K = bx.mp, bx.P, bx.K
    G, Sg = mp.G, mp.Sigma
    rows = []
    for q in Q.rows:
        for s in range(Sg.n):
            if s == Sg.e:
                continue
            for hh in range(G.n):
                out: dict = {}
                for g, c in q.items():
                    t = mp.tle[s][G.inv[g]]
                    v = gamma(g, t)
                    if v:
                        _iadd(out, {bx.idx(t, G.mul(g, hh)): v}, c)
                rows.append(out)
        out = {}
        for g, c in q.items():
            _iadd(out, {bx.idx(Sg.e, g): K.one}, c)
            for t in range(Sg.n):
                if gamma(g, t):
                    _iadd(out, {bx.idx(t, g): gamma(g, t)}, -c)
        rows.append(out)
    return Subspace.span(K, P.n, rows)


def qp_bicross_finite(bx: Bicross, gamma: GammaData, Q: Subspace, S) -> Subspace:
    """First span of the finite Q0 form + d:e (x) Q + C(S) (x) CG."""
    mp, P, K = bx.mp, bx.P, bx.K
    G, Sg = mp.G, mp.Sigma
    rows = []
    for q in Q.rows:
        for s in range(Sg.n):
            if s == Sg.e:
                continue
            for hh in range(G.n):
                out: dict = {}
                for g, c in q.items():
                    t = mp.tle[s][G.inv[g]]
                    if gamma(g, t):
                        _iadd(out, {bx.idx(t, G.mul(g, hh)): gamma(g, t)}, c)
                rows.append(out)
        rows.append({bx.idx(Sg.e, g): c for g, c in q.items()})
    for s in S:
        for g in range(G.n):
            rows.append({bx.idx(s, g): K.one})
    return Subspace.span(K, P.n, rows)


def _right_ideal(P: FinHopf, rows) -> Subspace:
    one = P.K.one
    return Subspace.span(P.K, P.n, [P.mul(r, {b: one}) for r in rows for b in range(P.n)])


# --------------------------------------------------------------- calculus

@dataclass
class BicrossCalculus:
    bx: Bicross
    gamma: LinMap
    Q: Subspace
    S: tuple
    bc: BundleCalculus
    QP: Subspace
    forms: Quotient
    report: Report

    @property
    def dim(self) -> int:
        """dim ker eps_P / Q_P, the number of left-invariant forms."""
        return self.forms.dim

    def omega(self, x: dict) -> dict:
        """Invariant form [x] as an element of Omega^1(P)."""
        P = self.bx.P
        th = self._theta
        return self.bc.calc.project(th.apply(tensor_vec(P.unit, P.pi_eps(x), P.n)))

    def d(self, u: dict) -> dict:
        return self.bc.calc.d(u)

    def left(self, a: dict, w: dict) -> dict:
        return self.bc.calc.left(a, w)

    def right(self, w: dict, b: dict) -> dict:
        return self.bc.calc.right(w, b)

    def combo(self, *terms) -> dict:
        """sum of a_k omega(x_k) for pairs (a_k, x_k)."""
        out: dict = {}
        for a, x in terms:
            _iadd(out, self.left(a, self.omega(x)), 1)
        return out


def bicross_calculus(bx: Bicross, gamma, Q: Subspace, S=()) -> BicrossCalculus:
    """Calculus on P from gamma, a right ideal Q of CG and the killed set S of Sigma."""
    gd = gamma if isinstance(gamma, GammaData) else None
    gl = gamma.linmap() if gd else gamma
    P, H, K = bx.P, bx.H, bx.K
    one = K.one
    Sg = bx.mp.Sigma
    S = tuple(sorted(Sg.index(s) if isinstance(s, str) else s for s in S))
    if Sg.e in S:
        raise BicrossError("the killed set must not contain e")
    rep = Report(f"bicrossproduct calculus on {P.name}")
    rep.extend(gamma_condition_check(bx, gl))
    beta = beta_from_gamma(bx, gl)
    rep.extend(beta_compatibility_check(bx, beta))
    CA = homogeneous_bundle(P, H, bx.pi)
    rep.add("invariant subalgebra is C(Sigma) (x) 1", invariant_subalgebra(CA) == bx.Msub)
    B = verify_universal_bundle(CA, bx.Msub)
    betaP = LinMap(K, H.n, P.n * P.n, [bx.mm(c) for c in beta.cols])
    conn = connection_from_beta_universal(B, bx.Phi, betaP, bx.Phi_inv)
    i_map = _i_map(bx, gl)
    canon = canonical_connection(B, i_map)
    rep.add("omega_U from beta_U = canonical omega_U of i(h) = gamma(h_1) (x) h_2",
            all(conn(H.pi_eps({a: one})) == canon(H.pi_eps({a: one})) for a in range(H.n)))
    N0 = n0_from_connection(B, Q, conn)
    Q0 = q0_bicross(bx, gl, Q)
    th, _ = theta_map(P)
    rep.add("theta(P (x) Q0) = N0",
            Subspace.span(K, P.n * P.n, [th.apply(tensor_vec({u: one}, r, P.n))
                                          for u in range(P.n) for r in Q0.rows]) == N0)
    if gd is not None:
        rep.add("Q0 finite form = Q0", q0_bicross_finite(bx, gd, Q) == Q0)
    k = Sg.n
    NM = [bx.mm({u * k + t: one}) for u in range(k) for t in range(k)
          if Sg.mul(Sg.inv[u], t) in S]
    Nhor = B.U.closure(NM + list(N0.rows))
    bc = build_calculus(B, Q, conn, Nhor)
    rep.extend(bc.report, "pipeline: ")
    rep.add("Delta_L(N) inside P (x) N", left_covariance_check(bc))
    QP, _, _ = _theta_N(bc)
    QM_P = Subspace.span(K, P.n, [bx.elem(s, g) for s in S for g in range(bx.mp.G.n)])
    iqp = Subspace.span(K, P.n, _iqp_rows(bx, gl, Q))
    rep.add("Q_P = Q0 + Q_M P + i(Q) P", QP == Q0 + QM_P + iqp)
    if gd is not None:
        rep.add("Q_P finite form = Q_P", qp_bicross_finite(bx, gd, Q, S) == QP)
    forms = _forms_quotient(P, QP)
    rep.data["dim Q0"] = Q0.dim
    rep.data["dim Q_P"] = QP.dim
    rep.data["dim ker eps / Q_P"] = forms.dim
    rep.data["dim Omega^1(P)"] = bc.dim
    out = BicrossCalculus(bx, gl, Q, S, bc, QP, forms, rep)
    out._theta = th
    out.Q0 = Q0
    out.beta = beta
    for r in QP.rows:
        if out.omega(r):
            rep.add("invariant forms vanish on Q_P", False, P.fmt(r))
            break
    else:
        rep.add("invariant forms vanish on Q_P", True)
    return out


# --------------------------------------------------------------- examples

def z3z2(K=QQ) -> Bicross:
    """C(Z3) >|< CZ2 from S3 = Z2 Z3 with g = a, s = ab."""
    X = Group.symmetric3()
    a, b = X.index("a"), X.index("b")
    mp = matched_pair_from_factorization(X, [a], [X.mul(a, b)], "g", "s")
    return bicrossproduct(mp, K)


def _s3xs3_pair():
    S3 = Group.symmetric3()
    X = Group.direct_product(S3, S3, "S3xS3")
    c, t = S3.index("ab"), S3.index("a")
    g = X.index(f"({S3.labels[c]},{S3.labels[t]})")
    s = X.index(f"({S3.labels[t]},{S3.labels[c]})")
    return X, g, s


def z6z6(K=QQ, build: bool = True):
    """Z6 |><| Z6 inside S3 x S3: G = <(c, t)>, Sigma = <(t, c)> with c a 3-cycle, t a transposition."""
    X, g, s = _s3xs3_pair()
    mp = matched_pair_from_factorization(X, [g], [s], "g", "s")
    return bicrossproduct(mp, K) if build else mp


def _gamma_z3z2(bx: Bicross, g1, g2) -> GammaData:
    G, Sg = bx.mp.G, bx.mp.Sigma
    K = bx.K
    return GammaData(bx.mp, {(G.index("g"), Sg.index("s")): K(g1), (G.index("g"), Sg.index("s^2")): K(g2)}, K)


def _rel(rep: Report, name: str, lhs: dict, rhs: dict):
    rep.add(name, lhs == rhs)


def universal_fibre_example(gamma1=2, gamma2=3, K=QQ):
    """Universal fibre calculus (Q = 0) and killed set {s^2} on C(Z3) >|< CZ2."""
    bx = z3z2(K)
    one = K.one
    gd = _gamma_z3z2(bx, K(gamma1), K(gamma2))
    Q = Subspace.zero(K, bx.H.n)
    bcx = bicross_calculus(bx, gd, Q, ["s^2"])
    rep = Report("C(Z3) >|< CZ2 with universal fibre calculus and S = {s^2}")
    rep.extend(bcx.report)
    rep.data.update(bcx.report.data)
    want = Subspace.span(K, bx.P.n, [bx.elem("s^2", "e"), bx.elem("s^2", "g")])
    rep.add("Q_P = span{d:s^2} (x) CZ2", bcx.QP == want)
    rep.add("dim ker eps / Q_P = 3", bcx.dim == 3, bcx.dim)
    d_e, d_s, d_s2 = (bx.m({bx.mp.Sigma.index(x): one}) for x in ("e", "s", "s^2"))
    g = bx.h({bx.mp.G.index("g"): one})
    e_ = bx.h({bx.mp.G.e: one})
    w0 = bcx.omega(vec_add(bx.elem("e", "g"), bx.elem("e", "e"), -1))
    w1 = bcx.omega(bx.elem("s", "e"))
    w2 = bcx.omega(bx.elem("s", "g"))
    rep.add("omega_0, omega_1, omega_2 independent", _independent(bcx, [w0, w1, w2]))
    L, R = bcx.left, bcx.right
    _rel(rep, "d d:e = (d:s^2 - d:e) omega_1", bcx.d(d_e), L(vec_add(d_s2, d_e, -1), w1))
    _rel(rep, "d d:s = (d:e - d:s) omega_1", bcx.d(d_s), L(vec_add(d_e, d_s, -1), w1))
    _rel(rep, "d g = g (omega_0 - omega_1 + omega_2)", bcx.d(g),
         L(g, vec_add(vec_add(w0, w1, -1), w2)))
    _rel(rep, "omega_0 g = -g omega_0", R(w0, g), vec_scale(L(g, w0), -one))
    _rel(rep, "omega_1 g = g omega_2", R(w1, g), L(g, w2))
    _rel(rep, "omega_2 g = g omega_1", R(w2, g), L(g, w1))
    ds = [d_e, d_s, d_s2]
    for i in range(3):
        _rel(rep, f"omega_0 d:s^{i} = d:s^{i} omega_0", R(w0, ds[i]), L(ds[i], w0))
        _rel(rep, f"omega_1 d:s^{i} = d:s^{(i - 1) % 3} omega_1", R(w1, ds[i]), L(ds[(i - 1) % 3], w1))
        _rel(rep, f"omega_2 d:s^{i} = d:s^{(i + 1) % 3} omega_2", R(w2, ds[i]), L(ds[(i + 1) % 3], w2))
    rep.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"] = all(
        R(w2, ds[i]) == L(ds[(i - 1) % 3], w2) for i in range(3))
    beta = bcx.beta.cols[bx.mp.G.index("g")]
    g1, g2 = K(gamma1), K(gamma2)
    disp = [[0, g1, g2], [g2, 0, g1], [g1, g2, 0]]
    disp_v = {3 * i + j: K(disp[i][j]) for i in range(3) for j in range(3) if disp[i][j]}
    rep.data["beta_U(g)"] = [[str(beta.get(3 * i + j, K.zero)) for j in range(3)] for i in range(3)]
    rep.data["beta_U(g) equals the displayed matrix"] = beta == disp_v
    rep.data["beta_U(g) + (J - I) equals the displayed matrix"] = \
        vec_add(beta, {3 * i + j: one for i in range(3) for j in range(3) if i != j}) == disp_v
    rep.forms = (w0, w1, w2)
    rep.calc = bcx
    return rep


def _independent(bcx: BicrossCalculus, ws) -> bool:
    K = bcx.bx.K
    return Subspace.span(K, bcx.bc.dim, ws).dim == len(ws)


def zero_fibre_example(gamma1=2, gamma2=3, K=QQ):
    """Zero fibre calculus Q = C(g - e) and universal base on C(Z3) >|< CZ2."""
    bx = z3z2(K)
    one = K.one
    G, Sg = bx.mp.G, bx.mp.Sigma
    g1, g2 = K(gamma1), K(gamma2)
    gd = _gamma_z3z2(bx, g1, g2)
    Q = Subspace.span(K, bx.H.n, [{G.index("g"): one, G.e: -one}])
    Q0 = q0_bicross(bx, gd, Q)
    bcx = bicross_calculus(bx, gd, Q, [])
    degenerate = g1 * g2 == one
    rep = Report(f"C(Z3) >|< CZ2 with zero fibre calculus, gamma = ({g1}, {g2})")
    rep.extend(bcx.report)
    rep.data.update(bcx.report.data)
    rep.data["gamma1 gamma2 = 1"] = degenerate
    rep.add("dim Q0 = 2 if gamma1 gamma2 = 1 else 4", Q0.dim == (2 if degenerate else 4), Q0.dim)
    disp_q0 = Subspace.span(K, bx.P.n, [
        vec_add(vec_scale(bx.elem("s", G.mul(G.index("g"), h)), g1), bx.elem("s^2", h), -1)
        for h in range(G.n)] + [
        vec_add(vec_scale(bx.elem("s^2", G.mul(G.index("g"), h)), g2), bx.elem("s", h), -1)
        for h in range(G.n)])
    rep.add("Q0 = displayed span", Q0 == disp_q0)
    rep.add("dim ker eps / Q_P = 2 if gamma1 gamma2 = 1 else 0", bcx.dim == (2 if degenerate else 0), bcx.dim)
    rep.calc = bcx
    if not degenerate:
        return rep
    d_e, d_s, d_s2 = (bx.m({Sg.index(x): one}) for x in ("e", "s", "s^2"))
    g = bx.h({G.index("g"): one})
    w1 = bcx.omega(bx.elem("s", "e"))
    w2 = bcx.omega(bx.elem("s", "g"))
    rep.add("omega_1, omega_2 independent", _independent(bcx, [w1, w2]))
    L, R = bcx.left, bcx.right
    _rel(rep, "d d:e = (d:s^2 - d:e) omega_1 + gamma1 (d:s - d:e) omega_2", bcx.d(d_e),
         vec_add(L(vec_add(d_s2, d_e, -1), w1), L(vec_scale(vec_add(d_s, d_e, -1), g1), w2)))
    _rel(rep, "d d:s = (d:e - d:s) omega_1 + gamma1 (d:s^2 - d:s) omega_2", bcx.d(d_s),
         vec_add(L(vec_add(d_e, d_s, -1), w1), L(vec_scale(vec_add(d_s2, d_s, -1), g1), w2)))
    _rel(rep, "d g = (1 - gamma1) g (omega_2 - omega_1)", bcx.d(g),
         L(vec_scale(g, one - g1), vec_add(w2, w1, -1)))
    _rel(rep, "omega_1 g = g omega_2", R(w1, g), L(g, w2))
    _rel(rep, "omega_2 g = g omega_1", R(w2, g), L(g, w1))
    ds = [d_e, d_s, d_s2]
    for i in range(3):
        _rel(rep, f"omega_1 d:s^{i} = d:s^{(i - 1) % 3} omega_1", R(w1, ds[i]), L(ds[(i - 1) % 3], w1))
        _rel(rep, f"omega_2 d:s^{i} = d:s^{(i + 1) % 3} omega_2", R(w2, ds[i]), L(ds[(i + 1) % 3], w2))
    rep.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"] = all(
        R(w2, ds[i]) == L(ds[(i - 1) % 3], w2) for i in range(3))
    rep.forms = (w1, w2)
    return rep
