"""Quantum principal bundles, connections and calculus construction.

A bundle is a comodule algebra ``P`` over ``H`` with invariant subalgebra
``M``.  With the universal calculus, ``chi(u (x) v) = u Delta_R(v)`` maps
``Omega^1 P`` onto ``P (x) ker eps`` with kernel the horizontal forms
``P (Omega^1 M) P``.

:func:`build_calculus` takes a universal connection ``omega_U``, an
Ad-stable right ideal ``Q`` of ``H`` and a choice of horizontal
subbimodule, and produces ``N = <N_hor, P omega_U(Q) P>`` together with the
induced connection on ``Omega^1(P) = Omega^1 P / N``.  Every stage is
verified and failures carry a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .calculus import (
    QuotientCalculus,
    UniversalCalculus,
    left_coproduct_tensor,
    lmul,
    rmul,
    theta_map,
)
from .hopf import (
    ComoduleAlgebra,
    FinAlgebra,
    FinHopf,
    HopfError,
    adjoint_coaction,
    convolution_inverse,
    invariant_subalgebra,
    tensor_algebra,
)
from .linalg import (
    LinMap,
    Quotient,
    Subspace,
    _iadd,
    intersect,
    kernel,
    saturate,
    span_sum,
    tensor_vec,
    vec_add,
    vec_scale,
)
from .report import Report

__all__ = [
    "BundleError",
    "UniversalBundle",
    "UniversalConnection",
    "BundleCalculus",
    "verify_universal_bundle",
    "trivial_bundle",
    "homogeneous_bundle",
    "connection_from_beta_universal",
    "canonical_connection",
    "n0_from_connection",
    "build_calculus",
    "check_connection",
    "beta_condition_check",
    "homogeneous_q0",
    "connection_to_splitting",
    "splitting_to_connection",
    "hat_phi",
    "right_ideal",
    "random_trivial_bundle_check",
    "random_trivial_bundle_suite",
]


class BundleError(ValueError):
    pass


def right_ideal(H: FinAlgebra, gens) -> Subspace:
    """Right ideal generated by gens."""
    return saturate(H.K, H.n, gens, [H.R(b) for b in range(H.n)])


# ------------------------------------------------------------------ bundle

class UniversalBundle:
    """A comodule algebra checked to be a bundle with the universal calculus."""

    def __init__(self, CA: ComoduleAlgebra, M: Subspace | None = None):
        self.CA = CA
        self.P = CA.P
        self.H = CA.H
        self.K = CA.K
        self.n = CA.P.n
        self.h = CA.H.n
        self.U = UniversalCalculus(self.P)
        self.M = invariant_subalgebra(CA)
        if M is not None and M != self.M:
            raise BundleError("supplied base algebra differs from the invariant subalgebra")
        self.chi = self._chi()
        self.horizontal = self.U.closure([self.U.d(m) for m in self.M.rows])
        self.ker_eps = self.H.ker_counit()
        self.report = self._check()

    def _chi(self) -> LinMap:
        n, h, one = self.n, self.h, self.K.one
        cols = []
        for x in range(n * n):
            u, v = divmod(x, n)
            out: dict = {}
            for y, c in self.CA.DR({v: one}).items():
                p, k = divmod(y, h)
                for j, w in self.P.mul({u: one}, {p: one}).items():
                    _iadd(out, {j * h + k: w}, c)
            cols.append(out)
        return LinMap(self.K, n * n, n * h, cols)

    def DR2(self, rho: dict) -> dict:
        """Coaction on P (x) P: u(1) (x) v(1) (x) u(2) v(2)."""
        n, h, one = self.n, self.h, self.K.one
        H = self.H
        out: dict = {}
        for x, c in rho.items():
            u, v = divmod(x, n)
            for y, cu in self.CA.DR({u: one}).items():
                p1, k1 = divmod(y, h)
                for z, cv in self.CA.DR({v: one}).items():
                    p2, k2 = divmod(z, h)
                    for k, w in H.mul({k1: one}, {k2: one}).items():
                        _iadd(out, {(p1 * n + p2) * h + k: w}, c * cu * cv)
        return out

    def _check(self) -> Report:
        rep = Report(f"universal bundle {self.P.name} over {self.H.name}")
        n = self.n
        full = Subspace.full(self.K, n)
        img = Subspace.span(self.K, n * self.h, (self.chi.apply(r) for r in self.U.omega1.rows))
        rep.add("chi(Omega^1 P) = P (x) ker eps", img == full.tensor(self.ker_eps))
        ker = kernel(self.chi, self.U.omega1)
        rep.add("ker chi = P (Omega^1 M) P", ker == self.horizontal)
        rep.data.update({"dim P": n, "dim H": self.h, "dim M": self.M.dim,
                         "dim horizontal": self.horizontal.dim})
        return rep

    def tensor_PH(self, S: Subspace) -> Subspace:
        return Subspace.full(self.K, self.n).tensor(S)


def verify_universal_bundle(CA: ComoduleAlgebra, M: Subspace | None = None) -> UniversalBundle:
    B = UniversalBundle(CA, M)
    if not B.report.ok:
        raise BundleError(B.report.to_text())
    return B


def trivial_bundle(M: FinAlgebra, H: FinHopf):
    """P = M (x) H with Delta_R = id (x) Delta.  Returns (CA, Phi, Phi^{-1}, M-subspace)."""
    P = tensor_algebra(M, H)
    m, h, K = M.n, H.n, M.K
    one = K.one
    cols = []
    for x in range(m * h):
        a, b = divmod(x, h)
        out = {}
        for y, c in H.delta[b].items():
            b1, b2 = divmod(y, h)
            out[(a * h + b1) * h + b2] = c
        cols.append(out)
    CA = ComoduleAlgebra(P, H, LinMap(K, m * h, m * h * h, cols))
    Phi = LinMap(K, h, m * h, [tensor_vec(M.unit, {b: one}, h) for b in range(h)])
    Phi_inv = convolution_inverse(Phi, H, P)
    Msub = Subspace.span(K, m * h, [tensor_vec({a: one}, H.unit, h) for a in range(m)])
    return CA, Phi, Phi_inv, Msub


def homogeneous_bundle(P: FinHopf, H: FinHopf, pi: LinMap) -> ComoduleAlgebra:
    """P over P^H with Delta_R = (id (x) pi) Delta for a Hopf surjection pi."""
    K, n, h = P.K, P.n, H.n
    one = K.one
    rep = Report("Hopf surjection")
    rep.add("surjective", Subspace.span(K, h, pi.cols).dim == h)
    rep.add("unital", pi.apply(P.unit) == H.unit)
    rep.add("multiplicative", all(pi.apply(P.mult[i][j]) == H.mul(pi.cols[i], pi.cols[j])
                                  for i in range(n) for j in range(n)))
    rep.add("counital", all(H.eps(pi.cols[i]) == P.counit[i] for i in range(n)))
    ok = True
    for i in range(n):
        lhs = pi.kron(pi).apply(P.delta[i])
        if lhs != H.coproduct(pi.cols[i]):
            ok = False
            break
    rep.add("comultiplicative", ok)
    rep.raise_on_failure(BundleError)
    idpi = LinMap.identity(K, n).kron(pi)
    CA = ComoduleAlgebra(P, H, LinMap(K, n, n * h, [idpi.apply(P.delta[i]) for i in range(n)]))
    CA.pi = pi
    return CA


# -------------------------------------------------------------- connections

class UniversalConnection:
    """omega_U : H -> Omega^1 P (as a map on all of H, vanishing on 1)."""

    def __init__(self, bundle: UniversalBundle, omega: LinMap, provenance: str):
        self.B = bundle
        self.omega = omega
        self.provenance = provenance
        self.report = self.check()

    def __call__(self, x: dict) -> dict:
        return self.omega.apply(x)

    def check(self) -> Report:
        B = self.B
        H, K, one = B.H, B.K, B.K.one
        rep = Report(f"universal connection ({self.provenance})")
        rep.add("omega_U(1) = 0", not self.omega.apply(H.unit))
        bad = next((H.labels[i] for i in range(H.n) if not B.U.omega1.contains(self.omega.cols[i])), None)
        rep.add("values in Omega^1 P", bad is None, bad)
        bad = None
        for i in range(H.n):
            lhs = B.chi.apply(self.omega.cols[i])
            rhs = tensor_vec(B.P.unit, H.pi_eps({i: one}), B.h)
            if lhs != rhs:
                bad = H.labels[i]
                break
        rep.add("chi o omega_U = 1 (x) pi_eps", bad is None, bad)
        bad = None
        Ad = adjoint_coaction(H)
        for i in range(H.n):
            lhs = B.DR2(self.omega.cols[i])
            rhs = _omega_tensor_id(self.omega, Ad.cols[i], H.n)
            if lhs != rhs:
                bad = H.labels[i]
                break
        rep.add("Delta_R o omega_U = (omega_U (x) id) Ad", bad is None, bad)
        return rep


def _omega_tensor_id(omega: LinMap, t: dict, h: int) -> dict:
    out: dict = {}
    for x, c in t.items():
        a, b = divmod(x, h)
        for y, v in omega.cols[a].items():
            _iadd(out, {y * h + b: v}, c)
    return out


def _phi_formula(B: UniversalBundle, Phi: LinMap, Phi_inv: LinMap, beta: LinMap, h_vec: dict) -> dict:
    """Phi^{-1}(h1) beta(pi_eps h2) Phi(h3) + Phi^{-1}(h1) d_U Phi(h2)."""
    H, P, U = B.H, B.P, B.U
    n = H.n
    one = B.K.one
    out: dict = {}
    for x, c in H.coproduct2(h_vec).items():
        ab, k3 = divmod(x, n)
        k1, k2 = divmod(ab, n)
        b = beta.apply(H.pi_eps({k2: one}))
        if b:
            term = rmul(P, lmul(P, Phi_inv.cols[k1], b), Phi.cols[k3])
            _iadd(out, term, c)
    for x, c in H.coproduct(h_vec).items():
        k1, k2 = divmod(x, n)
        _iadd(out, lmul(P, Phi_inv.cols[k1], U.d(Phi.cols[k2])), c)
    return out


def connection_from_beta_universal(B: UniversalBundle, Phi: LinMap, beta_U: LinMap,
                                   Phi_inv: LinMap | None = None) -> UniversalConnection:
    """Connection of a trivial bundle from a trivialization and beta_U: H -> Omega^1 M."""
    H, K = B.H, B.K
    one = K.one
    if Phi.apply(H.unit) != B.P.unit:
        raise BundleError("Phi(1) != 1")
    for i in range(H.n):
        lhs = B.CA.DR(Phi.cols[i])
        rhs = Phi.kron(LinMap.identity(K, H.n)).apply(H.delta[i])
        if lhs != rhs:
            raise BundleError(f"Phi is not an intertwiner at {H.labels[i]}")
    if Phi_inv is None:
        Phi_inv = convolution_inverse(Phi, H, B.P)
    MM = B.M.tensor(B.M)
    for i in range(H.n):
        v = beta_U.apply(H.pi_eps({i: one}))
        if not (B.U.omega1.contains(v) and MM.contains(v)):
            raise BundleError(f"beta_U({H.labels[i]}) is not in Omega^1 M")
    cols = [_phi_formula(B, Phi, Phi_inv, beta_U, {i: one}) for i in range(H.n)]
    conn = UniversalConnection(B, LinMap(K, H.n, B.n * B.n, cols), "trivialization + beta_U")
    conn.Phi, conn.Phi_inv, conn.beta = Phi, Phi_inv, beta_U
    conn.report.raise_on_failure(BundleError)
    return conn


def canonical_connection(B: UniversalBundle, i_map: LinMap) -> UniversalConnection:
    """omega_U(h) = S(i(h)_(1)) d_U i(h)_(2) for a homogeneous bundle.

    ``i_map`` is a linear map H -> P; only its values on ker eps matter.
    """
    P = B.P
    if not isinstance(P, FinHopf) or not hasattr(B.CA, "pi"):
        raise BundleError("canonical connection needs a homogeneous bundle")
    H, K, one = B.H, B.K, B.K.one
    pi = B.CA.pi
    n = P.n
    rep = Report("splitting conditions")
    kerH = H.ker_counit()
    ok = all(pi.apply(i_map.apply(r)) == r for r in kerH.rows)
    rep.add("pi o i = id on ker eps", ok)
    rep.add("i(ker eps) inside ker eps_P", all(not P.eps(i_map.apply(r)) for r in kerH.rows))
    AdP, AdH = adjoint_coaction(P), adjoint_coaction(H)
    idpi = LinMap.identity(K, n).kron(pi)
    iid = i_map.kron(LinMap.identity(K, H.n))
    ok = all(idpi.apply(AdP.apply(i_map.apply(r))) == iid.apply(AdH.apply(r)) for r in kerH.rows)
    rep.add("(id (x) pi) Ad i = (i (x) id) Ad", ok)
    rep.raise_on_failure(BundleError)
    th, _ = theta_map(P)
    cols = []
    for k in range(H.n):
        x = i_map.apply(H.pi_eps({k: one}))
        cols.append(th.apply(tensor_vec(P.unit, x, n)))
    conn = UniversalConnection(B, LinMap(K, H.n, n * n, cols), "splitting i")
    conn.i_map = i_map
    conn.report.raise_on_failure(BundleError)
    inv = Report("left invariance")
    bad = None
    for k in range(H.n):
        w = cols[k]
        if left_coproduct_tensor(P, w) != tensor_vec(P.unit, w, n * n):
            bad = H.labels[k]
            break
    inv.add("Delta_L omega_U = 1 (x) omega_U", bad is None, bad)
    eps_id = LinMap(K, n * n, n, [vec_scale({x % n: one}, P.counit[x // n]) for x in range(n * n)])
    ok = all(eps_id.apply(cols[k]) == i_map.apply(H.pi_eps({k: one})) for k in range(H.n))
    inv.add("(eps (x) id) omega_U = i", ok)
    conn.report.extend(inv)
    conn.report.raise_on_failure(BundleError)
    return conn


# --------------------------------------------------------------------- N0

def n0_from_connection(B: UniversalBundle, Q: Subspace, conn: UniversalConnection) -> Subspace:
    """span of u v(1) omega_U(q v(2)) - u omega_U(q) v."""
    P, H, K = B.P, B.H, B.K
    one = K.one
    h = B.h
    rows = []
    for q in Q.rows:
        wq = conn(q)
        for v in range(B.n):
            base: dict = {}
            for y, c in B.CA.DR({v: one}).items():
                p, k = divmod(y, h)
                _iadd(base, lmul(P, {p: one}, conn(H.mul(q, {k: one}))), c)
            base = vec_add(base, rmul(P, wq, {v: one}), -1)
            for u in range(B.n):
                rows.append(lmul(P, {u: one}, base))
    return Subspace.span(K, B.n * B.n, rows)


# --------------------------------------------------------- bundle calculus

@dataclass
class BundleCalculus:
    bundle: UniversalBundle
    Q: Subspace
    conn: UniversalConnection
    N0: Subspace
    Nhor: Subspace
    N: Subspace
    calc: QuotientCalculus
    forms: Quotient
    omega: LinMap
    report: Report = field(default_factory=lambda: Report("bundle calculus"))

    @property
    def dim(self) -> int:
        return self.calc.dim

    @property
    def forms_dim(self) -> int:
        return self.forms.dim

    def form_rep(self, k: int) -> dict:
        H = self.bundle.H
        return H.pi_eps({self.forms.free[k]: H.K.one})

    def form_class(self, x: dict) -> dict:
        return self.forms.project(self.bundle.H.pi_eps(x))

    def chi_N(self, w: dict) -> dict:
        """Omega^1(P) -> P (x) ker eps / Q."""
        B = self.bundle
        k = self.forms.dim
        out: dict = {}
        for x, c in B.chi.apply(self.calc.lift(w)).items():
            p, b = divmod(x, B.h)
            for j, v in self.forms.project({b: c}).items():
                _iadd(out, {p * k + j: v}, 1)
        return out

    def omega_of(self, x: dict) -> dict:
        """omega applied to the class of x in ker eps / Q."""
        return self.omega.apply(self.form_class(x))


def _forms_quotient(H: FinHopf, Q: Subspace) -> Quotient:
    return Quotient(span_sum(Q, Subspace.span(H.K, H.n, [H.unit])))


def check_connection(bc: BundleCalculus, omega: LinMap, label: str = "connection") -> Report:
    """chi_N o omega = 1 (x) id and Delta_R o omega = (omega (x) id) Ad."""
    B = bc.bundle
    H, K, one = B.H, B.K, B.K.one
    k = bc.forms.dim
    rep = Report(label)
    bad = None
    for j in range(k):
        if bc.chi_N(omega.cols[j]) != tensor_vec(B.P.unit, {j: one}, k):
            bad = j
            break
    rep.add("chi_N o omega = 1 (x) id", bad is None, bad)
    Ad = adjoint_coaction(H)
    NH = bc.N.tensor(Subspace.full(K, B.h))
    lifts = [bc.calc.lift(omega.cols[j]) for j in range(k)]
    bad = None
    for j in range(k):
        x = bc.form_rep(j)
        lhs = B.DR2(lifts[j])
        rhs: dict = {}
        for t, c in Ad.apply(x).items():
            a, b = divmod(t, B.h)
            for jj, v in bc.forms.project({a: c}).items():
                for y, w in lifts[jj].items():
                    _iadd(rhs, {y * B.h + b: w}, v)
        if not NH.contains(vec_add(lhs, rhs, -1)):
            bad = j
            break
    rep.add("Delta_R o omega = (omega (x) id) Ad", bad is None, bad)
    return rep


def build_calculus(B: UniversalBundle, Q: Subspace, conn: UniversalConnection, nhor="maximal") -> BundleCalculus:
    """N = <N_hor, P omega_U(Q) P> with all verifications."""
    P, H, K, U = B.P, B.H, B.K, B.U
    n, h = B.n, B.h
    one = K.one
    rep = Report(f"calculus on {P.name}")
    # Q must be an Ad-stable right ideal in ker eps
    rep.add("Q inside ker eps", all(not H.eps(r) for r in Q.rows))
    rep.add("Q right ideal", all(Q.contains(H.mul(r, {b: one})) for r in Q.rows for b in range(h)))
    Ad = adjoint_coaction(H)
    QH = Q.tensor(Subspace.full(K, h))
    rep.add("Q Ad-stable", all(QH.contains(Ad.apply(r)) for r in Q.rows))
    rep.raise_on_failure(BundleError)

    N0 = n0_from_connection(B, Q, conn)
    if isinstance(nhor, Subspace):
        Nhor = nhor
    elif nhor == "maximal":
        Nhor = N0
    elif nhor == "minimal":
        Nhor = B.horizontal
    else:
        raise BundleError(f"unknown N_hor mode {nhor!r}")
    ok, w = U.is_subbimodule(Nhor)
    rep.add("N_hor is a subbimodule", ok, w)
    rep.add("N0 inside N_hor", N0.issubspace(Nhor))
    rep.add("N_hor horizontal", Nhor.issubspace(B.horizontal))
    rep.raise_on_failure(BundleError)

    N = U.closure(list(Nhor.rows) + [conn(q) for q in Q.rows])
    PQ = B.tensor_PH(Q)
    chiN = Subspace.span(K, n * h, (B.chi.apply(r) for r in N.rows))
    rep.add("N inside Omega^1 P", N.issubspace(U.omega1))
    rep.add("chi(N) = P (x) Q", chiN == PQ)
    NH = N.tensor(Subspace.full(K, h))
    bad = next((r for r in N.rows if not NH.contains(B.DR2(r))), None)
    rep.add("Delta_R(N) inside N (x) H", bad is None, bad)
    rep.add("N0 inside N", N0.issubspace(N))
    # exactness at the middle: chi^{-1}(P (x) Q) on Omega^1 P equals horizontal + N
    qPQ = Quotient(PQ)
    pre = kernel(qPQ.projection.compose(B.chi), U.omega1)
    horN = span_sum(B.horizontal, N)
    rep.add("chi^{-1}(P (x) Q) = horizontal + N", pre == horN)
    rep.add("N meets horizontal in N_hor", intersect(N, B.horizontal) == Nhor)

    calc = QuotientCalculus(U, N, validate=False)
    forms = _forms_quotient(H, Q)
    k = forms.dim
    hor_dim = horN.dim - N.dim
    rep.add("dim Omega^1(P) = dim hor + dim P * dim(ker eps/Q)", calc.dim == hor_dim + n * k)
    cols = [calc.project(conn(H.pi_eps({forms.free[j]: one}))) for j in range(k)]
    omega = LinMap(K, k, calc.dim, cols)
    rep.add("omega kills Q", all(not calc.project(conn(q)) for q in Q.rows))
    bc = BundleCalculus(B, Q, conn, N0, Nhor, N, calc, forms, omega, rep)
    img = Subspace.span(K, n * k, (bc.chi_N({j: one}) for j in range(calc.dim)))
    rep.add("chi_N surjective", img.dim == n * k)
    rep.extend(check_connection(bc, omega), "omega: ")
    rep.data.update({"dim N0": N0.dim, "dim N_hor": Nhor.dim, "dim N": N.dim,
                     "dim Omega^1(P)": calc.dim, "dim horizontal part": hor_dim,
                     "dim ker eps/Q": k})
    rep.raise_on_failure(BundleError)
    return bc


# ------------------------------------------------------------ trivial case

def beta_condition_check(B: UniversalBundle, Q: Subspace, N: Subspace, Phi: LinMap, Phi_inv: LinMap,
                         beta: LinMap) -> Report:
    """Whether beta (lifted to universal forms on M) defines a connection on Omega^1 P / N.

    The defining condition is that the formula applied to q in Q vanishes
    modulo N.  When Phi is an algebra map, the absorption identity
    Phi^{-1}(q1) beta(pi_eps(q2 h)) Phi(q3) = eps(h) Phi^{-1}(q1) beta(pi_eps q2) Phi(q3)
    is checked modulo N as well.
    """
    H, P, K = B.H, B.P, B.K
    one = K.one
    rep = Report("beta condition")
    bad = None
    for q in Q.rows:
        if not N.contains(_phi_formula(B, Phi, Phi_inv, beta, q)):
            bad = H.fmt(q)
            break
    rep.add("omega(q) = 0 mod N for q in Q", bad is None, bad)
    is_alg = all(P.mul(Phi.cols[i], Phi.cols[j]) == Phi.apply(H.mult[i][j]) for i in range(H.n) for j in range(H.n))
    rep.data["Phi algebra map"] = is_alg
    if is_alg:
        bad = None
        for q in Q.rows:
            base = _beta_part(B, Phi, Phi_inv, beta, q, None)
            for hh in range(H.n):
                lhs = _beta_part(B, Phi, Phi_inv, beta, q, hh)
                if not N.contains(vec_add(lhs, base, -H.counit[hh])):
                    bad = [H.fmt(q), H.labels[hh]]
                    break
            if bad:
                break
        rep.add("absorption identity mod N", bad is None, bad)
    return rep


def _beta_part(B, Phi, Phi_inv, beta, q: dict, hh) -> dict:
    """Phi^{-1}(q1) beta(pi_eps(q2 h)) Phi(q3), with h = 1 when hh is None."""
    H, P = B.H, B.P
    n, one = H.n, B.K.one
    out: dict = {}
    for x, c in H.coproduct2(q).items():
        ab, k3 = divmod(x, n)
        k1, k2 = divmod(ab, n)
        mid = {k2: one} if hh is None else H.mul({k2: one}, {hh: one})
        b = beta.apply(H.pi_eps(mid))
        if b:
            _iadd(out, rmul(P, lmul(P, Phi_inv.cols[k1], b), Phi.cols[k3]), c)
    return out


def hat_phi(B: UniversalBundle, Phi: LinMap, Phi_inv: LinMap, beta_U: LinMap, g: int, hh: int) -> dict:
    """Phi(g h1) Phi^{-1}(h2) beta_U(h3) Phi(h4) + Phi(g h1) Phi^{-1}(h2) (x) Phi(h3)."""
    H, P, K = B.H, B.P, B.K
    n, one = H.n, K.one
    out: dict = {}
    d3 = H.coproduct2({hh: one})
    # fourfold coproduct: apply Delta to the last leg
    for x, c in d3.items():
        ab, k3 = divmod(x, n)
        k1, k2 = divmod(ab, n)
        left = P.mul(Phi.apply(H.mul({g: one}, {k1: one})), Phi_inv.cols[k2])
        _iadd(out, tensor_vec(left, Phi.cols[k3], P.n), c)
        for y, e in H.delta[k3].items():
            k3a, k4 = divmod(y, n)
            b = beta_U.apply({k3a: one})
            if b:
                _iadd(out, rmul(P, lmul(P, left, b), Phi.cols[k4]), c * e)
    return out


# -------------------------------------------------------- homogeneous case

def homogeneous_q0(B: UniversalBundle, i_map: LinMap, Q: Subspace) -> Subspace:
    """Q0 = span{i(q) u - i(q pi(u))}."""
    P, H = B.P, B.H
    pi = B.CA.pi
    one = B.K.one
    rows = []
    for q in Q.rows:
        iq = i_map.apply(H.pi_eps(q))
        for u in range(P.n):
            rows.append(vec_add(P.mul(iq, {u: one}), i_map.apply(H.pi_eps(H.mul(q, pi.cols[u]))), -1))
    return Subspace.span(B.K, P.n, rows)


def _theta_N(bc: BundleCalculus):
    """Q_P and theta_N: Omega^1(P) -> P (x) ker eps_P / Q_P."""
    B = bc.bundle
    P = B.P
    n, K = P.n, B.K
    _, thi = theta_map(P)
    rows = []
    for r in bc.N.rows:
        v: dict = {}
        for x, c in thi.apply(r).items():
            a, b = divmod(x, n)
            if P.counit[a]:
                _iadd(v, {b: P.counit[a]}, c)
        rows.append(v)
    QP = Subspace.span(K, n, rows)
    fq = _forms_quotient(P, QP)
    return QP, fq, thi


def connection_to_splitting(bc: BundleCalculus, omega: LinMap | None = None) -> LinMap:
    """i-bar = eps-bar o omega : ker eps/Q -> ker eps_P/Q_P."""
    omega = omega or bc.omega
    B = bc.bundle
    P = B.P
    n = P.n
    QP, fq, thi = _theta_N(bc)
    cols = []
    for j in range(omega.n):
        rho = bc.calc.lift(omega.cols[j])
        v: dict = {}
        for x, c in thi.apply(rho).items():
            a, b = divmod(x, n)
            if P.counit[a]:
                _iadd(v, {b: P.counit[a]}, c)
        cols.append(fq.project(v))
    out = LinMap(B.K, omega.n, fq.dim, cols)
    return out


def splitting_to_connection(bc: BundleCalculus, ibar: LinMap) -> LinMap:
    """omega(h) = theta_N^{-1}(1 (x) i-bar(h)) = pi_N theta(1 (x) lift)."""
    B = bc.bundle
    P = B.P
    QP, fq, _ = _theta_N(bc)
    th, _ = theta_map(P)
    cols = []
    for j in range(ibar.n):
        x = fq.section.apply(ibar.cols[j])
        x = P.pi_eps(x)
        cols.append(bc.calc.project(th.apply(tensor_vec(P.unit, x, P.n))))
    return LinMap(B.K, ibar.n, bc.calc.dim, cols)


def left_covariance_check(bc: BundleCalculus) -> bool:
    """Delta_L(N) inside P (x) N for a Hopf algebra P."""
    from .calculus import left_coaction_check
    return left_coaction_check(bc.bundle.P, bc.N)[0]


# ------------------------------------------------------ randomized bundles

RANDOM_FIBRES = ("C(Z2)", "C(Z3)", "CZ3")


def _fibre(name: str, K):
    from .hopf import Group, function_algebra, group_algebra

    if name == "C(Z2)":
        return function_algebra(Group.cyclic(2), K)
    if name == "C(Z3)":
        return function_algebra(Group.cyclic(3), K)
    if name == "CZ3":
        return group_algebra(Group.cyclic(3), K)
    raise BundleError(f"unknown fibre {name!r}")


def random_trivial_bundle_check(seed: int, K=None) -> Report:
    """Theorem-level checks on one random trivial bundle C(Sigma) (x) H.

    |Sigma| <= 4, H drawn from RANDOM_FIBRES, Q a random Ad-stable right
    ideal in ker eps, beta_U a random map into Omega^1 C(Sigma) with small
    integer coefficients, N_hor maximal or minimal.
    """
    import random

    from .calculus import bicovariance_check
    from .discrete import set_algebra
    from .scalars import QQ

    K = K or QQ
    rng = random.Random(seed)
    one = K.one
    m = rng.randint(1, 4)
    hname = rng.choice(RANDOM_FIBRES)
    H = _fibre(hname, K)
    M = set_algebra([f"x{i}" for i in range(m)], K)
    h = H.n

    gens = []
    for _ in range(rng.randint(0, 2)):
        v = {b: K(rng.randint(-2, 2)) for b in range(h)}
        v = H.pi_eps({b: c for b, c in v.items() if c})
        if v:
            gens.append(v)
    Q = right_ideal(H, gens)
    if not bicovariance_check(H, Q):
        Q = Subspace.zero(K, h)

    CA, Phi, Phi_inv, Msub = trivial_bundle(M, H)
    B = verify_universal_bundle(CA, Msub)
    n = B.n

    def emb(a):
        return tensor_vec({a: one}, H.unit, h)

    cols = []
    for _ in range(h):
        v: dict = {}
        for a in range(m):
            for b in range(m):
                c = rng.randint(-2, 2) if a != b else 0
                if c:
                    for x, cx in emb(a).items():
                        for y, cy in emb(b).items():
                            _iadd(v, {x * n + y: cx * cy}, K(c))
        cols.append(v)
    beta = LinMap(K, h, n * n, cols)
    nhor = rng.choice(("maximal", "minimal"))

    rep = Report(f"random trivial bundle #{seed}: C(Sigma) (x) {hname}, |Sigma| = {m}")
    rep.data.update({"seed": seed, "|Sigma|": m, "H": hname, "dim Q": Q.dim, "N_hor": nhor})
    try:
        conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
        rep.extend(conn.report, "omega_U: ")
        bc = build_calculus(B, Q, conn, nhor)
    except BundleError as exc:
        rep.add("pipeline completes", False, str(exc))
        return rep
    rep.extend(bc.report)
    rep.data.update(bc.report.data)
    rep.bc = bc
    return rep


def random_trivial_bundle_suite(seed: int = 0, count: int = 10) -> Report:
    """count independent draws; case i uses seed * 1000 + i."""
    rep = Report(f"random trivial bundles (seed {seed}, {count} cases)")
    seen = set()
    for i in range(count):
        r = random_trivial_bundle_check(seed * 1000 + i)
        rep.extend(r, f"case {i}: ")
        rep.data[f"case {i}"] = {k: v for k, v in r.data.items()}
        seen.add(r.data["H"])
    rep.data["fibres drawn"] = sorted(seen)
    return rep
