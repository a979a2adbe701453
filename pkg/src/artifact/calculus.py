"""First-order differential calculi.

The universal calculus of an algebra A lives in A (x) A as the kernel of
the product map, with ``d_U u = 1 (x) u - u (x) 1``.  A general first
order calculus is ``Omega^1 A / N`` for a subbimodule N.

Computationally we use the fact that ``u (x) v -> u d_U v`` identifies
``A (x) A / (A (x) 1)`` with the universal forms, so the quotient by N is
``A (x) A / (N + A (x) 1)``.  Its coset representatives are basis tensors
``x (x) y``, which stand for the forms ``x d y``.

Left-covariant calculi on a Hopf algebra H come from right ideals
``Q`` inside ``ker eps`` through ``N = theta(H (x) Q)``.
"""

from __future__ import annotations

from .hopf import FinAlgebra, FinHopf, adjoint_coaction, tensor_labels
from .linalg import (
    LinMap,
    Quotient,
    Subspace,
    _iadd,
    image,
    kernel,
    saturate,
    span_sum,
    tensor_vec,
    vec_add,
)
from .report import Report

__all__ = [
    "CalculusError",
    "UniversalCalculus",
    "QuotientCalculus",
    "LeftCovariantCalculus",
    "universal_calculus",
    "theta_map",
    "calculus_from_ideal",
    "ideal_from_submodule",
    "bicovariance_check",
    "maurer_cartan",
    "left_coaction_check",
    "lmul",
    "rmul",
]


class CalculusError(ValueError):
    pass


# ------------------------------------------------------- tensor helpers

def lmul(A: FinAlgebra, a: dict, rho: dict) -> dict:
    """a . rho on the first leg of A (x) A."""
    n = A.n
    out: dict = {}
    for x, c in rho.items():
        i, j = divmod(x, n)
        for k, v in A.mul(a, {i: c}).items():
            _iadd(out, {k * n + j: v}, 1)
    return out


def rmul(A: FinAlgebra, rho: dict, b: dict) -> dict:
    """rho . b on the second leg of A (x) A."""
    n = A.n
    out: dict = {}
    for x, c in rho.items():
        i, j = divmod(x, n)
        for k, v in A.mul({j: c}, b).items():
            _iadd(out, {i * n + k: v}, 1)
    return out


def bimodule_operators(A: FinAlgebra) -> list:
    """Left and right multiplication by each basis element on A (x) A."""
    I = LinMap.identity(A.K, A.n)
    return [A.L(a).kron(I) for a in range(A.n)] + [I.kron(A.R(a)) for a in range(A.n)]


# ----------------------------------------------------- universal calculus

class UniversalCalculus:
    def __init__(self, A: FinAlgebra):
        self.A = A
        self.K = A.K
        self.n = A.n
        self.ambient = A.n * A.n
        self.omega1 = kernel(A.mult_map())
        self._ops = None
        self.labels = tensor_labels(A.labels, A.labels)

    @property
    def operators(self) -> list:
        if self._ops is None:
            self._ops = bimodule_operators(self.A)
        return self._ops

    def d(self, u: dict) -> dict:
        """d_U u = 1 (x) u - u (x) 1."""
        A, n = self.A, self.n
        return vec_add(tensor_vec(A.unit, u, n), tensor_vec(u, A.unit, n), -1)

    def d_map(self) -> LinMap:
        return LinMap.from_function(self.K, self.n, self.ambient, lambda i: self.d({i: self.K.one}))

    def form(self, u: dict, v: dict) -> dict:
        """u d_U v."""
        return lmul(self.A, u, self.d(v))

    def is_subbimodule(self, N: Subspace):
        """Returns (ok, witness) for stability under both actions."""
        for r in N.rows:
            for op in self.operators:
                if not N.contains(op.apply(r)):
                    return False, r
        return True, None

    def closure(self, seed) -> Subspace:
        return saturate(self.K, self.ambient, seed, self.operators)

    def check(self) -> Report:
        rep = Report(f"universal calculus on {self.A.name}")
        one = self.K.one
        n = self.n
        rep.add("dim Omega^1 = n^2 - n", self.omega1.dim == n * n - n)
        bad = None
        for i in range(n):
            if not self.omega1.contains(self.d({i: one})):
                bad = self.A.labels[i]
                break
        rep.add("d_U lands in Omega^1", bad is None, bad)
        rep.add("d_U(1) = 0", not self.d(self.A.unit))
        bad = None
        for i in range(n):
            for j in range(n):
                lhs = self.d(self.A.mult[i][j])
                rhs = vec_add(rmul(self.A, self.d({i: one}), {j: one}), lmul(self.A, {i: one}, self.d({j: one})))
                if lhs != rhs:
                    bad = [self.A.labels[i], self.A.labels[j]]
                    break
            if bad:
                break
        rep.add("Leibniz rule", bad is None, bad)
        return rep


def universal_calculus(A: FinAlgebra) -> UniversalCalculus:
    return UniversalCalculus(A)


# ------------------------------------------------------ quotient calculus

class QuotientCalculus:
    """Omega^1(A) = Omega^1 A / N.

    Coordinates on the quotient are indexed by the basis tensors left free
    by ``N + A (x) 1``; coordinate ``f`` stands for the form ``x d y``.
    """

    def __init__(self, U: UniversalCalculus, N: Subspace, validate: bool = True):
        self.U = U
        self.A = U.A
        self.K = U.K
        self.N = N
        if validate:
            if not N.issubspace(U.omega1):
                raise CalculusError("N is not inside the universal 1-forms")
            ok, w = U.is_subbimodule(N)
            if not ok:
                raise CalculusError(f"N is not a subbimodule (witness {w})")
        n = self.A.n
        A1 = Subspace.span(self.K, n * n, [tensor_vec({i: self.K.one}, self.A.unit, n) for i in range(n)])
        self.W = span_sum(N, A1)
        self.quot = Quotient(self.W)
        self.dim = self.quot.dim
        self.labels = []
        for f in self.quot.free:
            x, y = divmod(f, n)
            self.labels.append(f"{self.A.labels[x]} d{self.A.labels[y]}")
        self._act = {}

    def project(self, rho: dict) -> dict:
        """Class of a universal form rho (must lie in Omega^1 A)."""
        return self.quot.project(rho)

    def lift(self, w: dict) -> dict:
        """A universal form representing coordinates w."""
        A, n = self.A, self.A.n
        out: dict = {}
        for k, c in w.items():
            x, y = divmod(self.quot.free[k], n)
            _iadd(out, self.U.form({x: self.K.one}, {y: self.K.one}), c)
        return out

    def d(self, u: dict) -> dict:
        return self.project(self.U.d(u))

    def d_map(self) -> LinMap:
        return LinMap.from_function(self.K, self.A.n, self.dim, lambda i: self.d({i: self.K.one}))

    def left(self, a: dict, w: dict) -> dict:
        return self.project(lmul(self.A, a, self.lift(w)))

    def right(self, w: dict, b: dict) -> dict:
        return self.project(rmul(self.A, self.lift(w), b))

    def form(self, u: dict, v: dict) -> dict:
        """u dv as quotient coordinates."""
        return self.project(self.U.form(u, v))

    def contains_zero(self, rho: dict) -> bool:
        return not self.project(rho)

    def check(self) -> Report:
        rep = Report(f"quotient calculus on {self.A.name} (dim {self.dim})")
        one = self.K.one
        A, n = self.A, self.A.n
        ok, w = self.U.is_subbimodule(self.N)
        rep.add("N is a subbimodule", ok, w)
        bad = None
        for i in range(n):
            for j in range(n):
                lhs = self.d(A.mult[i][j])
                rhs = vec_add(self.right(self.d({i: one}), {j: one}), self.left({i: one}, self.d({j: one})))
                if lhs != rhs:
                    bad = [A.labels[i], A.labels[j]]
                    break
            if bad:
                break
        rep.add("Leibniz rule", bad is None, bad)
        spans = Subspace.span(self.K, self.dim,
                              (self.form({i: one}, {j: one}) for i in range(n) for j in range(n)))
        rep.add("span{u dv} is everything", spans.dim == self.dim)
        return rep


# ---------------------------------------------------------------- theta

def theta_map(H: FinHopf):
    """theta(g (x) h) = g S(h_(1)) (x) h_(2) and its inverse u v_(1) (x) v_(2)."""
    n, one = H.n, H.K.one
    th, thi = [], []
    for x in range(n * n):
        g, h = divmod(x, n)
        t, ti = {}, {}
        for y, c in H.delta[h].items():
            a, b = divmod(y, n)
            for k, v in H.mul({g: one}, H.S({a: one})).items():
                _iadd(t, {k * n + b: v}, c)
            for k, v in H.mul({g: one}, {a: one}).items():
                _iadd(ti, {k * n + b: v}, c)
        th.append(t)
        thi.append(ti)
    return LinMap(H.K, n * n, n * n, th), LinMap(H.K, n * n, n * n, thi)


def left_coproduct_tensor(H: FinHopf, rho: dict) -> dict:
    """Delta_L(a (x) b) = a_(1) b_(1) (x) a_(2) (x) b_(2), index p*n^2 + x."""
    n = H.n
    out: dict = {}
    for x, c in rho.items():
        a, b = divmod(x, n)
        for y, ca in H.delta[a].items():
            a1, a2 = divmod(y, n)
            for z, cb in H.delta[b].items():
                b1, b2 = divmod(z, n)
                for k, v in H.mul({a1: ca}, {b1: cb}).items():
                    _iadd(out, {k * n * n + a2 * n + b2: v}, c)
    return out


def left_coaction_check(H: FinHopf, N: Subspace):
    """Delta_L(N) inside H (x) N."""
    nn = H.n * H.n
    for r in N.rows:
        img = left_coproduct_tensor(H, r)
        legs: dict = {}
        for x, c in img.items():
            p, y = divmod(x, nn)
            legs.setdefault(p, {})[y] = c
        for p, v in legs.items():
            if not N.contains(v):
                return False, r
    return True, None


# ------------------------------------------------- left-covariant calculi

class LeftCovariantCalculus(QuotientCalculus):
    """Calculus on H from a right ideal Q inside ker eps."""

    def __init__(self, H: FinHopf, Q: Subspace, validate: bool = True):
        self.H = H
        self.Q = Q
        K, n = H.K, H.n
        one = K.one
        if validate:
            for r in Q.rows:
                if H.eps(r):
                    raise CalculusError("Q is not inside ker eps")
            for r in Q.rows:
                for b in range(n):
                    if not Q.contains(H.mul(r, {b: one})):
                        raise CalculusError(f"Q is not a right ideal (witness {H.fmt(r)} * {H.labels[b]})")
        self.theta, self.theta_inv = theta_map(H)
        rows = [self.theta.apply(tensor_vec({g: one}, q, n)) for g in range(n) for q in Q.rows]
        N = Subspace.span(K, n * n, rows)
        super().__init__(UniversalCalculus(H), N, validate)
        # invariant forms: ker eps / Q = H / (Q + C1)
        self.forms_quot = Quotient(span_sum(Q, Subspace.span(K, n, [H.unit])))
        self.forms_dim = self.forms_quot.dim
        self.form_labels = [f"[{H.labels[f]}]" for f in self.forms_quot.free]

    def form_rep(self, k: int) -> dict:
        """ker eps representative of the k-th invariant form."""
        return self.H.pi_eps({self.forms_quot.free[k]: self.K.one})

    def form_class(self, x: dict) -> dict:
        """Class of x in ker eps / Q (x need not be in ker eps; pi_eps applied)."""
        return self.forms_quot.project(self.H.pi_eps(x))

    def invariant_form(self, x: dict) -> dict:
        """pi_N theta(1 (x) x): the left-invariant 1-form for x in ker eps."""
        H = self.H
        return self.project(self.theta.apply(tensor_vec(H.unit, H.pi_eps(x), H.n)))


def calculus_from_ideal(H: FinHopf, Q: Subspace) -> LeftCovariantCalculus:
    return LeftCovariantCalculus(H, Q)


def ideal_from_submodule(H: FinHopf, N: Subspace) -> Subspace:
    """Q = (eps (x) id) theta^{-1}(N)."""
    _, thi = theta_map(H)
    n = H.n
    out = []
    for r in N.rows:
        v: dict = {}
        for x, c in thi.apply(r).items():
            a, b = divmod(x, n)
            if H.counit[a]:
                _iadd(v, {b: H.counit[a]}, c)
        out.append(v)
    return Subspace.span(H.K, n, out)


def bicovariance_check(H: FinHopf, Q: Subspace) -> bool:
    """Ad(Q) inside Q (x) H."""
    Ad = adjoint_coaction(H)
    QH = Q.tensor(Subspace.full(H.K, H.n))
    return all(QH.contains(Ad.apply(r)) for r in Q.rows)


def maurer_cartan(H: FinHopf, Q: Subspace):
    """omega: ker eps / Q -> Omega^1(H), omega([x]) = pi_N theta(1 (x) x).

    Returns (calculus, LinMap) after checking independence of the lift and
    chi_N o omega = 1 (x) id.
    """
    if not bicovariance_check(H, Q):
        raise CalculusError("Q is not Ad-stable")
    C = LeftCovariantCalculus(H, Q)
    n, K, one = H.n, H.K, H.K.one
    for q in Q.rows:
        if C.invariant_form(q):
            raise CalculusError("Maurer-Cartan form does not vanish on Q")
    cols = [C.invariant_form(C.form_rep(k)) for k in range(C.forms_dim)]
    omega = LinMap(K, C.forms_dim, C.dim, cols)
    # chi on P = H is theta^{-1}; chi_N(omega[x]) must be 1 (x) [x]
    for k in range(C.forms_dim):
        rho = C.lift(cols[k])
        img = C.theta_inv.apply(rho)
        got: dict = {}
        for x, c in img.items():
            a, b = divmod(x, n)
            for j, v in C.forms_quot.project({b: c}).items():
                _iadd(got, {a * C.forms_dim + j: v}, 1)
        want = tensor_vec(H.unit, {k: one}, C.forms_dim)
        if got != want:
            raise CalculusError("chi_N o omega differs from 1 (x) id")
    return C, omega
