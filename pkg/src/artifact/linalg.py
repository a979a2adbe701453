"""Exact linear algebra over any scalar context.

Vectors are sparse dicts ``{index: scalar}`` with zero entries omitted.
A :class:`Subspace` stores its basis in reduced row-echelon form with
leftmost pivots, so two subspaces are equal exactly when their stored
matrices are equal.  A :class:`LinMap` stores the image of each basis
vector.  Tensor indices are row-major: ``i * n_right + j``.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

__all__ = [
    "Echelon",
    "Subspace",
    "LinMap",
    "Quotient",
    "echelonize",
    "kernel",
    "image",
    "quotient",
    "saturate",
    "intersect",
    "span_sum",
    "contains",
    "solve",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "tensor_vec",
    "as_sparse",
    "as_dense",
]


# ------------------------------------------------------------- vector helpers

def as_sparse(v) -> dict:
    if isinstance(v, dict):
        return {k: x for k, x in v.items() if x}
    return {i: x for i, x in enumerate(v) if x}


def as_dense(v: dict, n: int, zero=0) -> list:
    out = [zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def vec_add(u: dict, v: dict, c=1) -> dict:
    """u + c*v as a new dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = c * x if y is None else y + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_sub(u: dict, v: dict) -> dict:
    return vec_add(u, v, -1)


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def _iadd(u: dict, v: dict, c) -> None:
    for k, x in v.items():
        y = u.get(k)
        y = c * x if y is None else y + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def tensor_vec(u: dict, v: dict, n_right: int) -> dict:
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            c = a * b
            if c:
                out[i * n_right + j] = c
    return out


# ------------------------------------------------------------------ echelon

class Echelon:
    """Incremental semi-echelon basis: one row per pivot, row[pivot] == 1.

    Each stored row has its pivot as its leftmost entry.  Optionally a
    second sparse vector is carried along each row so that reductions
    can report the combination used (kernels, solving).
    """

    def __init__(self, n: int, track: bool = False):
        self.n = n
        self.rows: dict[int, dict] = {}
        self.track = track
        self.tags: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, tag: dict | None = None):
        """Reduce v modulo the stored rows.  Returns (residue, tag)."""
        v = dict(v)
        if tag is not None:
            tag = dict(tag)
        rows = self.rows
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            c = v.get(p)
            if c is None:
                continue
            row = rows[p]
            for k, x in row.items():
                y = v.get(k)
                if y is None:
                    v[k] = -c * x
                    if k in rows:
                        heapq.heappush(heap, k)
                else:
                    y = y - c * x
                    if y:
                        v[k] = y
                    else:
                        del v[k]
            if tag is not None:
                _iadd(tag, self.tags[p], -c)
        return v, tag

    def add(self, v: dict, tag: dict | None = None):
        """Insert v.  Returns the new normalized row, or None if dependent.

        When tracking and v is dependent, returns ``(None, tag)`` where
        ``tag`` is the combination that vanishes.
        """
        r, t = self.reduce(v, tag if self.track else None)
        if not r:
            return (None, t) if self.track else None
        p = min(r)
        c = r[p]
        if c != 1:
            inv = 1 / c
            r = {k: x * inv for k, x in r.items()}
            if t is not None:
                t = {k: x * inv for k, x in t.items()}
        self.rows[p] = r
        if self.track:
            self.tags[p] = t
            return r, None
        return r

    def subspace(self, K) -> "Subspace":
        """Back-substitute into reduced row-echelon form."""
        pivots = sorted(self.rows)
        done: dict[int, dict] = {}
        for p in reversed(pivots):
            row = dict(self.rows[p])
            hits = sorted(k for k in row if k != p and k in done)
            for k in hits:
                c = row.get(k)
                if c:
                    _iadd(row, done[k], -c)
            done[p] = row
        return Subspace(K, self.n, [done[p] for p in pivots], pivots)


# ------------------------------------------------------------------ subspace

class Subspace:
    """A subspace of K^n stored as reduced row-echelon rows."""

    __slots__ = ("K", "n", "rows", "pivots", "_index")

    def __init__(self, K, n: int, rows: list, pivots: list):
        self.K = K
        self.n = n
        self.rows = rows
        self.pivots = pivots
        self._index = None

    # constructors
    @classmethod
    def span(cls, K, n: int, vectors: Iterable) -> "Subspace":
        ech = Echelon(n)
        for v in vectors:
            v = as_sparse(v)
            for k in v:
                if not 0 <= k < n:
                    raise ValueError(f"index {k} outside ambient dimension {n}")
            ech.add(v)
        return ech.subspace(K)

    @classmethod
    def zero(cls, K, n: int) -> "Subspace":
        return cls(K, n, [], [])

    @classmethod
    def full(cls, K, n: int) -> "Subspace":
        one = K.one
        return cls(K, n, [{i: one} for i in range(n)], list(range(n)))

    # queries
    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def _echelon(self) -> Echelon:
        if self._index is None:
            e = Echelon(self.n)
            e.rows = dict(zip(self.pivots, self.rows))
            self._index = e
        return self._index

    def reduce(self, v) -> dict:
        """Canonical coset representative of v (supported off the pivots)."""
        return self._echelon().reduce(as_sparse(v))[0]

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other):
        return self.issubspace(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, tuple(self.pivots)))

    def basis(self) -> list:
        return [dict(r) for r in self.rows]

    def dense(self) -> list:
        return [as_dense(r, self.n, self.K.zero) for r in self.rows]

    def __add__(self, other: "Subspace") -> "Subspace":
        return span_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.n})"

    def tensor(self, other: "Subspace") -> "Subspace":
        """span{a (x) b}; the product of RREF bases is again RREF."""
        rows, piv = [], []
        for a, pa in zip(self.rows, self.pivots):
            for b, pb in zip(other.rows, other.pivots):
                rows.append(tensor_vec(a, b, other.n))
                piv.append(pa * other.n + pb)
        # pivots sorted by construction; entries at other pivots vanish
        return Subspace(self.K, self.n * other.n, rows, piv)

    def image_under(self, f: "LinMap") -> "Subspace":
        return Subspace.span(self.K, f.m, (f.apply(r) for r in self.rows))


def echelonize(K, n: int, rows) -> Subspace:
    return Subspace.span(K, n, rows)


def span_sum(A: Subspace, B: Subspace) -> Subspace:
    if A.n != B.n:
        raise ValueError("ambient dimensions differ")
    ech = Echelon(A.n)
    ech.rows = dict(zip(A.pivots, A.rows))
    for r in B.rows:
        ech.add(r)
    return ech.subspace(A.K)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus: echelonize [[a, a], [b, 0]] and read off the lower block."""
    if A.n != B.n:
        raise ValueError("ambient dimensions differ")
    n = A.n
    ech = Echelon(2 * n)
    for r in A.rows:
        v = dict(r)
        v.update({k + n: x for k, x in r.items()})
        ech.add(v)
    for r in B.rows:
        ech.add(dict(r))
    out = [{k - n: x for k, x in row.items()} for p, row in ech.rows.items() if p >= n]
    return Subspace.span(A.K, n, out)


def contains(A: Subspace, v) -> bool:
    return A.contains(v)


# -------------------------------------------------------------------- maps

class LinMap:
    """Linear map K^n -> K^m given by the images of the basis vectors."""

    __slots__ = ("K", "n", "m", "cols")

    def __init__(self, K, n: int, m: int, cols: Sequence[dict]):
        if len(cols) != n:
            raise ValueError(f"expected {n} columns, got {len(cols)}")
        self.K = K
        self.n = n
        self.m = m
        self.cols = [as_sparse(c) for c in cols]

    @classmethod
    def from_function(cls, K, n: int, m: int, fn) -> "LinMap":
        return cls(K, n, m, [fn(i) for i in range(n)])

    @classmethod
    def from_dense(cls, K, matrix) -> "LinMap":
        """From a row-major m x n matrix."""
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        cols = [{i: K(matrix[i][j]) for i in range(m) if matrix[i][j]} for j in range(n)]
        return cls(K, n, m, cols)

    @classmethod
    def identity(cls, K, n: int) -> "LinMap":
        one = K.one
        return cls(K, n, n, [{i: one} for i in range(n)])

    @classmethod
    def zero_map(cls, K, n: int, m: int) -> "LinMap":
        return cls(K, n, m, [{} for _ in range(n)])

    def apply(self, v) -> dict:
        out: dict = {}
        for j, c in as_sparse(v).items():
            _iadd(out, self.cols[j], c)
        return out

    def __call__(self, v) -> dict:
        return self.apply(v)

    def compose(self, g: "LinMap") -> "LinMap":
        """self o g."""
        if g.m != self.n:
            raise ValueError("shape mismatch in composition")
        return LinMap(self.K, g.n, self.m, [self.apply(c) for c in g.cols])

    def __matmul__(self, g: "LinMap") -> "LinMap":
        return self.compose(g)

    def __add__(self, g: "LinMap") -> "LinMap":
        if (self.n, self.m) != (g.n, g.m):
            raise ValueError("shape mismatch")
        return LinMap(self.K, self.n, self.m, [vec_add(a, b) for a, b in zip(self.cols, g.cols)])

    def __sub__(self, g: "LinMap") -> "LinMap":
        return LinMap(self.K, self.n, self.m, [vec_sub(a, b) for a, b in zip(self.cols, g.cols)])

    def scale(self, c) -> "LinMap":
        return LinMap(self.K, self.n, self.m, [vec_scale(a, c) for a in self.cols])

    def kron(self, g: "LinMap") -> "LinMap":
        cols = []
        for a in self.cols:
            for b in g.cols:
                cols.append(tensor_vec(a, b, g.m))
        return LinMap(self.K, self.n * g.n, self.m * g.m, cols)

    def restrict(self, S: Subspace) -> list:
        return [self.apply(r) for r in S.rows]

    def dense(self) -> list:
        z = self.K.zero
        mat = [[z] * self.n for _ in range(self.m)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                mat[i][j] = x
        return mat

    def __eq__(self, g):
        if not isinstance(g, LinMap):
            return NotImplemented
        return (self.n, self.m) == (g.n, g.m) and self.cols == g.cols

    def __hash__(self):
        return hash((self.n, self.m))

    def __repr__(self):
        return f"LinMap({self.n} -> {self.m})"

    def kernel(self) -> Subspace:
        return kernel(self)

    def image(self) -> Subspace:
        return image(self)


def kernel(f: LinMap, domain: Subspace | None = None) -> Subspace:
    """ker f, optionally restricted to a subspace of the domain."""
    one = f.K.one
    ech = Echelon(f.m, track=True)
    ker = []
    if domain is None:
        inputs = [({i: one}, c) for i, c in enumerate(f.cols)]
    else:
        inputs = [(r, f.apply(r)) for r in domain.rows]
    for src, img in inputs:
        row, dep = ech.add(img, src)
        if row is None:
            ker.append(dep)
    return Subspace.span(f.K, f.n, ker)


def image(f: LinMap, domain: Subspace | None = None) -> Subspace:
    src = f.cols if domain is None else f.restrict(domain)
    return Subspace.span(f.K, f.m, src)


def solve(f: LinMap, b) -> dict | None:
    """Some x with f(x) = b, or None."""
    one = f.K.one
    ech = Echelon(f.m, track=True)
    for i, c in enumerate(f.cols):
        ech.add(c, {i: one})
    r, t = ech.reduce(as_sparse(b), {})
    if r:
        return None
    return vec_scale(t, -1)


class Quotient:
    """K^n / N with coset representatives on the non-pivot coordinates."""

    def __init__(self, N: Subspace):
        self.N = N
        self.n = N.n
        piv = set(N.pivots)
        self.free = [i for i in range(N.n) if i not in piv]
        self.pos = {c: k for k, c in enumerate(self.free)}
        self.dim = len(self.free)
        K = N.K
        cols = []
        rows = dict(zip(N.pivots, N.rows))
        one = K.one
        for j in range(self.n):
            if j in self.pos:
                cols.append({self.pos[j]: one})
            else:
                cols.append({self.pos[k]: -x for k, x in rows[j].items() if k != j})
        self.projection = LinMap(K, self.n, self.dim, cols)
        self.section = LinMap(K, self.dim, self.n, [{c: one} for c in self.free])

    def project(self, v) -> dict:
        return self.projection.apply(v)

    def lift(self, w) -> dict:
        return self.section.apply(w)


def quotient(N: Subspace):
    """(projection, section, dim) for K^n / N."""
    Q = Quotient(N)
    return Q.projection, Q.section, Q.dim


def saturate(K, n: int, seed: Iterable, operators: Sequence[LinMap]) -> Subspace:
    """Smallest subspace containing seed and stable under every operator."""
    ech = Echelon(n)
    queue = []
    for v in seed:
        r = ech.add(as_sparse(v))
        if r is not None:
            queue.append(r)
    while queue:
        v = queue.pop()
        for op in operators:
            w = op.apply(v)
            if w:
                r = ech.add(w)
                if r is not None:
                    queue.append(r)
    return ech.subspace(K)
