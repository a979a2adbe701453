"""Exact coefficient fields.

Three kinds of field context are provided:

* ``QQ`` -- the rationals, elements are :class:`fractions.Fraction`;
* ``Cyclotomic(N)`` -- Q(zeta_N), elements are :class:`Cyc`, stored as
  a polynomial reduced modulo the N-th cyclotomic polynomial;
* ``QQq`` -- the rational function field Q(q), elements are
  :class:`RatFunc` with a monic denominator.

Python ints mix freely with every context.  Anything else must be
coerced explicitly with ``K.coerce``.  Polynomial arithmetic is done
by python-flint.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "Field",
    "Rationals",
    "Cyclotomic",
    "RationalFunctions",
    "Cyc",
    "RatFunc",
    "QQ",
    "QQq",
    "ScalarError",
    "parse_scalar",
    "serialize",
    "context_of",
]


class ScalarError(ValueError):
    """Raised on context mismatch, bad coercion or malformed input."""


def _frac(c) -> Fraction:
    c = fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _fmt_coeff_term(c: Fraction, mono: str, first: bool) -> str:
    """Render ``c*mono`` as one signed term of a sum."""
    neg = c < 0
    a = -c if neg else c
    if mono == "":
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _fmt_poly(p: fmpq_poly, var: str) -> str:
    if p == 0:
        return "0"
    coeffs = p.coeffs()
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = _frac(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        out.append(_fmt_coeff_term(c, mono, not out))
    return "".join(out)


def _poly_key(p: fmpq_poly) -> tuple:
    return tuple(str(c) for c in p.coeffs())


class Field:
    """Base class for field contexts."""

    name = "field"

    def __call__(self, x):
        return self.coerce(x)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def parse(self, text: str):
        return _Parser(text, self).parse()

    def serialize(self, a) -> str:
        return str(self.coerce(a))

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "QQ"

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, fmpq):
            return _frac(x)
        raise ScalarError(f"cannot coerce {x!r} into QQ")

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def _atom(self, name):
        raise ScalarError(f"symbol {name!r} is not defined over QQ")


QQ = Rationals()


# ---------------------------------------------------------------- cyclotomic

class Cyclotomic(Field):
    """The cyclotomic field Q(zeta_N).  Instances are cached per N."""

    _cache: dict[int, "Cyclotomic"] = {}

    def __new__(cls, N: int):
        N = int(N)
        if N < 1:
            raise ScalarError("cyclotomic order must be positive")
        if N not in cls._cache:
            self = super().__new__(cls)
            self.N = N
            self.name = f"Q(z{N})"
            self.modulus = fmpq_poly(fmpz_poly.cyclotomic(N).coeffs())
            self.degree = self.modulus.degree()
            cls._cache[N] = self
        return cls._cache[N]

    def __reduce__(self):
        return (Cyclotomic, (self.N,))

    def _make(self, poly: fmpq_poly) -> "Cyc":
        if poly.degree() >= self.degree:
            poly = poly % self.modulus
        return Cyc(self, poly)

    def zeta(self, k: int = 1) -> "Cyc":
        """zeta_N^k, negative k allowed."""
        k %= self.N
        return self._make(fmpq_poly([0] * k + [1]))

    def coerce(self, x) -> "Cyc":
        if isinstance(x, Cyc):
            if x.K is self:
                return x
            if self.N % x.K.N == 0:
                # zeta_n = zeta_N^(N/n)
                step = self.N // x.K.N
                coeffs = x.poly.coeffs()
                out = fmpq_poly(0)
                for k, c in enumerate(coeffs):
                    if c != 0:
                        out += c * fmpq_poly([0] * (k * step) + [1])
                return self._make(out)
            raise ScalarError(f"no embedding {x.K.name} -> {self.name}")
        if isinstance(x, (int, Fraction, fmpq)):
            if isinstance(x, Fraction):
                x = fmpq(x.numerator, x.denominator)
            return Cyc(self, fmpq_poly([x]))
        raise ScalarError(f"cannot coerce {x!r} into {self.name}")

    def contains(self, x) -> bool:
        return isinstance(x, Cyc) and x.K is self

    def _atom(self, name):
        m = re.fullmatch(r"z(\d+)", name)
        if not m:
            raise ScalarError(f"symbol {name!r} is not defined over {self.name}")
        n = int(m.group(1))
        if n == 0 or self.N % n:
            raise ScalarError(f"z{n} does not live in {self.name}")
        return self.zeta(self.N // n)


class Cyc:
    """Element of Q(zeta_N)."""

    __slots__ = ("K", "poly")

    def __init__(self, K: Cyclotomic, poly: fmpq_poly):
        self.K = K
        self.poly = poly

    def _other(self, b):
        if isinstance(b, Cyc):
            if b.K is not self.K:
                raise ScalarError(f"mixed contexts {self.K.name} and {b.K.name}")
            return b.poly
        if isinstance(b, int) and not isinstance(b, bool):
            return fmpq_poly([b])
        raise ScalarError(f"cannot mix {self.K.name} with {type(b).__name__}; coerce first")

    def __add__(self, b):
        return Cyc(self.K, self.poly + self._other(b))

    __radd__ = __add__

    def __sub__(self, b):
        return Cyc(self.K, self.poly - self._other(b))

    def __rsub__(self, b):
        return Cyc(self.K, self._other(b) - self.poly)

    def __mul__(self, b):
        return self.K._make(self.poly * self._other(b))

    __rmul__ = __mul__

    def __neg__(self):
        return Cyc(self.K, -self.poly)

    def __pos__(self):
        return self

    def inverse(self) -> "Cyc":
        if self.poly == 0:
            raise ZeroDivisionError("division by zero in " + self.K.name)
        if self.poly.degree() == 0:
            return Cyc(self.K, fmpq_poly([1 / self.poly[0]]))
        g, s, _ = self.poly.xgcd(self.K.modulus)
        return self.K._make(s / g[0])

    def __truediv__(self, b):
        if isinstance(b, int):
            if b == 0:
                raise ZeroDivisionError("division by zero in " + self.K.name)
            return Cyc(self.K, self.poly / b)
        return self * Cyc(self.K, self._other(b)).inverse()

    def __rtruediv__(self, b):
        return Cyc(self.K, self._other(b)) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = Cyc(self.K, fmpq_poly([1]))
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def __eq__(self, b):
        if isinstance(b, Cyc):
            return b.K is self.K and b.poly == self.poly
        if isinstance(b, int):
            return self.poly == b
        return NotImplemented

    def __hash__(self):
        if self.poly.degree() <= 0:
            return hash(_frac(self.poly[0]))
        return hash((self.K.N, _poly_key(self.poly)))

    def __bool__(self):
        return self.poly != 0

    def __repr__(self):
        return f"Cyc({self})"

    def __str__(self):
        return _fmt_poly(self.poly, f"z{self.K.N}")


# ---------------------------------------------------------- rational functions

class RationalFunctions(Field):
    """Q(q) with q transcendental."""

    name = "Q(q)"
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (RationalFunctions, ())

    @property
    def q(self) -> "RatFunc":
        return RatFunc._raw(fmpq_poly([0, 1]), fmpq_poly([1]))

    def coerce(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, fmpq)):
            return RatFunc._raw(fmpq_poly([x]), fmpq_poly([1]))
        if isinstance(x, Fraction):
            return RatFunc._raw(fmpq_poly([fmpq(x.numerator, x.denominator)]), fmpq_poly([1]))
        raise ScalarError(f"cannot coerce {x!r} into Q(q)")

    def from_polys(self, num, den=1) -> "RatFunc":
        return RatFunc(fmpq_poly(num) if not isinstance(num, fmpq_poly) else num,
                       fmpq_poly(den) if not isinstance(den, fmpq_poly) else den)

    def contains(self, x) -> bool:
        return isinstance(x, RatFunc)

    def _atom(self, name):
        if name != "q":
            raise ScalarError(f"symbol {name!r} is not defined over Q(q)")
        return self.q


QQq = RationalFunctions()
_ONE = fmpq_poly([1])


class RatFunc:
    """num/den with gcd 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: fmpq_poly, den: fmpq_poly):
        if den == 0:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if num == 0:
            self.num, self.den = fmpq_poly(0), _ONE
            return
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den[den.degree()]
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @staticmethod
    def _other(b):
        if isinstance(b, RatFunc):
            return b
        if isinstance(b, int) and not isinstance(b, bool):
            return RatFunc._raw(fmpq_poly([b]), _ONE)
        raise ScalarError(f"cannot mix Q(q) with {type(b).__name__}; coerce first")

    def __add__(self, b):
        if getattr(b, "_over_scalars", False):
            return NotImplemented
        b = self._other(b)
        if self.den == b.den:
            if self.den.degree() == 0:
                return RatFunc._raw(self.num + b.num, _ONE)
            return RatFunc(self.num + b.num, self.den)
        return RatFunc(self.num * b.den + b.num * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, b):
        if getattr(b, "_over_scalars", False):
            return NotImplemented
        return self + (-self._other(b))

    def __rsub__(self, b):
        return self._other(b) + (-self)

    def __mul__(self, b):
        if getattr(b, "_over_scalars", False):
            return NotImplemented
        b = self._other(b)
        if self.num == 0 or b.num == 0:
            return RatFunc._raw(fmpq_poly(0), _ONE)
        if self.den.degree() == 0 and b.den.degree() == 0:
            return RatFunc._raw(self.num * b.num, _ONE)
        # cross cancellation keeps intermediate sizes small
        g1 = self.num.gcd(b.den)
        g2 = b.num.gcd(self.den)
        return RatFunc((self.num // g1) * (b.num // g2), (self.den // g2) * (b.den // g1))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num == 0:
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, b):
        b = self._other(b)
        return self * b.inverse()

    def __rtruediv__(self, b):
        return self._other(b) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def __eq__(self, b):
        if isinstance(b, RatFunc):
            return self.num == b.num and self.den == b.den
        if isinstance(b, int):
            return self.den.degree() == 0 and self.num == b
        return NotImplemented

    def __hash__(self):
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(_frac(self.num[0]))
        return hash((_poly_key(self.num), _poly_key(self.den)))

    def __bool__(self):
        return self.num != 0

    def evaluate(self, value) -> Fraction:
        """Specialize q to a rational number."""
        v = fmpq(value.numerator, value.denominator) if isinstance(value, Fraction) else fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q = {value}")
        return _frac(self.num(v) / d)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.degree() == 0:
            return _fmt_poly(self.num, "q")
        return f"({_fmt_poly(self.num, 'q')})/({_fmt_poly(self.den, 'q')})"


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(.))")


class _Parser:
    def __init__(self, text: str, K: Field):
        self.K = K
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            elif op.strip():
                if op not in "+-*/^()":
                    raise ScalarError(f"unexpected character {op!r} in {text!r}")
                self.toks.append(("op", op))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ScalarError(f"syntax error in {self.text!r} at token {self.i}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ScalarError("empty scalar")
        v = self.expr()
        if self.i != len(self.toks):
            raise ScalarError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, n = self.take()
            if kind != "num":
                raise ScalarError(f"exponent must be an integer in {self.text!r}")
            v = v ** (sign * n)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.K.coerce(val)
        if kind == "name":
            return self.K._atom(val)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ScalarError(f"syntax error in {self.text!r}")


def context_of(a) -> Field:
    """The field context an element belongs to (ints and Fractions -> QQ)."""
    if isinstance(a, Cyc):
        return a.K
    if isinstance(a, RatFunc):
        return QQq
    if isinstance(a, (int, Fraction)):
        return QQ
    raise ScalarError(f"{a!r} is not a scalar")


@lru_cache(maxsize=None)
def _parse_cached(text: str, K: Field):
    return K.parse(text)


def parse_scalar(text: str, K: Field = QQ):
    return _parse_cached(text, K)


def serialize(a) -> str:
    return str(a)
