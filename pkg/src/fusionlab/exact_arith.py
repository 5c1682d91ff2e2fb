"""Exact scalars: rationals, univariate polynomials and rational functions.

Rationals are ``gmpy2.mpq``.  ``Poly`` is generic over its coefficient field,
so a ``RatFunc`` in ``u`` may carry coefficients that are themselves
``RatFunc`` objects in a second variable; that is how two-variable identities
are checked without a multivariate engine.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _AbstractRational

from gmpy2 import mpq, mpz

Rational = type(mpq(0))

__all__ = [
    "Rational",
    "Poly",
    "RatFunc",
    "PoleError",
    "ZeroDivisionInField",
    "rat",
    "rat_str",
    "parse_rat",
    "rf_arith",
    "rf_pow",
    "rf_eval_regular",
]


class PoleError(ArithmeticError):
    """A reduced denominator vanishes at the evaluation point."""


class ZeroDivisionInField(ZeroDivisionError):
    pass


def rat(x, den=None) -> Rational:
    """Coerce ints, strings ("3/4"), Fractions and mpq into an mpq."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, type(mpz(0)))):
        return mpq(x)
    if isinstance(x, _AbstractRational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def parse_rat(s: str) -> Rational:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        b = int(b)
        if b == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return mpq(int(a), b)
    return mpq(int(s))


def rat_str(x) -> str:
    """Serialize as "num/den" (den always present, positive)."""
    x = rat(x)
    return f"{int(x.numerator)}/{int(x.denominator)}"


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree order.

    The coefficient field is whatever the coefficients are (mpq by default).
    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        # plain ints would turn into floats under c / c
        cs = [mpq(c) if type(c) is int else c for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls, one=None):
        one = mpq(1) if one is None else one
        return cls((one - one, one))

    @classmethod
    def from_roots(cls, roots, one=None):
        one = mpq(1) if one is None else one
        p = cls.const(one)
        for r in roots:
            p = p * cls((-r, one))
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1]

    def _one(self):
        c = self.coeffs[-1]
        return c / c

    def _zero(self):
        c = self.coeffs[-1]
        return c - c

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __call__(self, a):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    # -- ring operations -----------------------------------------------
    def _coerce(self, other):
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if _is_zero(other):
                return Poly()
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        zero = a[0] - a[0]
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self._one()) if self.coeffs else Poly.const(mpq(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionInField("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        inv = other._one() / other.lc
        quo = [None] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quo[k] = c
            if not _is_zero(c):
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self._one() / self.lc
        return Poly([c * inv for c in self.coeffs])

    def gcd(self, other: Poly) -> Poly:
        """Monic gcd by the Euclidean algorithm (exact over any field)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self) -> Poly:
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:])

    def shift_divide(self, a):
        """Divide by (x - a); returns (quotient, remainder value)."""
        cs = self.coeffs
        if not cs:
            return Poly(), 0
        acc = cs[-1]
        quo = [acc]
        for c in reversed(cs[:-1]):
            acc = acc * a + c
            quo.append(acc)
        rem = quo.pop()
        return Poly(reversed(quo)), rem


class RatFunc:
    """Normalized univariate rational function num/den in one variable.

    Invariants: gcd(num, den) = 1, den monic, zero is 0/1.  Structural
    equality is therefore mathematical equality.
    """

    __slots__ = ("var", "num", "den")

    def __init__(self, var: str, num, den=None, *, normalized: bool = False):
        self.var = var
        num = num if isinstance(num, Poly) else Poly.const(num)
        if den is None:
            den = Poly.const(num._one() if num.coeffs else mpq(1))
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionInField("rational function with zero denominator")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def variable(cls, var: str, one=None):
        return cls(var, Poly.x(one), normalized=True)

    @classmethod
    def const(cls, var: str, c):
        return cls(var, Poly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else mpq(0)

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc) and other.var == self.var:
            return other
        if _is_zero(other):
            return RatFunc(self.var, Poly(), normalized=True)
        # scalars enter through the coefficient field (nested Q(w) coefficients)
        return RatFunc(self.var, Poly.const(self.den._one() * other), normalized=True)

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return RatFunc(self.var, self.num + other.num, self.den)
        return RatFunc(self.var, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.var, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.var, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionInField("division by the zero rational function")
        return RatFunc(self.var, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        return rf_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            if other.var != self.var:
                return self.is_constant() and other.is_constant() and self.constant_value() == other.constant_value()
            return self.num == other.num and self.den == other.den
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.var, self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.var}: {list(self.num.coeffs)} / {list(self.den.coeffs)})"

    def __call__(self, a):
        return rf_eval_regular(self, a)


def _normalize(num: Poly, den: Poly):
    if num.is_zero():
        one = den._one()
        return Poly(), Poly.const(one)
    g = num.gcd(den)
    if g.degree > 0:
        num = num // g
        den = den // g
    inv = den._one() / den.lc
    if inv != 1:
        num = num * inv
        den = den * inv
    return num, den


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if isinstance(a, RatFunc) and isinstance(b, RatFunc) and a.var != b.var:
        raise ValueError(f"variable mismatch: {a.var} vs {b.var}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rf_pow(f: RatFunc, k: int) -> RatFunc:
    if k == 0:
        return RatFunc(f.var, Poly.const(f.den._one()), normalized=True)
    if k < 0:
        if f.is_zero():
            raise ZeroDivisionInField("zero base with negative exponent")
        return RatFunc(f.var, f.den ** (-k), f.num ** (-k))
    # num/den coprime implies num^k/den^k coprime; only re-monic needed
    return RatFunc(f.var, f.num ** k, f.den ** k, normalized=True)


def rf_eval_regular(f: RatFunc, a):
    """Value of the reduced form at ``a``; a vanishing denominator is a pole."""
    d = f.den(a)
    if _is_zero(d):
        raise PoleError(f"pole of {f!r} at {a}")
    return f.num(a) / d
