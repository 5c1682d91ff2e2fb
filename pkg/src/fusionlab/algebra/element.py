"""Algebra elements with coefficients in Q(u), stored as coordinates over the model basis.

An element is ``num(u) / den(u)``: ``num`` is an (m, D) object array whose row
``j`` holds the coordinates of the u^j coefficient, ``den`` a scalar
polynomial.  Only one variable is ever live.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

from ..exact_arith import PoleError, Poly, RatFunc, rat
from .model import AlgebraModel, SparseOp, is_zero_array, zeros

ONE = mpq(1)
POLY_ONE = Poly.const(ONE)


def _trim(num: np.ndarray) -> np.ndarray:
    m = num.shape[0]
    while m > 1 and all(x == 0 for x in num[m - 1]):
        m -= 1
    return num[:m]


def _poly_times(num: np.ndarray, p: Poly) -> np.ndarray:
    if p.is_zero():
        return zeros((1, num.shape[1]))
    m, D = num.shape
    out = zeros((m + p.degree, D))
    for i, c in enumerate(p.coeffs):
        if c != 0:
            out[i : i + m] += num * c
    return out


def _divide_linear(num: np.ndarray, a):
    """(num / (u - a), remainder row) by synthetic division."""
    m, D = num.shape
    if m == 1:
        return zeros((1, D)), num[0]
    quo = zeros((m - 1, D))
    acc = num[m - 1].copy()
    quo[m - 2] = acc
    for j in range(m - 2, 0, -1):
        acc = num[j] + acc * a
        quo[j - 1] = acc
    rem = num[0] + acc * a
    return quo, rem


def _eval_rows(num: np.ndarray, a) -> np.ndarray:
    acc = num[-1].copy()
    for j in range(num.shape[0] - 2, -1, -1):
        acc = acc * a + num[j]
    return acc


class Element:
    __slots__ = ("model", "num", "den")

    def __init__(self, model: AlgebraModel, num: np.ndarray, den: Poly = POLY_ONE):
        if num.ndim == 1:
            num = num.reshape(1, -1)
        self.model = model
        self.num = _trim(num)
        self.den = den

    @classmethod
    def one(cls, model) -> Element:
        return cls(model, model.unit())

    @classmethod
    def from_vector(cls, model, vec) -> Element:
        return cls(model, np.asarray(vec, dtype=object).copy())

    @property
    def is_constant(self) -> bool:
        return self.num.shape[0] == 1 and self.den.degree == 0

    @property
    def vector(self) -> np.ndarray:
        if not self.is_constant:
            raise ValueError("element still depends on the live variable")
        return self.num[0] / self.den.coeffs[0] if self.den.coeffs[0] != 1 else self.num[0]

    def matrix(self) -> np.ndarray:
        """Left-regular matrix (constant elements only)."""
        return self.model.left_matrix(self.vector)

    def is_zero(self) -> bool:
        return is_zero_array(self.num)

    # -- arithmetic -------------------------------------------------------------
    def scale(self, s) -> Element:
        if isinstance(s, RatFunc):
            return Element(self.model, _poly_times(self.num, s.num), self.den * s.den)
        if isinstance(s, Poly):
            return Element(self.model, _poly_times(self.num, s), self.den)
        return Element(self.model, self.num * rat(s), self.den)

    def __add__(self, other: Element) -> Element:
        if self.den == other.den:
            return Element(self.model, _padd(self.num, other.num), self.den)
        g = self.den.gcd(other.den)
        a = other.den // g
        b = self.den // g
        return Element(self.model, _padd(_poly_times(self.num, a), _poly_times(other.num, b)), self.den * a)

    def __neg__(self):
        return Element(self.model, -self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def apply(self, op) -> Element:
        """Coordinates transformed by a constant operator (dense matrix or SparseOp)."""
        if isinstance(op, SparseOp):
            return Element(self.model, op.apply(self.num), self.den)
        return Element(self.model, self.num.dot(op.T), self.den)

    def apply_combination(self, terms) -> Element:
        """Σ coef · (matrix applied), matrix None meaning the identity."""
        acc = None
        for coef, matrix in terms:
            part = self if matrix is None else self.apply(matrix)
            part = part.scale(coef)
            acc = part if acc is None else acc + part
        return acc

    # -- evaluation -------------------------------------------------------------
    def eval_regular(self, a, diagnostics: dict | None = None) -> Element:
        """Value at u = a after cancelling every removable (u - a) factor."""
        a = rat(a)
        num, den = self.num, self.den
        cancelled = 0
        while den(a) == 0:
            den, _ = den.shift_divide(a)
            num, rem = _divide_linear(num, a)
            if not all(x == 0 for x in rem):
                raise PoleError(f"genuine pole at u = {a} (order ≥ {cancelled + 1})")
            cancelled += 1
        if diagnostics is not None:
            diagnostics["cancelled_order"] = cancelled
            diagnostics["numerator_degree"] = self.num.shape[0] - 1
            diagnostics["denominator_degree"] = self.den.degree
        value = _eval_rows(num, a) / den(a)
        return Element(self.model, value.reshape(1, -1))

    def equals(self, other: Element) -> bool:
        lhs = _poly_times(self.num, other.den)
        rhs = _poly_times(other.num, self.den)
        return is_zero_array(_padd(lhs, -rhs))

    def __repr__(self):
        return f"Element(dim={self.num.shape[1]}, deg_num={self.num.shape[0] - 1}, den={self.den!r})"


def _padd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    out = a.copy()
    out[: b.shape[0]] += b
    return out


def resolvent_coefficients(m: Poly) -> list[Poly]:
    """h_j with (m(u) − m(X))/(u − X) = Σ_j h_j(u) X^j."""
    cs = m.coeffs
    return [Poly([cs[k] for k in range(j + 1, len(cs))]) for j in range(len(cs) - 1)]


def right_resolvent(x: Element, op, m: Poly, *, times_m: bool = False) -> Element:
    """x·(u − X)⁻¹, where ``op`` is right multiplication by X and m(X) = 0.

    With ``times_m`` the result is multiplied by m(u), which makes it polynomial in u.
    """
    acc = None
    y = x
    for j, h in enumerate(resolvent_coefficients(m)):
        if j:
            y = y.apply(op)
        term = y.scale(h)
        acc = term if acc is None else acc + term
    if times_m:
        return acc
    return acc.scale(RatFunc("u", POLY_ONE, m))
