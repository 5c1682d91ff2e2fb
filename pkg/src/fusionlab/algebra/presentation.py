"""Presentations of the cyclotomic BMW / Nazarov–Wenzl algebras and their Hecke quotients."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..exact_arith import rat


class FreeElement:
    """Element of the free algebra on named letters; a thin dict wrapper."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *letters):
        return cls({tuple(letters): mpq(1)})

    @classmethod
    def scalar(cls, c):
        return cls({(): rat(c)})

    def _coerce(self, other):
        return other if isinstance(other, FreeElement) else FreeElement.scalar(other)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in self._coerce(other).terms.items():
            out[w] = out.get(w, 0) + c
        return FreeElement(out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FreeElement):
            c = rat(other)
            return FreeElement({w: x * c for w, x in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return FreeElement(out)

    def __rmul__(self, other):
        c = rat(other)
        return FreeElement({w: x * c for w, x in self.terms.items()})

    def __pow__(self, k: int):
        out = FreeElement.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def letters(self) -> set:
        return {x for w in self.terms for x in w}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{'·'.join(w) or '1'}" for w, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class Relation:
    label: str
    anchor: str
    lhs: FreeElement
    rhs: FreeElement

    @property
    def difference(self) -> FreeElement:
        return self.lhs - self.rhs


@dataclass
class Presentation:
    variant: str
    d: int
    n: int
    letters: tuple
    relations: list = field(default_factory=list)
    # relations that only make sense as matrix identities (they use inverse letters)
    checks: list = field(default_factory=list)

    def rel(self, label, anchor, lhs, rhs, *, check_only=False):
        (self.checks if check_only else self.relations).append(Relation(label, anchor, lhs, rhs))


def bmw_letters(n: int, with_e: bool = True) -> tuple:
    letters = ["X1", "X1i"] + [f"T{i}" for i in range(1, n)]
    if with_e:
        letters += [f"E{i}" for i in range(1, n)]
    return tuple(letters)


def nw_letters(n: int, with_e: bool = True) -> tuple:
    letters = [f"X{j}" for j in range(1, n + 1)] + [f"S{i}" for i in range(1, n)]
    if with_e:
        letters += [f"E{i}" for i in range(1, n)]
    return tuple(letters)


def _cyclotomic(X: FreeElement, v) -> FreeElement:
    out = FreeElement.scalar(1)
    for vs in v:
        out = out * (X - vs)
    return out


def bmw_presentation(params, n: int, hecke: bool = False, symbols: dict | None = None) -> Presentation:
    """Defining relations of the cyclotomic BMW algebra; ``hecke`` adds E_i = 0 for every i.

    ``symbols`` maps "rho", "rhoinv", "delta<j>" to free-algebra elements standing in
    for unknown scalars (used by the admissibility solver).
    """
    W = FreeElement.word
    d = params.d
    q = rat(params.q)
    z = q - 1 / q
    one = FreeElement.scalar(1)
    P = Presentation("hecke" if hecke else "bmw", d, n, bmw_letters(n))
    X1, X1i = W("X1"), W("X1i")
    T = {i: W(f"T{i}") for i in range(1, n)}
    E = {i: W(f"E{i}") for i in range(1, n)}
    if symbols:
        rho, rho_inv = symbols["rho"], symbols["rhoinv"]
        delta = [symbols[f"delta{j}"] for j in range(d)]
    elif not hecke:
        rho = rat(params.rho)
        rho_inv = 1 / rho
        delta = [rat(x) for x in params.delta]
    tinv = {i: T[i] - z * (one - E[i]) for i in range(1, n)}

    P.rel("inverse X1·X1⁻¹", "Inverses", X1 * X1i, one)
    P.rel("inverse X1⁻¹·X1", "Inverses", X1i * X1, one)
    for i in range(1, n):
        P.rel(f"inverse T{i}·T{i}⁻¹", "Inverses", T[i] * tinv[i], one)
        P.rel(f"inverse T{i}⁻¹·T{i}", "Inverses", tinv[i] * T[i], one)
    if hecke:
        for i in range(1, n):
            P.rel(f"quotient E{i} = 0", "Hecke quotient", E[i], FreeElement())
    for i in range(1, n):
        if not hecke:
            P.rel(f"E{i}² = δ0 E{i}", "Idempotent relations", E[i] * E[i], delta[0] * E[i])
    for i in range(1, n - 1):
        P.rel(f"braid T{i}T{i+1}T{i}", "Affine braid relations (a)", T[i] * T[i + 1] * T[i], T[i + 1] * T[i] * T[i + 1])
    for i in range(1, n):
        for j in range(i + 2, n):
            P.rel(f"T{i}T{j} = T{j}T{i}", "Affine braid relations (a)", T[i] * T[j], T[j] * T[i])
    if n >= 2:
        P.rel("X1T1X1T1 = T1X1T1X1", "Affine braid relations (b)", X1 * T[1] * X1 * T[1], T[1] * X1 * T[1] * X1)
    for j in range(2, n):
        P.rel(f"X1T{j} = T{j}X1", "Affine braid relations (b)", X1 * T[j], T[j] * X1)
    if not hecke:
        for i in range(1, n):
            for j in (i - 1, i + 1):
                if 1 <= j < n:
                    P.rel(f"E{i}E{j}E{i} = E{i}", "Tangle relations (a)", E[i] * E[j] * E[i], E[i])
                    P.rel(f"T{i}T{j}E{i} = E{j}E{i}", "Tangle relations (b)", T[i] * T[j] * E[i], E[j] * E[i])
                    P.rel(f"E{i}T{j}T{i} = E{i}E{j}", "Tangle relations (b)", E[i] * T[j] * T[i], E[i] * E[j])
        if n >= 2:
            for j in range(1, d):
                P.rel(f"E1X1^{j}E1 = δ{j}E1", "Tangle relations (c)", E[1] * X1**j * E[1], delta[j] * E[1])
        for i in range(1, n):
            P.rel(f"T{i}E{i} = ρ⁻¹E{i}", "Untwisting relations", T[i] * E[i], rho_inv * E[i])
            P.rel(f"E{i}T{i} = ρ⁻¹E{i}", "Untwisting relations", E[i] * T[i], rho_inv * E[i])
        if n >= 2:
            P.rel("E1X1T1X1 = ρE1", "Unwrapping relations", E[1] * X1 * T[1] * X1, rho * E[1])
            P.rel("X1T1X1E1 = ρE1", "Unwrapping relations", X1 * T[1] * X1 * E[1], rho * E[1])
    P.rel("(X1-v1)…(X1-vd) = 0", "Cyclotomic relation", _cyclotomic(X1, [rat(x) for x in params.v]), FreeElement())
    # The skein relation is built into the inverse letters above; as a matrix
    # identity it is checked against the true inverse of T_i.
    for i in range(1, n):
        P.rel(
            f"T{i} - T{i}⁻¹ = (q-q⁻¹)(1-E{i})",
            "Kauffman skein relations",
            T[i] - W(f"T{i}inv"),
            z * (one - E[i]),
            check_only=True,
        )
    return P


def nw_presentation(params, n: int, hecke: bool = False, symbols: dict | None = None) -> Presentation:
    """Defining relations of the cyclotomic Nazarov–Wenzl algebra; ``hecke`` adds E_i = 0."""
    W = FreeElement.word
    d = params.d
    one = FreeElement.scalar(1)
    zero = FreeElement()
    P = Presentation("deg-hecke" if hecke else "nw", d, n, nw_letters(n))
    X = {j: W(f"X{j}") for j in range(1, n + 1)}
    S = {i: W(f"S{i}") for i in range(1, n)}
    E = {i: W(f"E{i}") for i in range(1, n)}
    if symbols:
        omega = [symbols[f"omega{k}"] for k in range(d)]
    else:
        omega = [rat(x) for x in params.omega] if not hecke else None

    if hecke:
        for i in range(1, n):
            P.rel(f"quotient E{i} = 0", "Degenerate Hecke quotient", E[i], zero)
    for i in range(1, n):
        P.rel(f"S{i}² = 1", "Involutions", S[i] * S[i], one)
        if not hecke:
            P.rel(f"E{i}² = ω0 E{i}", "Idempotent relations", E[i] * E[i], omega[0] * E[i])
    for i in range(1, n - 1):
        P.rel(f"braid S{i}S{i+1}S{i}", "Affine braid relations (a)", S[i] * S[i + 1] * S[i], S[i + 1] * S[i] * S[i + 1])
    for i in range(1, n):
        for j in range(i + 2, n):
            P.rel(f"S{i}S{j} = S{j}S{i}", "Affine braid relations (a)", S[i] * S[j], S[j] * S[i])
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                P.rel(f"S{i}X{j} = X{j}S{i}", "Affine braid relations (b)", S[i] * X[j], X[j] * S[i])
    if not hecke:
        for i in range(1, n):
            for j in (i - 1, i + 1):
                if 1 <= j < n:
                    P.rel(f"E{i}E{j}E{i} = E{i}", "Tangle relations (a)", E[i] * E[j] * E[i], E[i])
                    P.rel(f"S{i}S{j}E{i} = E{j}E{i}", "Tangle relations (b)", S[i] * S[j] * E[i], E[j] * E[i])
                    P.rel(f"E{i}S{j}S{i} = E{i}E{j}", "Tangle relations (b)", E[i] * S[j] * S[i], E[i] * E[j])
        if n >= 2:
            for k in range(1, d):
                P.rel(f"E1X1^{k}E1 = ω{k}E1", "Tangle relations (c)", E[1] * X[1] ** k * E[1], omega[k] * E[1])
        for i in range(1, n):
            P.rel(f"S{i}E{i} = E{i}", "Untwisting relations", S[i] * E[i], E[i])
            P.rel(f"E{i}S{i} = E{i}", "Untwisting relations", E[i] * S[i], E[i])
    for i in range(1, n):
        P.rel(f"S{i}X{i} - X{i+1}S{i} = E{i} - 1", "Skein relations", S[i] * X[i] - X[i + 1] * S[i], E[i] - one)
    if not hecke:
        for i in range(1, n):
            P.rel(f"E{i}(X{i}+X{i+1}) = 0", "Anti-symmetry relations", E[i] * (X[i] + X[i + 1]), zero)
            P.rel(f"(X{i}+X{i+1})E{i} = 0", "Anti-symmetry relations", (X[i] + X[i + 1]) * E[i], zero)
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) >= 2:
                    P.rel(f"S{i}E{j} = E{j}S{i}", "Commutative relations (a)", S[i] * E[j], E[j] * S[i])
                    if i < j:
                        P.rel(f"E{i}E{j} = E{j}E{i}", "Commutative relations (a)", E[i] * E[j], E[j] * E[i])
        for i in range(1, n):
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    P.rel(f"E{i}X{j} = X{j}E{i}", "Commutative relations (b)", E[i] * X[j], X[j] * E[i])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            P.rel(f"X{i}X{j} = X{j}X{i}", "Commutative relations (c)", X[i] * X[j], X[j] * X[i])
    P.rel("(X1-v1)…(X1-vd) = 0", "Cyclotomic relation", _cyclotomic(X[1], [rat(x) for x in params.v]), zero)
    return P


def presentation(variant: str, params, n: int) -> Presentation:
    if variant == "bmw":
        return bmw_presentation(params, n)
    if variant == "hecke":
        return bmw_presentation(params, n, hecke=True)
    if variant == "nw":
        return nw_presentation(params, n)
    if variant == "deg-hecke":
        return nw_presentation(params, n, hecke=True)
    raise ValueError(f"unknown variant {variant!r}")
