"""Consistency solving for the scalars δ_j, ρ (BMW) and ω_j (NW).

The unknown scalars become extra letters that commute with everything and
sort below every generator.  Completing the two-strand presentation then
produces basis elements of the form p(θ)·E_1 (or p(θ)·1); since E_1 must
survive, each such p is a constraint.  The constraint system is solved
with sympy; only roots whose two-strand model has full dimension are kept.
"""

from __future__ import annotations

import logging
from dataclasses import replace

import sympy

from ..exact_arith import rat
from .groebner import BudgetExceeded, GroebnerBasis
from .params import ParameterError, ParamSet, bmw_delta0, check_generic, default_c
from .presentation import FreeElement, bmw_letters, bmw_presentation, nw_letters, nw_presentation

log = logging.getLogger(__name__)


def _unknowns(variant: str, d: int) -> list[str]:
    if variant == "bmw":
        return ["rho", "rhoinv"] + [f"delta{j}" for j in range(1, d)]
    return [f"omega{k}" for k in range(d)]


def _symbols(variant: str, d: int, q) -> dict:
    W = FreeElement.word
    if variant == "bmw":
        z = rat(q) - 1 / rat(q)
        out = {"rho": W("rho"), "rhoinv": W("rhoinv")}
        out["delta0"] = FreeElement.scalar(1) + (W("rho") - W("rhoinv")) * (1 / z)
        for j in range(1, d):
            out[f"delta{j}"] = W(f"delta{j}")
        return out
    return {f"omega{k}": W(f"omega{k}") for k in range(d)}


def consistency_constraints(params: ParamSet, *, max_degree: int = 16) -> tuple[list, list]:
    """Polynomial constraints on the unknown scalars, as sympy expressions, and the sympy symbols."""
    variant, d = params.variant, params.d
    central = _unknowns(variant, d)
    syms = _symbols(variant, d, params.q)
    if variant == "bmw":
        pres = bmw_presentation(params, 2, symbols=syms)
        base = bmw_letters(2)
    else:
        pres = nw_presentation(params, 2, symbols=syms)
        base = nw_letters(2)
    # E1 smallest among the generators so that it survives as a normal word
    letters = tuple(central) + ("E1",) + tuple(x for x in base if x != "E1")
    index = {x: i for i, x in enumerate(letters)}
    gb = GroebnerBasis(len(letters), max_degree=max_degree)

    def add(diff: FreeElement):
        p = {tuple(index[x] for x in w): c for w, c in diff.terms.items()}
        if p:
            gb.add(p)

    for rel in pres.relations:
        add(rel.difference)
    W = FreeElement.word
    for a in central:
        for x in letters:
            if x != a and (x not in central or index[x] > index[a]):
                add(W(x, a) - W(a, x))
    if variant == "bmw":
        add(W("rho", "rhoinv") - FreeElement.scalar(1))
    gb.complete_basis()

    sym = {name: sympy.Symbol(name) for name in central}
    e1 = index["E1"]
    n_central = len(central)
    constraints = []
    for p in gb.elements():
        tails = {w[-1] if w and w[-1] >= n_central else None for w in p}
        if not all(all(x < n_central for x in (w[:-1] if w and w[-1] >= n_central else w)) for w in p):
            continue
        if tails - {None, e1}:
            continue
        # p = a(θ)·1 + b(θ)·E1: both parts must vanish once E1 ≠ 0 and 1 ∉ span(E1)
        for tail in (None, e1):
            expr = sum(
                (sympy.Rational(int(c.numerator), int(c.denominator)) * sympy.Mul(*[sym[letters[x]] for x in (w if tail is None else w[:-1])])
                 for w, c in p.items()
                 if (tail is None and (not w or w[-1] < n_central)) or (tail is not None and w and w[-1] == tail)),
                sympy.Integer(0),
            )
            expr = sympy.expand(expr)
            if expr != 0:
                constraints.append(expr)
    log.debug("%s d=%d: %d constraints from %d basis elements", variant, d, len(constraints), len(gb.elements()))
    return constraints, [sym[x] for x in central]


def _rational_solutions(constraints, symbols) -> list[dict]:
    if not constraints:
        raise ParameterError(f"underdetermined: no constraint on {', '.join(map(str, symbols))}")
    sols = sympy.solve(constraints, symbols, dict=True)
    out = []
    for s in sols:
        if set(s) != set(symbols):
            free = [str(x) for x in symbols if x not in s]
            raise ParameterError(f"underdetermined: free directions {free}")
        if all(v.is_Rational for v in s.values()):
            out.append({str(k): rat(int(v.p), int(v.q)) for k, v in s.items()})
    if not out:
        raise ParameterError("no rational solution: parameters not admissible for any choice")
    return sorted(out, key=lambda s: tuple(s[k] for k in sorted(s)))


def _fill(params: ParamSet, sol: dict) -> ParamSet:
    d = params.d
    if params.variant == "bmw":
        rho = sol["rho"]
        delta = (bmw_delta0(params.q, rho),) + tuple(sol[f"delta{j}"] for j in range(1, d))
        return replace(params, rho=rho, delta=delta, c=default_c("bmw", params.q))
    omega = tuple(sol[f"omega{k}"] for k in range(d))
    return replace(params, omega=omega, c=default_c("nw", omega=omega))


def is_admissible(params: ParamSet) -> bool:
    """{E1, E1X1, …, E1X1^(d−1)} independent, i.e. the two-strand model has full dimension."""
    from .model import build_model, expected_dimension

    try:
        model = build_model(params.variant, params.d, 2, params, check_dimension=False)
    except BudgetExceeded:
        return False
    return model.dimension == expected_dimension(params.variant, params.d, 2)


def admissible_solutions(params: ParamSet) -> list[ParamSet]:
    try:
        constraints, symbols = consistency_constraints(params)
    except BudgetExceeded as exc:
        raise ParameterError(f"consistency closure exceeded its budget: {exc}") from exc
    filled = [_fill(params, s) for s in _rational_solutions(constraints, symbols)]
    good = [p for p in filled if is_admissible(p)]
    log.debug("%s d=%d: %d rational solutions, %d admissible", params.variant, params.d, len(filled), len(good))
    if not good:
        raise ParameterError("inconsistent: no rational solution gives an admissible algebra")
    return good


def solve_admissible(params: ParamSet, *, rho_sign: int = 1) -> ParamSet:
    """Fill in ρ, δ_j (BMW) or ω_j (NW) from the two-strand consistency constraints."""
    if params.variant not in ("bmw", "nw"):
        raise ParameterError(f"no admissibility scalars for {params.variant}")
    good = admissible_solutions(params)
    if params.variant == "bmw":
        # ρ is coupled to the v_i and not unique; pick by sign, then by size
        good.sort(key=lambda p: (p.rho * rho_sign < 0, abs(p.rho), p.rho))
    elif len(good) > 1:
        raise ParameterError(f"underdetermined: {len(good)} admissible ω tuples")
    out = good[0]
    n = params.certificate.n if params.certificate else 2
    cert = check_generic(out, n)
    if not cert.ok:
        raise ParameterError(f"solved parameters fail genericity: {cert.reason}")
    return replace(out, certificate=cert)


__all__ = ["admissible_solutions", "consistency_constraints", "is_admissible", "solve_admissible"]
