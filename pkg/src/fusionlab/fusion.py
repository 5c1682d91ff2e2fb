"""Baxterized generators, the φ̄-chains and the consecutive-evaluation fusion procedure.

All four families share one code path.  Elements are right-multiplied by
factors in order, so ``x·A·B`` is computed as A then B acting on the
coordinates of x.  The live spectral variable is always called ``u``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra.element import Element, right_resolvent
from .algebra.model import AlgebraModel, is_zero_array
from .exact_arith import PoleError, Poly, RatFunc, rat, rat_str, rf_eval_regular
from .checks import Check
from .idempotents import idempotent_vector, jm_annihilator, prefix_idempotent
from .multipartitions import ADDITIVE
from .updown import UpDownTableau, all_tableaux, contents, p_sequence, step_weight

log = logging.getLogger(__name__)

U = RatFunc.variable("u")


def live() -> RatFunc:
    return U


def _safe_div(a, b):
    if isinstance(b, RatFunc):
        if b.is_zero():
            raise PoleError("coefficient has an identically vanishing denominator")
        return a / b
    if b == 0:
        raise PoleError("coefficient denominator vanishes at the given arguments")
    return a / b


def _names(model: AlgebraModel, i: int):
    gen = f"S{i}" if model.variant in ADDITIVE else f"T{i}"
    return gen, f"E{i}"


def _has_e(model) -> bool:
    return model.variant in ("bmw", "nw")


# -- Baxterized generators and Q/R factors -------------------------------------
def baxterized_terms(model: AlgebraModel, i: int, u, v) -> list:
    """[(coefficient, letter or None)] of T_i(u,v), S_i(u,v) or their Hecke-quotient versions."""
    p = model.params
    gen, e = _names(model, i)
    if model.variant in ("bmw", "hecke"):
        q = rat(p.q)
        z = q - 1 / q
        terms = [(rat(1), gen), (_safe_div(z * u, v - u), None)]
        if model.variant == "bmw":
            terms.append((_safe_div(z * u, u + rat(p.rho) * q * v), e))
    else:
        terms = [(rat(1), gen), (_safe_div(rat(1), v - u), None)]
        if model.variant == "nw":
            terms.append((-_safe_div(rat(1), v - u + rat(p.omega[0]) / 2 - 1), e))
    return terms


def q_factor_terms(model: AlgebraModel, i: int, u, v) -> list:
    """[(coefficient, letter or None)] of Q_i(u,v;c), R_i(u,v;c) or the Hecke-quotient versions."""
    p = model.params
    c = rat(p.c)
    gen, e = _names(model, i)
    if model.variant in ("bmw", "hecke"):
        q = rat(p.q)
        z = q - 1 / q
        if model.variant == "bmw":
            rho = rat(p.rho)
            return [(rat(1), gen), (_safe_div(z, c * u * v / rho - 1), None), (_safe_div(z, 1 + q * c * u * v), e)]
        return [(rat(1), gen), (_safe_div(z, c * u * v - 1), None)]
    terms = [(rat(1), gen), (_safe_div(rat(1), u + v + c), None)]
    if model.variant == "nw":
        terms.append((-_safe_div(rat(1), u + v), e))
    return terms


def apply_terms(model: AlgebraModel, x: Element, terms, side: str = "right") -> Element:
    acc = None
    for coef, letter in terms:
        if isinstance(coef, RatFunc) and coef.is_zero() or (not isinstance(coef, RatFunc) and coef == 0):
            continue
        part = x if letter is None else x.apply(model.op(side, letter))
        part = part.scale(coef)
        acc = part if acc is None else acc + part
    return acc


def baxterized(model: AlgebraModel, i: int, u, v, variant: str | None = None) -> Element:
    return apply_terms(model, Element.one(model), baxterized_terms(model, i, u, v))


def q_factor(model: AlgebraModel, i: int, u, v, params=None, variant: str | None = None) -> Element:
    return apply_terms(model, Element.one(model), q_factor_terms(model, i, u, v))


def unitarity_function(model: AlgebraModel, u, v):
    """f(u,v) for the multiplicative families, g(u,v) for the additive ones."""
    if model.multiplicative:
        q2 = rat(model.params.q) ** 2
        return _safe_div((u - q2 * v) * (u - v / q2), (u - v) * (u - v))
    return _safe_div((u - v + 1) * (u - v - 1), (u - v) * (u - v))


# -- φ̄-chains -----------------------------------------------------------------
def first_numerator(model: AlgebraModel, u, x_times: Element, x: Element) -> Element:
    """x·N(u, X) where N is cuX − ρ, cuX − 1 or u + X + c; ``x_times`` is x·X."""
    p = model.params
    c = rat(p.c)
    if model.variant == "bmw":
        return x_times.scale(c * u) - x.scale(rat(p.rho))
    if model.variant == "hecke":
        return x_times.scale(c * u) - x
    return x.scale(u + c) + x_times


def scalar_numerator(model: AlgebraModel, u, ck):
    """N(u, c_k): the scalar denominator of each evaluation step."""
    p = model.params
    c = rat(p.c)
    if model.variant == "bmw":
        return c * u * ck - rat(p.rho)
    if model.variant == "hecke":
        return c * u * ck - 1
    return u + ck + c


def cyclotomic_poly(model: AlgebraModel) -> Poly:
    return Poly.from_roots([rat(x) for x in model.params.v])


def apply_phi_first(model: AlgebraModel, x: Element, *, k: int = 1, annihilator: Poly | None = None, cyclotomic_prefactor: bool = True) -> Element:
    """x·m(u)·N(u,X_k)/(u − X_k), with m the cyclotomic polynomial (k=1) or ``annihilator``.

    With ``cyclotomic_prefactor`` the m(u) factor is kept (the φ̄ normalization);
    otherwise the result is x·N(u,X_k)/(u − X_k).
    """
    m = annihilator if annihilator is not None else cyclotomic_poly(model)
    op = model.op("right", f"J{k}")
    y = right_resolvent(x, op, m, times_m=True)
    out = first_numerator(model, U, y.apply(op), y)
    if not cyclotomic_prefactor:
        out = out.scale(RatFunc("u", Poly.const(mpq(1)), m))
    return out


def apply_phi_chain(model: AlgebraModel, x: Element, cs, *, cyclotomic_prefactor: bool = True) -> Element:
    """x·φ̄_k(c_1,…,c_{k−1},u) with k = len(cs) + 1 (or x·φ_k without the prefactor)."""
    k = len(cs) + 1
    for i in range(k - 1, 0, -1):
        x = apply_terms(model, x, q_factor_terms(model, i, cs[i - 1], U))
    x = apply_phi_first(model, x, cyclotomic_prefactor=cyclotomic_prefactor)
    for i in range(1, k):
        x = apply_terms(model, x, baxterized_terms(model, i, cs[i - 1], U))
    return x


def phi_chain(model: AlgebraModel, cs, u=None, params=None, variant=None, cyclotomic_prefactor: bool = True) -> Element:
    return apply_phi_chain(model, Element.one(model), [rat(c) for c in cs], cyclotomic_prefactor=cyclotomic_prefactor)


# -- the lemma ----------------------------------------------------------------
def lemma_check(model: AlgebraModel, prefix: UpDownTableau, params=None, variant=None) -> bool:
    """E_U·φ_k(c_1..c_{k−1},u)·∏ f(u,c_r)⁻¹ == E_U·N(u,X_k)/(u − X_k), k = |U| + 1, over Q(u)."""
    k = prefix.n + 1
    cs = contents(prefix, model.params, model.variant)
    eu = prefix_idempotent(model, prefix) if prefix.n else model.unit()
    x = Element.from_vector(model, eu)
    lhs = apply_phi_chain(model, x, cs, cyclotomic_prefactor=False)
    scale = RatFunc.const("u", mpq(1))
    for cr in cs:
        scale = scale / unitarity_function(model, U, cr)
    lhs = lhs.scale(scale)
    rhs = apply_phi_first(model, x, k=k, annihilator=jm_annihilator(model, k), cyclotomic_prefactor=False)
    return lhs.equals(rhs)


# -- scalar identities --------------------------------------------------------
def _bivariate():
    """u over Q(w): w stands for the content c_{n−1}."""
    one_w = RatFunc.const("w", mpq(1))
    u = RatFunc.variable("u", one=one_w)
    w = RatFunc.const("u", RatFunc.variable("w"))
    K = lambda x: RatFunc.const("u", RatFunc.const("w", rat(x)))
    return u, w, K


def scalar_identities_check(params, variant: str) -> list[Check]:
    """The two coefficient identities closing the lemma's induction, symbolic in u and c_{n−1}."""
    u, w, K = _bivariate()
    out = []
    if variant == "bmw":
        q, rho, c = K(params.q), K(params.rho), K(params.c)
        lhs1 = 1 / (1 + q * c * u * w) * (c * u * u * w - c * u) / w
        rhs1 = u / (u + rho * q * w) * (rho * w - c * u) / w
        closed = u / (q * w)
        out.append(Check("E_U E_{n-1} X_{n-1} coefficient", "lemma proof, c = −q⁻¹", lhs1 == rhs1 == closed, {"both_sides": "q⁻¹u/c_{n−1}"}))
        lhs2 = (c * u * u - rho) / w + 1 / (1 + q * c * u * w) * (rho - rho * u * w) / w
        rhs2 = u / (u + rho * q * w) * (c * u * u - rho * u * w) / w
        out.append(Check("E_U E_{n-1} coefficient", "lemma proof, c = −q⁻¹", (lhs2 - rhs2).is_zero(), {"difference": "0" if (lhs2 - rhs2).is_zero() else repr(lhs2 - rhs2)}))
    elif variant == "nw":
        om0, c = K(params.omega[0]), K(params.c)
        lhs1 = (-u - w) / (w + u)
        rhs1 = (u - w + c) / (w - u + om0 / 2 - 1)
        out.append(Check("E_u E_{n-1} X_{n-1} coefficient", "lemma proof, c = 1 − ω0/2", lhs1 == rhs1 == K(-1), {"both_sides": "-1"}))
        lhs2 = (c + 2 * u) + (-(c + u) * (w + u)) / (w + u)
        rhs2 = u * (-u + w - c) / (w - u + om0 / 2 - 1)
        out.append(Check("E_u E_{n-1} coefficient", "lemma proof, c = 1 − ω0/2", (lhs2 - rhs2).is_zero(), {"difference": "0" if (lhs2 - rhs2).is_zero() else repr(lhs2 - rhs2)}))
    return out


# -- prefactors and the fusion procedure -----------------------------------------
def _step_data(T: UpDownTableau, params, variant, literal: bool = False):
    cs = contents(T, params, variant)
    ps = p_sequence(T)
    ws = [step_weight(T.prefix(k), T.steps[k], params, variant, literal=literal) for k in range(T.n)]
    return cs, ps, ws


def _cyclo_rf(params) -> RatFunc:
    return RatFunc("u", Poly.from_roots([rat(x) for x in params.v]))


def prefactor_regularity(T: UpDownTableau, params, variant: str, model: AlgebraModel | None = None, *, literal: bool = False) -> tuple[bool, list]:
    """Each step's scalar prefactor is regular at u = c_k with value 1."""
    cs, ps, ws = _step_data(T, params, variant, literal)
    mult = variant not in ADDITIVE
    cyc = _cyclo_rf(params)
    q2 = rat(params.q) ** 2 if mult else None
    diags, ok = [], True
    for k in range(T.n):
        f = RatFunc.const("u", 1 / ws[k]) * cyc * (U - cs[k]) ** (ps[k] - 1)
        for cr in cs[:k]:
            if mult:
                f = f * (U - q2 * cr) * (U - cr / q2) / ((U - cr) * (U - cr))
            else:
                f = f * (U - cr + 1) * (U - cr - 1) / ((U - cr) * (U - cr))
        try:
            val = rf_eval_regular(f, cs[k])
            good = val == 1
            diags.append({"step": k + 1, "value": rat_str(val)})
        except PoleError as exc:
            good = False
            diags.append({"step": k + 1, "pole": str(exc)})
        ok = ok and good
    return ok, diags


def fused_idempotent(model: AlgebraModel, T: UpDownTableau, params=None, variant=None, diagnostics: list | None = None, *, literal: bool = False) -> Element:
    """Consecutive evaluation at u = c_1, …, c_n, the global 1/f(T) spread over the steps."""
    cs, ps, ws = _step_data(T, model.params, model.variant, literal)
    P = Element.one(model)
    for k in range(T.n):
        x = apply_phi_chain(model, P, cs[:k])
        pref = (U - cs[k]) ** ps[k] / scalar_numerator(model, U, cs[k]) * (1 / ws[k])
        diag = {"step": k + 1, "p": ps[k], "content": rat_str(cs[k]), "step_weight": rat_str(ws[k])}
        P = x.scale(pref).eval_regular(cs[k], diag)
        if diagnostics is not None:
            diagnostics.append(diag)
    return P


@dataclass
class TableauVerdict:
    tableau: str
    contents: list
    p_sequence: list
    weight: str
    equal: bool
    prefactors_ok: bool
    steps: list = field(default_factory=list)
    prefactor_values: list = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.equal and self.prefactors_ok and self.error is None

    def as_dict(self) -> dict:
        return {
            "tableau": self.tableau,
            "contents": self.contents,
            "p_sequence": self.p_sequence,
            "weight": self.weight,
            "fused_equals_spectral": self.equal,
            "prefactors_regular_one": self.prefactors_ok,
            "steps": self.steps,
            "prefactor_values": self.prefactor_values,
            "error": self.error,
        }


@dataclass
class FusionReport:
    variant: str
    d: int
    n: int
    c: str
    verdicts: list
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def failures(self) -> list:
        return [v.tableau for v in self.verdicts if not v.ok]


def verify_tableau(model: AlgebraModel, T: UpDownTableau) -> TableauVerdict:
    p = model.params
    cs, ps, ws = _step_data(T, p, model.variant)
    w = rat(1)
    for x in ws:
        w *= x
    pre_ok, pre_vals = prefactor_regularity(T, p, model.variant)
    verdict = TableauVerdict(str(T), [rat_str(c) for c in cs], ps, rat_str(w), False, pre_ok, prefactor_values=pre_vals)
    try:
        fused = fused_idempotent(model, T, diagnostics=verdict.steps)
        verdict.equal = is_zero_array(fused.vector - idempotent_vector(model, T))
    except PoleError as exc:
        verdict.error = str(exc)
    return verdict


def fusion_verify(model: AlgebraModel, params=None, variant=None) -> FusionReport:
    t0 = time.perf_counter()
    verdicts = [verify_tableau(model, T) for T in all_tableaux(model.d, model.n, model.variant)]
    rep = FusionReport(model.variant, model.d, model.n, rat_str(model.params.c), verdicts, time.perf_counter() - t0)
    log.info("fusion %s d=%d n=%d c=%s: %d tableaux, %d failures", model.variant, model.d, model.n, rep.c, len(verdicts), len(rep.failures()))
    return rep


def unitarity_check(model: AlgebraModel, i: int = 1, samples=None) -> Check:
    """T_i(u,v)·T_i(v,u) = f(u,v) (or the S_i/g analogue) with u live and v sampled."""
    samples = samples or [rat(2), rat(-7, 2), rat(5, 3), rat(11, 4), rat(-1, 5), rat(13, 7), rat(-9, 4)]
    bad = []
    for v in samples:
        lhs = apply_terms(model, baxterized(model, i, U, v), baxterized_terms(model, i, v, U))
        rhs = Element.one(model).scale(unitarity_function(model, U, v))
        if not lhs.equals(rhs):
            bad.append(rat_str(v))
    return Check(
        f"unitarity i={i}",
        "T_i(u,v)T_i(v,u) = f(u,v)" if model.multiplicative else "S_i(u,v)S_i(v,u) = g(u,v)",
        not bad,
        {"v_samples": [rat_str(v) for v in samples], "failures": bad, "v_degree_bound": 6},
    )


__all__ = [
    "FusionReport",
    "apply_phi_chain",
    "baxterized",
    "fused_idempotent",
    "fusion_verify",
    "lemma_check",
    "phi_chain",
    "prefactor_regularity",
    "q_factor",
    "scalar_identities_check",
    "unitarity_check",
]
