"""Parameter specializations, genericity certificates and admissibility solving."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field, replace

from ..exact_arith import Rational, rat, rat_str
from ..multipartitions import ADDITIVE, MULTIPLICATIVE, VARIANTS

log = logging.getLogger(__name__)


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class GenericityCertificate:
    ok: bool
    n: int
    conditions_checked: int
    reason: str | None = None

    def as_dict(self):
        return {"ok": self.ok, "n": self.n, "conditions_checked": self.conditions_checked, "reason": self.reason}


@dataclass(frozen=True)
class ParamSet:
    variant: str
    d: int
    v: tuple
    q: Rational | None = None
    rho: Rational | None = None
    delta: tuple = ()
    omega: tuple = ()
    c: Rational | None = None
    certificate: GenericityCertificate | None = field(default=None, compare=False)

    def with_c(self, c) -> ParamSet:
        out = replace(self, c=rat(c))
        if self.certificate is not None:
            out = replace(out, certificate=check_generic(out, self.certificate.n))
        return out

    def as_dict(self) -> dict:
        out = {"variant": self.variant, "d": self.d, "v": [rat_str(x) for x in self.v]}
        if self.q is not None:
            out["q"] = rat_str(self.q)
        if self.rho is not None:
            out["rho"] = rat_str(self.rho)
        if self.delta:
            out["delta"] = [rat_str(x) for x in self.delta]
        if self.omega:
            out["omega"] = [rat_str(x) for x in self.omega]
        if self.c is not None:
            out["c"] = rat_str(self.c)
        if self.certificate is not None:
            out["genericity"] = self.certificate.as_dict()
        return out


def bmw_delta0(q, rho) -> Rational:
    q, rho = rat(q), rat(rho)
    return (1 / q + 1 / rho) * (rho * q - 1) / (q - 1 / q)


def default_c(variant: str, q=None, omega=None) -> Rational | None:
    if variant == "bmw":
        return -1 / rat(q)
    if variant == "nw":
        return 1 - rat(omega[0]) / 2
    return None


def check_generic(params: ParamSet, n: int) -> GenericityCertificate:
    """Exact check of the genericity conditions over the finite range |r| < 2n."""
    checks = 0
    v = [rat(x) for x in params.v]
    rng = range(-2 * n + 1, 2 * n)
    if len(set(v)) != len(v) or any(x == 0 for x in v):
        return GenericityCertificate(False, n, checks, "v_i must be nonzero and pairwise distinct")
    if params.variant in MULTIPLICATIVE:
        q = rat(params.q)
        if q == 0 or q * q == 1:
            return GenericityCertificate(False, n, checks, "q - q⁻¹ must be nonzero")
        for r in rng:
            checks += 1
            if r != 0 and q ** (2 * r) == 1:
                return GenericityCertificate(False, n, checks, f"q^{2 * r} = 1")
        for i, vi in enumerate(v, 1):
            for j, vj in enumerate(v, 1):
                if i == j:
                    continue
                for r in rng:
                    checks += 2
                    if vi / vj == q ** (2 * r):
                        return GenericityCertificate(False, n, checks, f"v{i}v{j}⁻¹ = q^{2 * r}")
                    if vi * vj == q ** (2 * r):
                        return GenericityCertificate(False, n, checks, f"v{i}v{j} = q^{2 * r}")
        if params.variant in ("bmw", "hecke"):
            # the Hecke quotient inherits the BMW conditions
            for i, vi in enumerate(v, 1):
                for r in rng:
                    checks += 1
                    if vi == q**r or vi == -(q**r):
                        return GenericityCertificate(False, n, checks, f"v{i} = ±q^{r}")
    elif params.variant in ADDITIVE:
        for i, vi in enumerate(v, 1):
            for j, vj in enumerate(v, 1):
                if i < j:
                    for name, val in ((f"v{i} + v{j}", vi + vj), (f"v{i} - v{j}", vi - vj)):
                        checks += 1
                        if val.denominator == 1 and abs(val) < 2 * n:
                            return GenericityCertificate(False, n, checks, f"{name} = {int(val)}")
            checks += 1
            if (2 * vi).denominator == 1 and abs(2 * vi) < 2 * n:
                return GenericityCertificate(False, n, checks, f"2v{i} = {int(2 * vi)}")
    else:
        raise ParameterError(f"unknown variant {params.variant!r}")
    if params.c is not None:
        reason, extra = _step_denominators(params, n)
        checks += extra
        if reason:
            return GenericityCertificate(False, n, checks, reason)
    return GenericityCertificate(True, n, checks)


def _step_denominators(params: ParamSet, n: int):
    """The fusion step divides by N(u, c_k) at u = c_k; it must not vanish for any content."""
    from ..updown import content_set

    c = rat(params.c)
    if c == 0:
        return "c must be nonzero", 1
    checks = 1
    for k in range(1, n + 1):
        for ck in content_set(k, params.d, n, params, params.variant):
            checks += 1
            if params.variant == "bmw":
                bad = c * ck * ck == rat(params.rho)
            elif params.variant == "hecke":
                bad = c * ck * ck == 1
            else:
                bad = 2 * ck + c == 0
            if bad:
                return f"step denominator vanishes at content {rat_str(ck)} (k={k})", checks
    return None, checks


_Q_CHOICES = [rat(2), rat(3), rat(3, 2), rat(5, 2), rat(4, 3), rat(5, 3)]


def _random_rational(rng: random.Random, lo: int = 2, hi: int = 9, dens=(1, 2, 3, 5, 7)) -> Rational:
    sign = rng.choice((1, -1))
    return sign * rat(rng.randint(lo, hi), rng.choice(dens))


def make_params(variant: str, d: int, seed: int = 7, *, n: int = 4, rho_sign: int = 1, c=None, retries: int = 200) -> ParamSet:
    """Seeded pseudo-random generic parameters with all dependent values filled in."""
    if variant not in VARIANTS:
        raise ParameterError(f"unknown variant {variant!r}")
    if d < 1:
        raise ParameterError("d must be at least 1")
    rng = random.Random(f"{variant}:{d}:{seed}")
    for _ in range(retries):
        if variant in MULTIPLICATIVE:
            q = rng.choice(_Q_CHOICES)
            v = tuple(_random_rational(rng) for _ in range(d))
            trial = ParamSet(variant, d, v, q=q)
        else:
            # non-half-integers keep 2v_i and v_i ± v_j off the integers
            v = tuple(_random_rational(rng, 1, 9, dens=(3, 5, 7)) for _ in range(d))
            trial = ParamSet(variant, d, v)
        cert = check_generic(trial, n)
        if not cert.ok:
            continue
        trial = replace(trial, certificate=cert)
        if variant == "bmw":
            if d == 1:
                rho = rho_sign * trial.v[0]
                trial = replace(trial, rho=rho, delta=(bmw_delta0(q, rho),), c=default_c("bmw", q))
            else:
                from .admissible import solve_admissible

                try:
                    trial = solve_admissible(trial, rho_sign=rho_sign)
                except ParameterError as exc:
                    log.debug("seed candidate rejected: %s", exc)
                    continue
        elif variant == "nw":
            if d == 1:
                omega = (2 * trial.v[0] + 1,)
                trial = replace(trial, omega=omega, c=default_c("nw", omega=omega))
            else:
                from .admissible import solve_admissible

                trial = solve_admissible(trial)
        else:
            trial = replace(trial, c=rat(1) if c is None else rat(c))
        cert = check_generic(trial, n)
        if not cert.ok:
            continue
        trial = replace(trial, certificate=cert)
        if c is not None and variant in ("bmw", "nw") and rat(c) != trial.c:
            raise ParameterError(f"c is fixed for {variant}; override only applies to Hecke variants")
        return trial
    raise ParameterError(f"seed {seed} exhausted {retries} retries without a generic tuple")
