"""Command-line harness: build models, run verification suites, write JSON reports."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field

from .algebra.groebner import BudgetExceeded
from .algebra.model import DimensionMismatch, build_model, expected_dimension
from .algebra.params import ParameterError, ParamSet, make_params
from .algebra.relations import faithfulness_check, jm_checks, verify_relations
from .checks import Check
from .exact_arith import PoleError, ZeroDivisionInField, parse_rat, rat_str
from .fusion import fusion_verify, lemma_check, scalar_identities_check, unitarity_check
from .idempotents import branching_equivalence, rank_by_shape, verify_idempotent_system
from .multipartitions import HECKE_TYPE, VARIANTS, size
from .updown import all_tableaux, contents, p_range, p_sequence, shapes_for, weight

log = logging.getLogger("fusionlab")

SCHEMA_VERSION = 1
SUITES = ("params", "relations", "combinatorics", "idempotents", "scalars", "lemma", "fusion")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_FATAL = 0, 1, 2, 3

# variant -> d -> largest n
BUDGET = {
    "bmw": {1: 3, 2: 2},
    "nw": {1: 3, 2: 2},
    "hecke": {1: 3, 2: 3, 3: 3},
    "deg-hecke": {1: 3, 2: 3, 3: 3},
}


class ConfigError(ValueError):
    pass


def budget_table() -> dict:
    """The default table, overridden by FUSIONLAB_BUDGET.

    The variable holds comma-separated ``variant:d:max_n`` entries, or ``*``
    to lift every limit.
    """
    raw = os.environ.get("FUSIONLAB_BUDGET")
    if not raw:
        return BUDGET
    if raw.strip() == "*":
        return None
    table = {v: dict(b) for v, b in BUDGET.items()}
    for entry in raw.split(","):
        try:
            variant, d, n = entry.strip().split(":")
            table.setdefault(variant, {})[int(d)] = int(n)
        except ValueError as exc:
            raise ConfigError(f"bad FUSIONLAB_BUDGET entry {entry!r}; expected variant:d:max_n") from exc
    return table


@dataclass
class RunConfig:
    variant: str
    d: int
    n: int
    seed: int = 7
    suites: tuple = SUITES
    rho_sign: int = 1
    c: object = None
    out: str | None = None
    timing: bool = False

    def validate(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        if self.d < 1 or self.n < 1:
            raise ConfigError("d and n must be positive")
        if self.c is not None and self.variant not in HECKE_TYPE:
            raise ConfigError(f"--c applies only to hecke variants; c is fixed for {self.variant}")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites {sorted(unknown)}")
        table = budget_table()
        if table is not None:
            limit = table.get(self.variant, {}).get(self.d)
            if limit is None or self.n > limit:
                raise ConfigError(f"(d={self.d}, n={self.n}) exceeds the budget for {self.variant} (max n: {limit})")

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "d": self.d,
            "n": self.n,
            "seed": self.seed,
            "suites": list(self.suites),
            "rho_sign": "+" if self.rho_sign > 0 else "-",
            "c": None if self.c is None else rat_str(self.c),
        }


@dataclass
class Report:
    config: RunConfig
    params: ParamSet | None = None
    suites: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    fatal: str | None = None

    def add(self, name: str, checks: list[Check]):
        self.suites.append({"name": name, "checks": [c.as_dict() for c in checks]})

    @property
    def failed(self) -> int:
        return sum(c["verdict"] != "pass" for s in self.suites for c in s["checks"])

    def as_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.as_dict(),
            "params": self.params.as_dict() if self.params else None,
            "suites": self.suites,
            "summary": {"checks": sum(len(s["checks"]) for s in self.suites), "failed": self.failed, "fatal": self.fatal},
            # wall-clock numbers would break byte-identical reports; opt in with --timing
            "timing": {k: round(v, 3) for k, v in self.timing.items()} if self.config.timing else None,
        }
        return out


def emit_report(report: Report, path: str | None = None) -> str:
    text = json.dumps(report.as_dict(), indent=2, ensure_ascii=False, sort_keys=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# -- suites ---------------------------------------------------------------------
def _params_suite(cfg: RunConfig, params: ParamSet) -> list[Check]:
    cert = params.certificate
    out = [Check("genericity", "genericity conditions", bool(cert and cert.ok), cert.as_dict() if cert else {})]
    if cfg.variant in ("bmw", "nw") and cfg.d >= 2:
        from .algebra.admissible import is_admissible

        vals = {"rho": rat_str(params.rho), "delta": [rat_str(x) for x in params.delta]} if cfg.variant == "bmw" else {"omega": [rat_str(x) for x in params.omega]}
        out.append(Check("admissibility", "E_1, E_1X_1, …, E_1X_1^(d−1) independent", is_admissible(params), vals))
    return out


def _closed_form_dimension(variant: str, d: int, n: int) -> int:
    if variant in HECKE_TYPE:
        return d**n * math.factorial(n)
    return d**n * math.prod(range(1, 2 * n, 2))


def _combinatorics_suite(cfg: RunConfig, params: ParamSet) -> list[Check]:
    ts = all_tableaux(cfg.d, cfg.n, cfg.variant)
    per_shape = {}
    for t in ts:
        per_shape[t.shape] = per_shape.get(t.shape, 0) + 1
    squares = sum(m * m for m in per_shape.values())
    closed = _closed_form_dimension(cfg.variant, cfg.d, cfg.n)
    out = [Check("dimension oracle", "Σ_λ (#tableaux of shape λ)² = closed form", squares == closed, {"square_sum": squares, "closed_form": closed})]
    nonzero_p = [str(t) for t in ts if size(t.shape) == cfg.n and any(p_sequence(t))]
    lo, hi = p_range(cfg.d, cfg.n, cfg.variant)
    out.append(Check("p-sequence vanishes for f=0", "p_k = 0 when only boxes are added", not nonzero_p, {"failures": nonzero_p, "observed_p_range": [lo, hi]}))
    zero_w = [str(t) for t in ts if weight(t, params, cfg.variant) == 0]
    out.append(Check("weights nonzero", "f(T) ≠ 0, g(t) ≠ 0 under generic parameters", not zero_w, {"tableaux": len(ts), "failures": zero_w}))
    cvs = {tuple(contents(t, params, cfg.variant)) for t in ts}
    out.append(Check("content vectors distinct", "T is determined by its contents", len(cvs) == len(ts), {"tableaux": len(ts), "distinct": len(cvs)}))
    return out


def _relations_suite(model) -> list[Check]:
    expected = expected_dimension(model.variant, model.d, model.n)
    out = [Check("dimension", "dimension equals the tableau-count oracle", model.dimension == expected, {"dimension": model.dimension, "expected": expected})]
    out += verify_relations(model)
    out += jm_checks(model)
    out.append(faithfulness_check(model))
    return out


def _idempotents_suite(model) -> list[Check]:
    out = verify_idempotent_system(model)
    out.append(rank_by_shape(model))
    bad = [str(t) for t in all_tableaux(model.d, model.n, model.variant) if not branching_equivalence(model, t)]
    out.append(Check("branching equivalence", "inductive and regular-limit forms of E_T agree", not bad, {"failures": bad}))
    return out


def _scalars_suite(model) -> list[Check]:
    out = [unitarity_check(model, i) for i in range(1, model.n)]
    out += scalar_identities_check(model.params, model.variant)
    return out


def _lemma_suite(model) -> list[Check]:
    out = []
    for k in range(model.n):
        prefixes = sorted({t.prefix(k) for t in all_tableaux(model.d, model.n, model.variant)}, key=str)
        bad = [str(U) for U in prefixes if not lemma_check(model, U)]
        out.append(Check(f"lemma k={k + 1}", "E_U·φ_k·∏f(u,c_r)⁻¹ = E_U·N(u,X_k)/(u − X_k)", not bad, {"prefixes": len(prefixes), "failures": bad}))
    return out


def _fusion_suite(model) -> list[Check]:
    rep = fusion_verify(model)
    anchor = "fused idempotent equals the spectral idempotent"
    return [Check(f"fusion {v.tableau}", anchor, v.ok, v.as_dict()) for v in rep.verdicts]


def run(cfg: RunConfig) -> tuple[int, Report]:
    """Execute the selected suites in dependency order; exit code and report."""
    report = Report(cfg)
    try:
        cfg.validate()
    except ConfigError as exc:
        report.fatal = f"config: {exc}"
        return EXIT_CONFIG, report
    selected = [s for s in SUITES if s in cfg.suites]
    t0 = time.perf_counter()
    try:
        params = make_params(cfg.variant, cfg.d, cfg.seed, n=max(cfg.n, 2), rho_sign=cfg.rho_sign, c=cfg.c)
    except ParameterError as exc:
        report.fatal = f"params: {exc}"
        return EXIT_CONFIG, report
    report.params = params
    report.timing["params"] = time.perf_counter() - t0
    model = None
    try:
        for name in selected:
            t0 = time.perf_counter()
            if name == "params":
                report.add(name, _params_suite(cfg, params))
            elif name == "combinatorics":
                report.add(name, _combinatorics_suite(cfg, params))
            else:
                if model is None:
                    model = build_model(cfg.variant, cfg.d, cfg.n, params)
                    report.timing["build"] = model.build_seconds
                suite = {
                    "relations": _relations_suite,
                    "idempotents": _idempotents_suite,
                    "scalars": _scalars_suite,
                    "lemma": _lemma_suite,
                    "fusion": _fusion_suite,
                }[name]
                report.add(name, suite(model))
            report.timing[name] = time.perf_counter() - t0
            log.info("suite %s done in %.2fs", name, report.timing[name])
    except (PoleError, DimensionMismatch, BudgetExceeded, ZeroDivisionInField) as exc:
        report.fatal = f"{type(exc).__name__}: {exc}"
        return EXIT_FATAL, report
    return (EXIT_OK if report.failed == 0 else EXIT_FAIL), report


# -- enumerate / params ---------------------------------------------------------
def enumerate_dump(variant: str, d: int, n: int, seed: int = 7, rho_sign: int = 1, c=None) -> dict:
    params = make_params(variant, d, seed, n=max(n, 2), rho_sign=rho_sign, c=c)
    shapes = []
    for shape in shapes_for(variant, d, n):
        ts = [t for t in all_tableaux(d, n, variant) if t.shape == shape.shape]
        shapes.append({
            "shape": str(shape),
            "tableaux": [
                {
                    "tableau": str(t),
                    "contents": [rat_str(x) for x in contents(t, params, variant)],
                    "p_sequence": p_sequence(t),
                    "weight": rat_str(weight(t, params, variant)),
                }
                for t in ts
            ],
        })
    return {"schema_version": SCHEMA_VERSION, "variant": variant, "d": d, "n": n, "params": params.as_dict(), "shapes": shapes}


def _parse_c(text):
    if text is None:
        return None
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fusionlab", description="Exact checks of fusion-built idempotents in cyclotomic BMW and Nazarov-Wenzl algebras and their Hecke quotients.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("verify", "enumerate", "params"):
        p = sub.add_parser(name)
        p.add_argument("--variant", choices=VARIANTS, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--rho-sign", choices=("+", "-"), default="+")
        p.add_argument("--c", type=_parse_c, default=None, metavar="NUM/DEN")
        p.add_argument("--out", default=None, metavar="PATH")
        if name == "verify":
            p.add_argument("--suite", action="append", choices=SUITES + ("all",), help="repeatable; default all")
            p.add_argument("--timing", action="store_true", help="record wall-clock timings (reports stop being byte-identical)")
    return ap


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    rho_sign = 1 if args.rho_sign == "+" else -1
    try:
        if args.command == "verify":
            suites = SUITES if not args.suite or "all" in args.suite else tuple(args.suite)
            cfg = RunConfig(args.variant, args.d, args.n, args.seed, suites, rho_sign, args.c, args.out, args.timing)
            code, report = run(cfg)
            text = emit_report(report, args.out)
            if not args.out:
                sys.stdout.write(text)
            for s in report.suites:
                for c in s["checks"]:
                    if c["verdict"] != "pass":
                        print(f"FAIL {s['name']}: {c['id']}", file=sys.stderr)
            if report.fatal:
                print(f"fatal: {report.fatal}", file=sys.stderr)
            return code
        cfg = RunConfig(args.variant, args.d, args.n, args.seed, (), rho_sign, args.c, args.out)
        cfg.validate()
        if args.command == "enumerate":
            doc = enumerate_dump(args.variant, args.d, args.n, args.seed, rho_sign, args.c)
        else:
            doc = {"schema_version": SCHEMA_VERSION, "params": make_params(args.variant, args.d, args.seed, n=max(args.n, 2), rho_sign=rho_sign, c=args.c).as_dict()}
        _write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.out)
        return EXIT_OK
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PoleError, DimensionMismatch, BudgetExceeded) as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
