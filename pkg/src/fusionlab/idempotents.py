"""Primitive idempotents E_T from Jucys-Murphy eigenvalues, and the identities they satisfy."""

from __future__ import annotations

import logging

import numpy as np

from .algebra.element import Element, right_resolvent
from .algebra.model import AlgebraModel, is_zero_array, zeros
from .checks import Check
from .exact_arith import Poly, PoleError, RatFunc
from .multipartitions import ADD, additions_only, box_content, neighbors
from .updown import UpDownTableau, all_tableaux, content_set, contents

log = logging.getLogger(__name__)


def _contents(model: AlgebraModel, T: UpDownTableau):
    return contents(T, model.params, model.variant)


def _factors(model: AlgebraModel, T: UpDownTableau, upto: int | None = None):
    """(k, c, c_k) for every linear factor (X_k − c)/(c_k − c) of E_T, k ≤ upto."""
    upto = T.n if upto is None else upto
    cs = _contents(model, T)
    out = []
    for k in range(1, upto + 1):
        for c in content_set(k, model.d, model.n, model.params, model.variant):
            if c == cs[k - 1]:
                continue
            out.append((k, c, cs[k - 1]))
    return out


def apply_spectral(model: AlgebraModel, T: UpDownTableau, block: np.ndarray, side: str = "left", upto=None) -> np.ndarray:
    """E_T (side='left') or ·E_T (side='right') applied to every row of an (m, D) coordinate block."""
    for k, c, ck in _factors(model, T, upto):
        op = model.op(side, f"J{k}")
        block = (op.apply(block) - block * c) * (1 / (ck - c))
    return block


def idempotent_vector(model: AlgebraModel, T: UpDownTableau, upto: int | None = None) -> np.ndarray:
    key = ("E", T.steps, upto)
    if key not in model._cache:
        model._cache[key] = apply_spectral(model, T, model.unit().reshape(1, -1), upto=upto)[0]
    return model._cache[key]


def primitive_idempotent(model: AlgebraModel, T: UpDownTableau, params=None) -> Element:
    """E_T = ∏_k ∏_{c ∈ R(k), c ≠ c_k} (X_k − c)/(c_k − c)."""
    if T.d != model.d or T.n != model.n:
        raise ValueError(f"tableau for d={T.d}, n={T.n} used with a d={model.d}, n={model.n} model")
    return Element.from_vector(model, idempotent_vector(model, T))


def prefix_idempotent(model: AlgebraModel, U: UpDownTableau) -> np.ndarray:
    """E_U for a shorter tableau, computed inside the n-strand model."""
    full = next(t for t in all_tableaux(model.d, model.n, model.variant) if t.prefix(U.n) == U)
    return idempotent_vector(model, full, upto=U.n)


def tableaux(model: AlgebraModel):
    return all_tableaux(model.d, model.n, model.variant)


def verify_idempotent_system(model: AlgebraModel, params=None) -> list[Check]:
    ts = tableaux(model)
    D = model.dimension
    vecs = np.empty((len(ts), D), dtype=object)
    for i, t in enumerate(ts):
        vecs[i] = idempotent_vector(model, t)
    checks = []

    # products E_S·E_T for all pairs, one block per S
    idem_bad, orth_bad = [], []
    for i, s in enumerate(ts):
        rows = list(range(len(ts)))
        block = vecs
        for k, c, ck in _factors(model, s):
            block = (model.op("left", f"J{k}").apply(block) - block * c) * (1 / (ck - c))
            # rows already annihilated stay zero; drop them
            keep = [r for r in range(len(rows)) if rows[r] == i or any(x != 0 for x in block[r])]
            if len(keep) < len(rows):
                rows = [rows[r] for r in keep]
                block = block[keep]
        for r, j in enumerate(rows):
            if j == i:
                if not is_zero_array(block[r] - vecs[i]):
                    idem_bad.append(str(s))
            elif not is_zero_array(block[r]):
                orth_bad.append((str(s), str(ts[j])))
    checks.append(Check("idempotency", "E_T² = E_T", not idem_bad, {"tableaux": len(ts), "failures": idem_bad}))
    checks.append(Check("orthogonality", "E_S·E_T = 0 for S ≠ T", not orth_bad, {"pairs": len(ts) * (len(ts) - 1), "failures": [list(p) for p in orth_bad[:10]]}))

    total = vecs.sum(axis=0) if len(ts) else zeros(D)
    checks.append(Check("completeness", "Σ_T E_T = 1", is_zero_array(total - model.unit()), {"terms": len(ts)}))

    eig_bad = []
    for i, t in enumerate(ts):
        block = vecs[i].reshape(1, -1)
        for k, ck in enumerate(_contents(model, t), 1):
            for side in ("left", "right"):
                if not is_zero_array(model.op(side, f"J{k}").apply(block) - block * ck):
                    eig_bad.append(f"{t} k={k} {side}")
    checks.append(Check("eigen-relations", "X_k E_T = E_T X_k = c(T|k) E_T", not eig_bad, {"failures": eig_bad}))

    br_bad, n_prefixes = [], 0
    if model.n >= 2:
        groups = {}
        for i, t in enumerate(ts):
            groups.setdefault(t.prefix(model.n - 1), []).append(i)
        n_prefixes = len(groups)
        for U, idx in groups.items():
            eu = prefix_idempotent(model, U)
            if not is_zero_array(eu - vecs[idx].sum(axis=0)):
                br_bad.append(str(U))
    checks.append(Check("branching", "E_U = Σ_{T ⊃ U} E_T", not br_bad, {"prefixes": n_prefixes, "failures": br_bad}))

    cvs = {tuple(_contents(model, t)) for t in ts}
    checks.append(Check("spectral-separation", "distinct tableaux have distinct content vectors", len(cvs) == len(ts), {"tableaux": len(ts), "distinct": len(cvs)}))
    return checks


RANK_CHECK_MAX_DIM = 64


def rank_by_shape(model: AlgebraModel) -> Check:
    """rank(E_T) equals the number of tableaux of T's final shape (the irreducible's dimension)."""
    from .algebra.model import identity
    from .algebra.relations import exact_rank

    ts = tableaux(model)
    if model.dimension > RANK_CHECK_MAX_DIM:
        return Check("rank-by-shape", "rank(E_T) = dim of the irreducible of shape(T)", True, {"skipped": f"dimension {model.dimension} > {RANK_CHECK_MAX_DIM}"})
    per_shape = {}
    for t in ts:
        per_shape[t.shape] = per_shape.get(t.shape, 0) + 1
    bad = []
    blk = identity(model.dimension)
    for t in ts:
        # rows e_b·E_T span A·E_T
        r = exact_rank(apply_spectral(model, t, blk, side="right"))
        if r != per_shape[t.shape]:
            bad.append([str(t), r, per_shape[t.shape]])
    return Check("rank-by-shape", "rank(E_T) = dim of the irreducible of shape(T)", not bad, {"shapes": len(per_shape), "failures": bad})


def neighbor_contents(model: AlgebraModel, U: UpDownTableau) -> list:
    up_only = additions_only(model.variant)
    return sorted(
        box_content(b, dr, model.params, model.variant)
        for b, dr, _ in neighbors(U.shape)
        if not (up_only and dr != ADD)
    )


def jm_annihilator(model: AlgebraModel, k: int) -> Poly:
    """∏_{c ∈ R(k)} (u − c), checked to kill X_k in the model."""
    key = ("ann", k)
    if key not in model._cache:
        m = Poly.from_roots(content_set(k, model.d, model.n, model.params, model.variant))
        x = model.unit().reshape(1, -1)
        acc = x * m.coeffs[-1]
        for coef in reversed(m.coeffs[:-1]):
            acc = model.op("left", f"J{k}").apply(acc) + x * coef
        if not is_zero_array(acc):
            raise PoleError(f"∏_(c∈R({k})) (X_{k} − c) is not zero in the model")
        model._cache[key] = m
    return model._cache[key]


def branching_equivalence(model: AlgebraModel, T: UpDownTableau, params=None) -> bool:
    """E_T both as E_U·∏(X_n − b)/(c_n − b) over neighbor contents and as a regular limit of E_U(u−c_n)/(u−X_n)."""
    target = idempotent_vector(model, T)
    n = T.n
    U = T.prefix(n - 1)
    cn = _contents(model, T)[-1]
    eu = prefix_idempotent(model, U) if n > 1 else model.unit()
    block = eu.reshape(1, -1)
    for b in neighbor_contents(model, U):
        if b != cn:
            block = (model.op("right", f"J{n}").apply(block) - block * b) * (1 / (cn - b))
    inductive = is_zero_array(block[0] - target)
    u = RatFunc.variable("u")
    x = Element.from_vector(model, eu)
    lim = right_resolvent(x, model.op("right", f"J{n}"), jm_annihilator(model, n)).scale(u - cn).eval_regular(cn)
    limit_ok = is_zero_array(lim.vector - target)
    if not (inductive and limit_ok):
        log.debug("branching equivalence failed for %s: inductive=%s limit=%s", T, inductive, limit_ok)
    return inductive and limit_ok


__all__ = [
    "Check",
    "apply_spectral",
    "branching_equivalence",
    "idempotent_vector",
    "jm_annihilator",
    "prefix_idempotent",
    "primitive_idempotent",
    "rank_by_shape",
    "verify_idempotent_system",
]
