"""Matrix-level verification of a built model: relations, faithfulness, JM elements."""

from __future__ import annotations

import numpy as np

from ..checks import Check
from ..exact_arith import ZeroDivisionInField
from .model import AlgebraModel, SparseOp, identity, is_zero_array


def exact_inverse(mat: np.ndarray) -> np.ndarray:
    """Gauss-Jordan over Q."""
    n = mat.shape[0]
    a = np.concatenate([mat.copy(), identity(n)], axis=1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r, col] != 0), None)
        if piv is None:
            raise ZeroDivisionInField("singular matrix")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        a[col] = a[col] * (1 / a[col, col])
        for r in range(n):
            if r != col and a[r, col] != 0:
                a[r] = a[r] - a[col] * a[r, col]
    return a[:, n:]


def exact_rank(mat: np.ndarray) -> int:
    a = mat.copy()
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if a[r, col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        for r in range(rank + 1, rows):
            if a[r, col] != 0:
                a[r] = a[r] - a[rank] * (a[r, col] / a[rank, col])
        rank += 1
        if rank == rows:
            break
    return rank


def _word_block(model: AlgebraModel, word: tuple, ops: dict) -> np.ndarray:
    """Rows j of the result are L_word e_j (so the result is L_word transposed)."""
    block = identity(model.dimension)
    for letter in reversed(word):
        block = ops[letter].apply(block)
    return block


def relation_matrix(model: AlgebraModel, element, ops: dict) -> np.ndarray:
    D = model.dimension
    out = np.zeros((D, D), dtype=object)
    out.fill(0)
    for w, c in element.terms.items():
        out = out + _word_block(model, w, ops) * c
    return out


def verify_relations(model: AlgebraModel) -> list[Check]:
    """Every defining relation evaluated as a matrix in the left-regular representation."""
    ops = {x: model.op("left", x) for x in model.letters}
    out = []
    for rel in model.presentation.relations:
        ok = is_zero_array(relation_matrix(model, rel.difference, ops))
        out.append(Check(rel.label, rel.anchor, ok))
    for rel in model.presentation.checks:
        # the inverse letter is realised by the true matrix inverse
        extra = dict(ops)
        for letter in rel.difference.letters():
            if letter.endswith("inv"):
                base = model.left[letter[: -len("inv")]]
                extra[letter] = SparseOp(exact_inverse(base))
        ok = is_zero_array(relation_matrix(model, rel.difference, extra))
        out.append(Check(rel.label, rel.anchor, ok, {"inverse": "exact Gauss-Jordan"}))
    return out


def jm_elements(model: AlgebraModel) -> list[np.ndarray]:
    """Left-regular matrices of X_1, …, X_n."""
    return [model.jm_left(k) for k in range(1, model.n + 1)]


def jm_checks(model: AlgebraModel) -> list[Check]:
    out = []
    n = model.n
    comm_bad = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a, b = model.op("left", f"J{i}"), model.op("left", f"J{j}")
            blk = identity(model.dimension)
            if not is_zero_array(a.apply(b.apply(blk)) - b.apply(a.apply(blk))):
                comm_bad.append([i, j])
    out.append(Check("JM elements commute", "X_iX_j = X_jX_i", not comm_bad, {"failures": comm_bad}))
    if model.variant in ("bmw", "nw"):
        bad = []
        for i in range(1, n):
            e = model.op("left", f"E{i}")
            xi, xj = model.op("left", f"J{i}"), model.op("left", f"J{i + 1}")
            blk = identity(model.dimension)
            ex = e.apply(blk)
            if model.variant == "bmw":
                # E_i X_i X_{i+1} = X_i X_{i+1} E_i = E_i
                lhs1 = e.apply(xi.apply(xj.apply(blk)))
                lhs2 = xi.apply(xj.apply(ex))
            else:
                # E_i (X_i + X_{i+1}) = (X_i + X_{i+1}) E_i = 0
                lhs1 = e.apply(xi.apply(blk) + xj.apply(blk)) + ex
                lhs2 = xi.apply(ex) + xj.apply(ex) + ex
            if not (is_zero_array(lhs1 - ex) and is_zero_array(lhs2 - ex)):
                bad.append(i)
        anchor = "E_iX_iX_{i+1} = X_iX_{i+1}E_i = E_i" if model.variant == "bmw" else "E_i(X_i + X_{i+1}) = (X_i + X_{i+1})E_i = 0"
        out.append(Check("E_i against JM pair", anchor, not bad, {"failures": bad}))
    return out


def faithfulness_check(model: AlgebraModel) -> Check:
    """x ↦ L_x is injective: L_b·1 is the b-th unit vector for every basis word b."""
    bad = 0
    unit = model.unit().reshape(1, -1)
    for j, w in enumerate(model.basis_words):
        v = unit
        for letter in reversed(w):
            v = model.op("left", model.letters[letter]).apply(v)
        expect = np.zeros(model.dimension, dtype=object)
        expect.fill(0)
        expect[j] = 1
        if not is_zero_array(v[0] - expect):
            bad += 1
    return Check("faithful left-regular action", "L_b·1 = b for every basis word", bad == 0, {"dimension": model.dimension, "failures": bad})


__all__ = ["exact_inverse", "exact_rank", "faithfulness_check", "jm_checks", "jm_elements", "verify_relations"]
