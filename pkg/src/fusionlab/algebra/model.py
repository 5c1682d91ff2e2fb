"""Faithful matrix models: the regular representation of a presented algebra.

The presentation is completed to a Gröbner basis; its normal words form the
basis, and each letter acts on coordinates by left or right multiplication.
An element is recorded by its coordinates (the image of 1), so two elements
are equal iff their coordinate vectors are.
"""

from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from ..exact_arith import rat
from ..multipartitions import ADDITIVE, HECKE_TYPE
from ..updown import lambda_plus_square_sum, standard_square_sum
from .groebner import BudgetExceeded, GroebnerBasis
from .presentation import Presentation, presentation

log = logging.getLogger(__name__)

ZERO = mpq(0)
ONE = mpq(1)


class DimensionMismatch(RuntimeError):
    pass


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def is_zero_array(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b)


class SparseOp:
    """Row-compressed exact matrix; ``apply`` maps an (m, D) coordinate block to ``block @ M.T``."""

    __slots__ = ("shape", "rows", "nnz")

    def __init__(self, matrix: np.ndarray):
        self.shape = matrix.shape
        self.rows = []
        self.nnz = 0
        for r in range(matrix.shape[0]):
            cols = [j for j, x in enumerate(matrix[r]) if x != 0]
            self.nnz += len(cols)
            if cols:
                vals = np.empty(len(cols), dtype=object)
                vals[:] = [matrix[r, j] for j in cols]
                self.rows.append((r, np.array(cols, dtype=np.intp), vals))

    def apply(self, block: np.ndarray) -> np.ndarray:
        out = zeros((block.shape[0], self.shape[0]))
        for r, cols, vals in self.rows:
            out[:, r] = block[:, cols].dot(vals)
        return out

    def times(self, dense: np.ndarray) -> np.ndarray:
        """M @ dense."""
        return self.apply(dense.T).T

    def matvec(self, vec: np.ndarray) -> np.ndarray:
        return self.apply(vec.reshape(1, -1))[0]


def expected_dimension(variant: str, d: int, n: int) -> int:
    if variant in HECKE_TYPE:
        return standard_square_sum(d, n)
    return lambda_plus_square_sum(d, n)


@dataclass
class AlgebraModel:
    variant: str
    d: int
    n: int
    params: object
    presentation: Presentation
    basis_words: list
    letters: tuple
    left: dict  # letter -> D×D matrix of left multiplication
    right: dict  # letter -> D×D matrix of right multiplication
    gb: GroebnerBasis = field(repr=False)
    build_seconds: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis_words)

    @property
    def multiplicative(self) -> bool:
        return self.variant not in ADDITIVE

    def word_names(self, w: tuple) -> str:
        return "·".join(self.letters[i] for i in w) or "1"

    def normal_form(self, word_or_poly) -> np.ndarray:
        """Coordinates of a free-algebra word (tuple of letter names) or polynomial."""
        if isinstance(word_or_poly, dict):
            poly = word_or_poly
        else:
            poly = {tuple(self._letter_index[x] for x in word_or_poly): ONE}
        vec = zeros(self.dimension)
        for w, c in self.gb.reduce(poly).items():
            vec[self._index[w]] = c
        return vec

    def unit(self) -> np.ndarray:
        vec = zeros(self.dimension)
        vec[self._index[()]] = ONE
        return vec

    # -- operators ------------------------------------------------------------
    def jm_left(self, k: int) -> np.ndarray:
        return self._jm(k)[0]

    def jm_right(self, k: int) -> np.ndarray:
        return self._jm(k)[1]

    def _jm(self, k: int):
        key = ("jm", k)
        if key not in self._cache:
            if not self.multiplicative:
                self._cache[key] = (self.left[f"X{k}"], self.right[f"X{k}"])
            elif k == 1:
                self._cache[key] = (self.left["X1"], self.right["X1"])
            else:
                lp, rp = self._jm(k - 1)
                # X_k = T_{k-1} X_{k-1} T_{k-1}
                out = []
                for side, prev in (("left", lp), ("right", rp)):
                    mat = (self.left if side == "left" else self.right)[f"T{k-1}"]
                    ab = SparseOp(mat).times(prev)
                    out.append(SparseOp(mat.T).times(ab.T).T)
                self._cache[key] = tuple(out)
        return self._cache[key]

    def op(self, side: str, name: str) -> SparseOp:
        """Sparse left/right multiplication by a letter, or by the JM element ``J<k>``."""
        key = ("op", side, name)
        if key not in self._cache:
            if name.startswith("J"):
                k = int(name[1:])
                mat = self.jm_left(k) if side == "left" else self.jm_right(k)
            else:
                mat = (self.left if side == "left" else self.right)[name]
            self._cache[key] = SparseOp(mat)
        return self._cache[key]

    def left_matrix(self, vec: np.ndarray) -> np.ndarray:
        """Left-regular matrix of the element with coordinates ``vec``."""
        D = self.dimension
        cols = [None] * D
        for j, w in enumerate(self.basis_words):
            if not w:
                cols[j] = vec
            else:
                parent = cols[self._index[w[:-1]]]
                cols[j] = self.right[self.letters[w[-1]]].dot(parent)
        out = zeros((D, D))
        for j, col in enumerate(cols):
            out[:, j] = col
        return out

    def evaluate(self, poly, side: str = "left", extra: dict | None = None) -> np.ndarray:
        """Matrix of a free-algebra polynomial under the chosen regular representation."""
        mats = dict(self.left if side == "left" else self.right)
        if extra:
            mats.update(extra)
        D = self.dimension
        out = zeros((D, D))
        for w, c in poly.terms.items():
            m = identity(D)
            seq = w if side == "left" else tuple(reversed(w))
            for letter in seq:
                m = matmul(m, mats[letter])
            out = out + m * c
        return out


def _letter_poly(diff, index) -> dict:
    return {tuple(index[x] for x in w): c for w, c in diff.terms.items()}


def budget_degree() -> int:
    return int(os.environ.get("FUSIONLAB_GB_DEGREE", "40"))


def build_model(variant: str, d: int, n: int, params, *, check_dimension: bool = True) -> AlgebraModel:
    t0 = time.perf_counter()
    pres = presentation(variant, params, n)
    letters = pres.letters
    index = {x: i for i, x in enumerate(letters)}
    gb = GroebnerBasis(len(letters), max_degree=budget_degree())
    for rel in pres.relations:
        p = _letter_poly(rel.difference, index)
        if p:
            gb.add(p)
    gb.complete_basis()
    expected = expected_dimension(variant, d, n)
    words = gb.normal_words(limit=max(4 * expected, 64))
    if check_dimension and len(words) != expected:
        raise DimensionMismatch(f"{variant} d={d} n={n}: quotient has dimension {len(words)}, tableau oracle says {expected}")
    word_index = {w: i for i, w in enumerate(words)}
    D = len(words)
    left, right = {}, {}
    for x, xi in index.items():
        L, R = zeros((D, D)), zeros((D, D))
        for j, w in enumerate(words):
            for nw, c in gb.reduce({(xi,) + w: ONE}).items():
                L[word_index[nw], j] = c
            for nw, c in gb.reduce({w + (xi,): ONE}).items():
                R[word_index[nw], j] = c
        left[x], right[x] = L, R
    model = AlgebraModel(variant, d, n, params, pres, words, letters, left, right, gb)
    model._index = word_index
    model._letter_index = index
    model.build_seconds = time.perf_counter() - t0
    log.info("built %s d=%d n=%d: dim %d in %.2fs (%d GB elements)", variant, d, n, D, model.build_seconds, len(gb.elements()))
    return model


__all__ = ["AlgebraModel", "BudgetExceeded", "DimensionMismatch", "build_model", "expected_dimension"]
