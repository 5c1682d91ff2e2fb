"""Noncommutative Gröbner bases over exact rationals (deg-lex order).

Free-algebra elements are dicts ``{word: coeff}`` where a word is a tuple of
letter indices; letter ``i`` sorts below letter ``j`` iff ``i < j``.  Normal
words w.r.t. a completed basis are exactly the words containing no leading
word as a factor, which makes them a basis of the quotient algebra.
"""

from __future__ import annotations

import heapq
import itertools
import logging

from gmpy2 import mpq

log = logging.getLogger(__name__)

ONE = mpq(1)


class BudgetExceeded(RuntimeError):
    pass


def order_key(word: tuple) -> tuple:
    return (len(word), word)


def _neg_key(word):
    return (-len(word), tuple(-x for x in word))


def leading_word(p: dict) -> tuple:
    return max(p, key=order_key)


def mul_words(left: tuple, p: dict, right: tuple, scale=ONE) -> dict:
    return {left + w + right: c * scale for w, c in p.items()}


def add_into(acc: dict, p: dict, scale=ONE) -> dict:
    for w, c in p.items():
        v = acc.get(w, 0) + c * scale
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


class GroebnerBasis:
    """Buchberger completion processing overlap obstructions by degree."""

    def __init__(self, n_letters: int, *, max_degree: int = 40, max_pairs: int = 2_000_000):
        self.n_letters = n_letters
        self.max_degree = max_degree
        self.max_pairs = max_pairs
        self._polys: dict[int, dict] = {}
        self._lm: dict[int, tuple] = {}
        self._by_lm: dict[tuple, int] = {}
        self._lm_lengths: set[int] = set()
        self._ids = itertools.count()
        self._pairs: list = []
        self._pending: list[dict] = []
        self.pairs_processed = 0
        self.complete = False

    # -- normal forms -----------------------------------------------------
    def _find_divisor(self, w: tuple):
        by_lm = self._by_lm
        n = len(w)
        for length in self._lm_lengths:
            if length > n:
                continue
            for i in range(n - length + 1):
                gid = by_lm.get(w[i : i + length])
                if gid is not None:
                    return i, gid
        return None

    def reduce(self, p: dict) -> dict:
        """Full normal form of ``p``; terms come out keyed by normal words."""
        p = {w: c for w, c in p.items() if c}
        heap = [_neg_key(w) for w in p]
        heapq.heapify(heap)
        decode = {}
        for w in p:
            decode[_neg_key(w)] = w
        out = {}
        while heap:
            key = heapq.heappop(heap)
            w = decode.get(key)
            if w is None or w not in p:
                continue
            c = p.pop(w)
            hit = self._find_divisor(w)
            if hit is None:
                out[w] = c
                continue
            i, gid = hit
            lm = self._lm[gid]
            left, right = w[:i], w[i + len(lm) :]
            for gw, gc in self._polys[gid].items():
                if gw == lm:
                    continue
                nw = left + gw + right
                val = p.get(nw, 0) - c * gc
                if val:
                    if nw not in p:
                        k = _neg_key(nw)
                        decode[k] = nw
                        heapq.heappush(heap, k)
                    p[nw] = val
                else:
                    p.pop(nw, None)
        return out

    def is_normal(self, w: tuple) -> bool:
        return self._find_divisor(w) is None

    # -- completion ---------------------------------------------------------
    def add(self, p: dict):
        self._pending.append(p)
        self.complete = False

    def _insert(self, p: dict):
        p = self.reduce(p)
        if not p:
            return
        lm = leading_word(p)
        inv = ONE / p[lm]
        p = {w: c * inv for w, c in p.items()}
        # elements whose leading word now contains lm are no longer reduced
        for gid, glm in list(self._lm.items()):
            if len(glm) >= len(lm) and _contains(glm, lm):
                self._pending.append(self._remove(gid))
        gid = next(self._ids)
        self._polys[gid] = p
        self._lm[gid] = lm
        self._by_lm[lm] = gid
        self._lm_lengths = {len(x) for x in self._by_lm}
        for other, olm in list(self._lm.items()):
            self._queue_overlaps(gid, lm, other, olm)
            if other != gid:
                self._queue_overlaps(other, olm, gid, lm)

    def _remove(self, gid: int) -> dict:
        p = self._polys.pop(gid)
        lm = self._lm.pop(gid)
        del self._by_lm[lm]
        self._lm_lengths = {len(x) for x in self._by_lm}
        return p

    def _queue_overlaps(self, a: int, alm: tuple, b: int, blm: tuple):
        top = min(len(alm), len(blm))
        for k in range(1, top):
            if alm[-k:] == blm[:k]:
                deg = len(alm) + len(blm) - k
                heapq.heappush(self._pairs, (deg, next(self._ids), a, b, k))

    def _spoly(self, a: int, b: int, k: int) -> dict:
        alm, blm = self._lm[a], self._lm[b]
        s = mul_words((), self._polys[a], blm[k:])
        return add_into(s, mul_words(alm[: len(alm) - k], self._polys[b], ()), -ONE)

    def complete_basis(self) -> GroebnerBasis:
        while self._pending or self._pairs:
            if self._pending:
                self._insert(self._pending.pop())
                continue
            deg, _, a, b, k = heapq.heappop(self._pairs)
            if a not in self._polys or b not in self._polys:
                continue
            if deg > self.max_degree:
                raise BudgetExceeded(f"overlap of degree {deg} exceeds budget {self.max_degree}")
            self.pairs_processed += 1
            if self.pairs_processed > self.max_pairs:
                raise BudgetExceeded(f"more than {self.max_pairs} obstructions processed")
            self._insert(self._spoly(a, b, k))
        self.complete = True
        log.debug("groebner basis complete: %d elements, %d pairs", len(self._polys), self.pairs_processed)
        return self

    # -- queries --------------------------------------------------------------
    def elements(self) -> list[dict]:
        return [self._polys[g] for g in sorted(self._polys, key=lambda g: order_key(self._lm[g]))]

    def leading_words(self) -> list[tuple]:
        return sorted(self._by_lm, key=order_key)

    def normal_words(self, limit: int) -> list[tuple]:
        """All normal words in deg-lex order; raises if more than ``limit`` exist."""
        if not self.complete:
            raise RuntimeError("basis not completed")
        if self.is_normal(()) is False:
            return []
        layer = [()]
        out = [()]
        while layer:
            nxt = []
            for w in layer:
                for x in range(self.n_letters):
                    cand = w + (x,)
                    if self._suffix_normal(cand):
                        nxt.append(cand)
            out.extend(nxt)
            if len(out) > limit:
                raise BudgetExceeded(f"more than {limit} normal words")
            layer = nxt
        return out

    def _suffix_normal(self, w: tuple) -> bool:
        by_lm = self._by_lm
        for length in self._lm_lengths:
            if length <= len(w) and w[len(w) - length :] in by_lm:
                return False
        return True


def _contains(word: tuple, sub: tuple) -> bool:
    m = len(sub)
    return any(word[i : i + m] == sub for i in range(len(word) - m + 1))
