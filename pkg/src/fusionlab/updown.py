"""Updown tableaux, diagonal profiles, p-sequences and the weights f(T) / g(t)."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .exact_arith import PoleError, Rational, rat
from .multipartitions import (
    ADD,
    ADDITIVE,
    MULTIPLICATIVE,
    Box,
    LevelShape,
    MultiPartition,
    additions_only,
    box_content,
    empty,
    enumerate_lambda_plus,
    fmt_multipartition,
    move_between,
    neighbors,
    size,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UpDownTableau:
    """Path T_1, ..., T_n in the branching graph; T_0 = ∅ is implicit."""

    steps: tuple
    d: int

    def __post_init__(self):
        prev = empty(self.d)
        for mu in self.steps:
            if len(mu) != self.d:
                raise ValueError(f"step {mu} is not a {self.d}-partition")
            move_between(prev, mu)
            prev = mu

    def __len__(self):
        return len(self.steps)

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def shape(self) -> MultiPartition:
        return self.steps[-1] if self.steps else empty(self.d)

    @property
    def level_shape(self) -> LevelShape:
        return LevelShape((self.n - size(self.shape)) // 2, self.shape)

    def prefix(self, k: int) -> UpDownTableau:
        return UpDownTableau(self.steps[:k], self.d)

    def extend(self, mu: MultiPartition) -> UpDownTableau:
        return UpDownTableau(self.steps + (mu,), self.d)

    def moves(self) -> list[tuple[Box, str]]:
        out = []
        prev = empty(self.d)
        for mu in self.steps:
            out.append(move_between(prev, mu))
            prev = mu
        return out

    def __str__(self):
        return "∅→" + "→".join(fmt_multipartition(mu) for mu in self.steps)


def _paths(d: int, n: int, target: MultiPartition | None, up_only: bool = False):
    target_size = None if target is None else size(target)

    def rec(mu, k, acc):
        if k == n:
            if target is None or mu == target:
                yield UpDownTableau(tuple(acc), d)
            return
        for _box, direction, nu in neighbors(mu):
            if up_only and direction != ADD:
                continue
            if target_size is not None and abs(size(nu) - target_size) > n - k - 1:
                continue
            acc.append(nu)
            yield from rec(nu, k + 1, acc)
            acc.pop()

    yield from rec(empty(d), 0, [])


def enumerate_updown(shape: LevelShape, n: int, d: int) -> list[UpDownTableau]:
    if shape not in enumerate_lambda_plus(d, n):
        raise ValueError(f"{shape} is not in Λ⁺_{{{d},{n}}}")
    return list(_paths(d, n, shape.shape))


def shapes_for(variant: str, d: int, n: int) -> list[LevelShape]:
    shapes = enumerate_lambda_plus(d, n)
    return [s for s in shapes if s.f == 0] if additions_only(variant) else shapes


@lru_cache(maxsize=None)
def all_tableaux(d: int, n: int, variant: str = "bmw") -> tuple[UpDownTableau, ...]:
    """Every tableau indexing an idempotent of the variant's algebra, in canonical order."""
    return tuple(t for shape in shapes_for(variant, d, n) for t in enumerate_updown(shape, n, d))


def contents(T: UpDownTableau, params, variant: str) -> list[Rational]:
    return [box_content(box, direction, params, variant) for box, direction in T.moves()]


def content_set(k: int, d: int, n: int, params, variant: str) -> list[Rational]:
    """R(k), sorted ascending; every length-n path ends in a shape of Λ⁺, so all paths count."""
    if not 1 <= k <= n:
        raise ValueError(f"step {k} outside 1..{n}")
    up_only = additions_only(variant)
    frontier = {empty(d)}
    for _ in range(k - 1):
        frontier = {nu for mu in frontier for _b, dr, nu in neighbors(mu) if not (up_only and dr != ADD)}
    values = {
        box_content(b, dr, params, variant)
        for mu in frontier
        for b, dr, _nu in neighbors(mu)
        if not (up_only and dr != ADD)
    }
    return sorted(values)


@dataclass(frozen=True)
class DiagonalProfile:
    """d_k^s (additions) and d̄_k^s (removals) keyed by (component, diagonal)."""

    d: int
    added: tuple  # sorted ((s, k), count) pairs
    removed: tuple

    def add_count(self, s: int, k: int) -> int:
        return dict(self.added).get((s, k), 0)

    def remove_count(self, s: int, k: int) -> int:
        return dict(self.removed).get((s, k), 0)


def diagonal_profile(prefix: UpDownTableau) -> DiagonalProfile:
    added, removed = Counter(), Counter()
    for box, direction in prefix.moves():
        (added if direction == ADD else removed)[(box.component, box.diagonal)] += 1
    return DiagonalProfile(prefix.d, tuple(sorted(added.items())), tuple(sorted(removed.items())))


def _second_difference(counts: dict, with_delta: bool) -> dict:
    support = {k + e for k in counts for e in (-1, 0, 1)}
    if with_delta:
        support.add(0)
    out = {}
    for k in support:
        val = (1 if with_delta and k == 0 else 0) + counts.get(k - 1, 0) + counts.get(k + 1, 0) - 2 * counts.get(k, 0)
        if val:
            out[k] = val
    return out


def g_indexes(profile: DiagonalProfile) -> tuple[dict, dict]:
    """Per component s: ({k: g_k^s}, {k: ḡ_k^s}), zero entries omitted."""
    g, gbar = {}, {}
    for s in range(1, profile.d + 1):
        add = {k: c for (t, k), c in profile.added if t == s}
        rem = {k: c for (t, k), c in profile.removed if t == s}
        g[s] = _second_difference(add, with_delta=True)
        gbar[s] = _second_difference(rem, with_delta=False)
    return g, gbar


def p_sequence(T: UpDownTableau) -> list[int]:
    out = []
    moves = T.moves()
    for k, (box, direction) in enumerate(moves):
        g, gbar = g_indexes(diagonal_profile(T.prefix(k)))
        table = g if direction == ADD else gbar
        out.append(1 - table[box.component].get(box.diagonal, 0))
    return out


def p_range(d: int, n: int, variant: str = "bmw") -> tuple[int, int]:
    """Smallest and largest p_k over every tableau; p_k can be negative."""
    ps = [p for t in all_tableaux(d, n, variant) for p in p_sequence(t)]
    lo, hi = min(ps), max(ps)
    log.debug("p range %s d=%d n=%d: [%d, %d]", variant, d, n, lo, hi)
    return lo, hi


def _power(base, e: int):
    if e < 0 and base == 0:
        raise PoleError("zero factor raised to a negative exponent")
    return base**e


def step_weight(U: UpDownTableau, nxt: MultiPartition, params, variant: str, *, literal: bool = False) -> Rational:
    """φ(U, T) for the multiplicative families, ψ(u, t) for the additive ones.

    Every factor is a difference of two contents.  ``literal=True`` drops the
    v_s from the own-component factors (q^{2k_n} − q^{2k} instead of
    v_s q^{2k_n} − v_s q^{2k}); that only changes the value when p_n ≠ 0 and
    then breaks the fusion normalization, see the tests.
    """
    box, direction = move_between(U.shape, nxt)
    g, gbar = g_indexes(diagonal_profile(U))
    s0, k0 = box.component, box.diagonal
    v = [rat(x) for x in params.v]
    d = len(v)
    adding = direction == ADD
    # own-component table, cross-component table, opposite-direction table
    same, opposite = (g, gbar) if adding else (gbar, g)
    acc = rat(1)
    if variant in MULTIPLICATIVE:
        q2 = rat(params.q) ** 2
        vs = rat(1) if literal else v[s0 - 1]
        if adding:
            base = v[s0 - 1] * q2**k0
            own = lambda k: vs * (q2**k0 - q2**k)
            cross = lambda t, k: base - v[t - 1] * q2**k
            other = lambda r, k: base - q2 ** (-k) / v[r - 1]
        else:
            base = q2 ** (-k0) / v[s0 - 1]
            own = lambda k: (q2 ** (-k0) - q2 ** (-k)) / vs
            cross = lambda t, k: base - q2 ** (-k) / v[t - 1]
            other = lambda r, k: base - v[r - 1] * q2**k
    elif variant in ADDITIVE:
        if adding:
            own = lambda k: rat(k0 - k)
            cross = lambda t, k: v[s0 - 1] - v[t - 1] + k0 - k
            other = lambda r, k: v[s0 - 1] + v[r - 1] + k0 + k
        else:
            own = lambda k: rat(k - k0)
            cross = lambda t, k: -v[s0 - 1] + v[t - 1] - k0 + k
            other = lambda r, k: -v[s0 - 1] - v[r - 1] - k0 - k
    else:
        raise ValueError(f"unknown variant {variant!r}")
    for k, e in sorted(same[s0].items()):
        if k != k0:
            acc *= _power(own(k), e)
    for t in range(1, d + 1):
        if t != s0:
            for k, e in sorted(same[t].items()):
                acc *= _power(cross(t, k), e)
    for r in range(1, d + 1):
        for k, e in sorted(opposite[r].items()):
            acc *= _power(other(r, k), e)
    return acc


def weight(T: UpDownTableau, params, variant: str, *, literal: bool = False) -> Rational:
    acc = rat(1)
    for k in range(T.n):
        acc *= step_weight(T.prefix(k), T.steps[k], params, variant, literal=literal)
    return acc


def lambda_plus_square_sum(d: int, n: int) -> int:
    """Σ over (f, λ) ∈ Λ⁺ of |T^ud_n(λ)|², the semisimple dimension oracle."""
    return sum(len(enumerate_updown(s, n, d)) ** 2 for s in enumerate_lambda_plus(d, n))


def standard_square_sum(d: int, n: int) -> int:
    """Σ over d-partitions λ of n of (#standard λ-tableaux)²."""
    return sum(len(enumerate_updown(s, n, d)) ** 2 for s in enumerate_lambda_plus(d, n) if s.f == 0)
