"""Partitions, d-partitions, addable/removable boxes and box contents."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .exact_arith import Rational, rat

Partition = tuple  # weakly decreasing positive ints
MultiPartition = tuple  # d-tuple of Partition

ADD = "add"
REMOVE = "remove"

MULTIPLICATIVE = frozenset({"bmw", "hecke"})
ADDITIVE = frozenset({"nw", "deg-hecke"})
VARIANTS = ("bmw", "nw", "hecke", "deg-hecke")
HECKE_TYPE = frozenset({"hecke", "deg-hecke"})


def additions_only(variant: str) -> bool:
    """Hecke quotients kill every E_i, so their branching graph never removes boxes."""
    return variant in HECKE_TYPE


class Box(NamedTuple):
    component: int  # 1-based
    row: int
    col: int

    @property
    def diagonal(self) -> int:
        return self.col - self.row


@dataclass(frozen=True, order=True)
class LevelShape:
    f: int
    shape: MultiPartition

    def __str__(self):
        return f"({self.f}, {fmt_multipartition(self.shape)})"


def empty(d: int) -> MultiPartition:
    return tuple(() for _ in range(d))


def size(mu: MultiPartition) -> int:
    return sum(sum(p) for p in mu)


def check_partition(p) -> Partition:
    p = tuple(int(x) for x in p)
    if any(x <= 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"not a partition: {p}")
    return p


def partitions(m: int):
    """Partitions of m in decreasing lexicographic order."""

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    yield from rec(m, m)


def compositions(m: int, d: int):
    """Weak compositions of m into d parts, decreasing lexicographic order."""
    if d == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for tail in compositions(m - first, d - 1):
            yield (first,) + tail


def multipartitions(m: int, d: int):
    for comp in compositions(m, d):
        yield from _product([list(partitions(c)) for c in comp])


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


def enumerate_lambda_plus(d: int, n: int) -> list[LevelShape]:
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    return [LevelShape(f, lam) for f in range(n // 2 + 1) for lam in multipartitions(n - 2 * f, d)]


def addable_boxes(mu: MultiPartition) -> list[Box]:
    out = []
    for s, p in enumerate(mu, start=1):
        for i in range(len(p) + 1):
            row_len = p[i] if i < len(p) else 0
            if i == 0 or p[i - 1] > row_len:
                out.append(Box(s, i + 1, row_len + 1))
    return out


def removable_boxes(mu: MultiPartition) -> list[Box]:
    out = []
    for s, p in enumerate(mu, start=1):
        for i, row_len in enumerate(p):
            if i + 1 == len(p) or p[i + 1] < row_len:
                out.append(Box(s, i + 1, row_len))
    return out


def add_box(mu: MultiPartition, box: Box) -> MultiPartition:
    p = list(mu[box.component - 1])
    i = box.row - 1
    if i == len(p):
        p.append(1)
    else:
        p[i] += 1
    return mu[: box.component - 1] + (tuple(p),) + mu[box.component:]


def remove_box(mu: MultiPartition, box: Box) -> MultiPartition:
    p = list(mu[box.component - 1])
    i = box.row - 1
    p[i] -= 1
    if p[i] == 0:
        p.pop()
    return mu[: box.component - 1] + (tuple(p),) + mu[box.component:]


def neighbors(mu: MultiPartition) -> list[tuple[Box, str, MultiPartition]]:
    """All one-box additions (first) and removals, each in canonical box order."""
    out = [(b, ADD, add_box(mu, b)) for b in sorted(addable_boxes(mu))]
    out += [(b, REMOVE, remove_box(mu, b)) for b in sorted(removable_boxes(mu))]
    return out


def move_between(mu: MultiPartition, nu: MultiPartition) -> tuple[Box, str]:
    for box, direction, target in neighbors(mu):
        if target == nu:
            return box, direction
    raise ValueError(f"{fmt_multipartition(nu)} is not adjacent to {fmt_multipartition(mu)}")


def box_content(box: Box, direction: str, params, variant: str) -> Rational:
    s = box.component
    v = params.v[s - 1]
    k = box.col - box.row
    if variant in MULTIPLICATIVE:
        q2 = rat(params.q) ** 2
        if direction == ADD:
            return v * q2**k
        return q2 ** (-k) / v
    if variant in ADDITIVE:
        if direction == ADD:
            return v + k
        return -v - k
    raise ValueError(f"unknown variant {variant!r}")


def fmt_partition(p: Partition) -> str:
    return "(" + ",".join(map(str, p)) + ")" if p else "∅"


def fmt_multipartition(mu: MultiPartition) -> str:
    if len(mu) == 1:
        return fmt_partition(mu[0])
    return "(" + ", ".join(fmt_partition(p) for p in mu) + ")"
