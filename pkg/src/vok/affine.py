"""Level-k dominant weights, conformal weights and simple-current rotation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

from .roots import AlgebraId, Weight, build_root_datum, dual_weight, inner


@dataclass(frozen=True)
class AffineWeight:
    algebra: AlgebraId
    level: int
    labels: tuple[int, ...]  # finite Dynkin labels

    def __post_init__(self):
        if self.level <= 0:
            raise ValueError("level must be positive")
        if len(self.labels) != self.algebra.rank or any(x < 0 for x in self.labels):
            raise ValueError(f"bad labels {self.labels} for {self.algebra}")
        if self.a0 < 0:
            raise ValueError(f"{self.labels} exceeds level {self.level} for {self.algebra}")

    @property
    def a0(self) -> int:
        rd = build_root_datum(self.algebra)
        return self.level - sum(c * x for c, x in zip(rd.comarks, self.labels))

    @property
    def affine_labels(self) -> tuple[int, ...]:
        return (self.a0,) + self.labels

    @property
    def finite(self) -> Weight:
        return Weight(self.algebra, self.labels)

    def __str__(self) -> str:
        return ",".join(map(str, self.affine_labels))


def from_affine_labels(g: AlgebraId, labels: Sequence[int]) -> AffineWeight:
    """Build from (a0, a1, ..., a_rank); the level is read off with the comarks."""
    rd = build_root_datum(g)
    if len(labels) != g.rank + 1:
        raise ValueError(f"{g} needs {g.rank + 1} affine labels")
    level = labels[0] + sum(c * x for c, x in zip(rd.comarks, labels[1:]))
    return AffineWeight(g, level, tuple(labels[1:]))


@lru_cache(maxsize=None)
def enumerate_level_weights(g: AlgebraId, k: int) -> tuple[AffineWeight, ...]:
    """All level-k dominant weights, sorted descending on (a0, a1, ...) so the vacuum comes first."""
    if k <= 0:
        raise ValueError("level must be positive")
    comarks = build_root_datum(g).comarks
    out: list[tuple[int, ...]] = []

    def rec(i: int, budget: int, acc: list[int]) -> None:
        if i == len(comarks):
            out.append(tuple(acc))
            return
        for x in range(budget // comarks[i] + 1):
            acc.append(x)
            rec(i + 1, budget - x * comarks[i], acc)
            acc.pop()

    rec(0, k, [])
    ws = [AffineWeight(g, k, t) for t in out]
    return tuple(sorted(ws, key=lambda w: w.affine_labels, reverse=True))


def conformal_weight(g: AlgebraId, k: int, labels: Sequence[int]) -> Q:
    w = AffineWeight(g, k, tuple(labels))
    rd = build_root_datum(g)
    lam = w.labels
    shifted = tuple(x + 2 for x in lam)  # lambda + 2 rho
    return inner(rd, lam, shifted) / (2 * (k + rd.dual_coxeter))


def central_charge(g: AlgebraId, k: int) -> Q:
    rd = build_root_datum(g)
    return Q(k * rd.dimension, k + rd.dual_coxeter)


def simple_current_rotate(a: AffineWeight, times: int = 1) -> AffineWeight:
    """(a0, ..., a_{n-1}) -> (a_{n-1}, a0, ..., a_{n-2}) for sl_n."""
    if a.algebra.series != "A":
        raise ValueError("simple-current rotation is implemented for type A only")
    t = a.affine_labels
    s = times % len(t)
    t = t[len(t) - s:] + t[: len(t) - s]
    return AffineWeight(a.algebra, a.level, t[1:])


def conjugate_module(a: AffineWeight) -> AffineWeight:
    return AffineWeight(a.algebra, a.level, dual_weight(a.finite).labels)
