"""Finite simple Lie algebras in Bourbaki numbering, with exact Gram data."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from math import factorial
from typing import Sequence

from .kernel import qinverse

Vec = tuple[int, ...]


@dataclass(frozen=True, order=True)
class AlgebraId:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        ok = (
            (s == "A" and n >= 1)
            or (s == "B" and n >= 2)
            or (s == "C" and n >= 2)
            or (s == "D" and n >= 4)
            or (s == "E" and n in (6, 7, 8))
            or (s == "F" and n == 4)
            or (s == "G" and n == 2)
        )
        if not ok:
            raise ValueError(f"no simple Lie algebra of type {s}{n}")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def parse_algebra(text: str) -> AlgebraId:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"cannot parse algebra name {text!r}")
    return AlgebraId(m.group(1).upper(), int(m.group(2)))


def _chain(norms: Sequence[Q], links: Sequence[tuple[int, int, Q]]) -> list[list[Q]]:
    n = len(norms)
    b = [[Q(0)] * n for _ in range(n)]
    for i, x in enumerate(norms):
        b[i][i] = Q(x)
    for i, j, x in links:
        b[i][j] = b[j][i] = Q(x)
    return b


def simple_root_gram(g: AlgebraId) -> list[list[Q]]:
    """(alpha_i, alpha_j) with long roots of norm 2."""
    n, s = g.rank, g.series
    one, half = Q(1), Q(1, 2)
    path = [(i, i + 1, -one) for i in range(n - 1)]
    if s == "A":
        return _chain([2] * n, path)
    if s == "B":
        return _chain([2] * (n - 1) + [1], path)
    if s == "C":
        return _chain([1] * (n - 1) + [2], [(i, i + 1, -half) for i in range(n - 2)] + [(n - 2, n - 1, -one)])
    if s == "D":
        return _chain([2] * n, path[:-1] + [(n - 3, n - 1, -one)])
    if s == "E":
        links = [(0, 2, -one), (1, 3, -one)] + [(i, i + 1, -one) for i in range(2, n - 1)]
        return _chain([2] * n, links)
    if s == "F":
        return _chain([2, 2, 1, 1], [(0, 1, -one), (1, 2, -one), (2, 3, -half)])
    return _chain([Q(2, 3), 2], [(0, 1, -one)])


@dataclass(frozen=True)
class RootDatum:
    id: AlgebraId
    root_gram: tuple[tuple[Q, ...], ...]
    cartan: tuple[Vec, ...]  # cartan[i][j] = 2(a_i, a_j)/(a_i, a_i)
    simple_root_norms: tuple[Q, ...]
    positive_roots: tuple[Vec, ...]  # simple-root coordinates
    weight_gram: tuple[tuple[Q, ...], ...]
    theta: Vec
    marks: Vec
    comarks: Vec
    dual_coxeter: int
    dimension: int

    @property
    def rank(self) -> int:
        return self.id.rank

    @property
    def rho(self) -> Vec:
        return (1,) * self.rank

    def root_labels(self, i: int) -> Vec:
        """Dynkin labels of the simple root alpha_i."""
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def labels_of_root(self, coords: Sequence[int]) -> Vec:
        return tuple(sum(c * self.cartan[j][i] for i, c in enumerate(coords)) for j in range(self.rank))

    @property
    def roots(self) -> tuple[Vec, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)


@lru_cache(maxsize=None)
def build_root_datum(g: AlgebraId) -> RootDatum:
    if g.rank > 9 and g.series != "E":
        raise ValueError(f"{g}: ranks above 9 are not supported")
    b = simple_root_gram(g)
    n = g.rank
    norms = tuple(b[i][i] for i in range(n))
    cartan = tuple(tuple(int(2 * b[i][j] / b[i][i]) for j in range(n)) for i in range(n))

    def coroot_pairing(beta: Vec, i: int) -> int:
        return int(sum(2 * beta[j] * b[j][i] for j in range(n)) / b[i][i])

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = coroot_pairing(beta, i)
                if c:
                    gamma = tuple(x - c * (j == i) for j, x in enumerate(beta))
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    positive = tuple(sorted((r for r in seen if all(x >= 0 for x in r)), key=lambda r: (sum(r), r)))
    theta = positive[-1]
    comarks = tuple(int(a * norms[i] / 2) for i, a in enumerate(theta))
    binv = qinverse(b)
    d = [x / 2 for x in norms]
    wg = tuple(tuple(d[i] * binv[i][j] * d[j] for j in range(n)) for i in range(n))
    return RootDatum(
        id=g,
        root_gram=tuple(tuple(r) for r in b),
        cartan=cartan,
        simple_root_norms=norms,
        positive_roots=positive,
        weight_gram=wg,
        theta=theta,
        marks=theta,
        comarks=comarks,
        dual_coxeter=1 + sum(comarks),
        dimension=n + 2 * len(positive),
    )


def datum(g: AlgebraId | str) -> RootDatum:
    return build_root_datum(parse_algebra(g) if isinstance(g, str) else g)


@dataclass(frozen=True)
class Weight:
    algebra: AlgebraId
    labels: tuple

    def __post_init__(self):
        if len(self.labels) != self.algebra.rank:
            raise ValueError(f"{self.algebra} weights need {self.algebra.rank} labels, got {len(self.labels)}")

    @property
    def dominant(self) -> bool:
        return all(x >= 0 for x in self.labels)


def fundamental(g: AlgebraId, i: int, mult=1) -> Weight:
    """mult * Lambda_i with 1-based i."""
    if not 1 <= i <= g.rank:
        raise ValueError(f"{g} has no fundamental weight {i}")
    return Weight(g, tuple(mult if j == i - 1 else 0 for j in range(g.rank)))


def inner(rd: RootDatum, a: Sequence, b: Sequence) -> Q:
    wg = rd.weight_gram
    return sum((Q(x) * wg[i][j] * y for i, x in enumerate(a) if x for j, y in enumerate(b) if y), Q(0))


def weight_inner(a: Weight, b: Weight) -> Q:
    if a.algebra != b.algebra:
        raise ValueError(f"weights of {a.algebra} and {b.algebra} cannot be paired")
    return inner(build_root_datum(a.algebra), a.labels, b.labels)


def root_weight_pairing(rd: RootDatum, lam: Sequence, root: Sequence[int]) -> Q:
    """(lam | alpha) for alpha given in simple-root coordinates."""
    return sum((Q(lam[i]) * c * rd.simple_root_norms[i] / 2 for i, c in enumerate(root)), Q(0))


def reflect(rd: RootDatum, lam: tuple, i: int) -> tuple:
    c = lam[i]
    if not c:
        return lam
    return tuple(x - c * rd.cartan[j][i] for j, x in enumerate(lam))


def dominant_rep(rd: RootDatum, lam: Sequence) -> tuple:
    lam = tuple(lam)
    while True:
        i = next((i for i, x in enumerate(lam) if x < 0), None)
        if i is None:
            return lam
        lam = reflect(rd, lam, i)


def orbit_labels(rd: RootDatum, lam: Sequence) -> frozenset:
    start = dominant_rep(rd, lam)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rd.rank):
                if mu[i] > 0:  # walk down from the dominant vertex only
                    nu = reflect(rd, mu, i)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
        frontier = nxt
    return frozenset(seen)


def weyl_orbit(w: Weight) -> frozenset:
    return orbit_labels(build_root_datum(w.algebra), w.labels)


def signed_orbit(rd: RootDatum, lam: Sequence[int], limit: int = 10**7) -> dict[tuple, int]:
    """Orbit of a regular weight with the sign det(w) of the element reaching each point."""
    lam = tuple(lam)
    if any(x <= 0 for x in dominant_rep(rd, lam)):
        raise ValueError("signed_orbit needs a regular weight")
    if weyl_group_order(rd.id) > limit:
        raise ValueError(f"Weyl group of {rd.id} exceeds the enumeration guard {limit}")
    signs = {lam: 1}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            s = signs[mu]
            for i in range(rd.rank):
                nu = reflect(rd, mu, i)
                if nu not in signs:
                    signs[nu] = -s
                    nxt.append(nu)
        frontier = nxt
    return signs


def weyl_group_order(g: AlgebraId) -> int:
    n = g.rank
    return {
        "A": factorial(n + 1),
        "B": 2**n * factorial(n),
        "C": 2**n * factorial(n),
        "D": 2 ** (n - 1) * factorial(n),
        "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
        "F": 1152,
        "G": 12,
    }[g.series]


def dual_weight(w: Weight) -> Weight:
    """-w0(lambda): the highest weight of the contragredient module."""
    rd = build_root_datum(w.algebra)
    return Weight(w.algebra, dominant_rep(rd, tuple(-x for x in w.labels)))


def dominant_weights_below(rd: RootDatum, lam: Sequence[int]) -> list[tuple]:
    """Dominant weights mu <= lam (lam - mu a nonnegative root combination)."""
    lam = tuple(lam)
    pos_labels = [rd.labels_of_root(r) for r in rd.positive_roots]
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in pos_labels:
                nu = tuple(x - y for x, y in zip(mu, a))
                if all(x >= 0 for x in nu) and nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, reverse=True)


def weight_system(rd: RootDatum, lam: Sequence[int]) -> frozenset:
    """All weights of the irreducible module with highest weight lam, multiplicities ignored."""
    out: set = set()
    for mu in dominant_weights_below(rd, lam):
        out |= orbit_labels(rd, mu)
    return frozenset(out)
