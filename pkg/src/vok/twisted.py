"""Omega_1 on the theta-twisted top space, modeled on the free space over A8/2A8."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

import numpy as np

from .kernel import F2Span, approx_eigenvalues, tolerance
from .lattice import (
    CosetClass,
    EvenLattice,
    QuadraticSpace,
    build_An,
    cosets_mod2,
    f2_quadratic,
    max_totally_singular,
    parity_key,
    roots,
)

OMEGA_BASE = Q(5, 4)  # (omega_E)_1 + 3/4 (omega_P)_1 = 8/16 + 3/4
OMEGA_SCALE = 192  # 12 * 16


@dataclass(frozen=True, eq=False)
class CosetBasisSpace:
    lattice: EvenLattice
    classes: tuple[CosetClass, ...]
    roots: tuple[tuple[int, ...], ...]
    quad: QuadraticSpace
    index: dict[int, int]  # class key -> basis position

    @property
    def size(self) -> int:
        return len(self.classes)

    def pos(self, key: int) -> int:
        return self.index[key]

    def parity(self, a_key: int, b_key: int) -> int:
        return self.quad.b(a_key, b_key)

    def family(self, norm: int) -> list[int]:
        """Keys of the classes with the given minimal norm (C_norm)."""
        return [c.key for c in self.classes if c.min_norm == norm]

    def key_of(self, ambient: Sequence[int]) -> int:
        return parity_key(self.lattice.coordinates(ambient))


@lru_cache(maxsize=None)
def coset_space() -> CosetBasisSpace:
    lat = build_An(8)
    classes = cosets_mod2(lat)
    return CosetBasisSpace(lat, classes, tuple(roots(lat)), f2_quadratic(lat), {c.key: i for i, c in enumerate(classes)})


def root_parity_counts(space: CosetBasisSpace, key: int) -> tuple[int, int]:
    odd = sum(space.parity(parity_key(a), key) for a in space.roots)
    return len(space.roots) - odd, odd


def parity_well_defined(space: CosetBasisSpace, rng: random.Random, samples: int = 5) -> bool:
    """Recount root parities on random representatives beta + 2z with the exact integer pairing."""
    g = space.lattice.gram
    ga = [[sum(g[i][j] * a[j] for j in range(len(a))) for i in range(len(a))] for a in space.roots]
    for c in space.classes:
        want = root_parity_counts(space, c.key)
        for _ in range(samples):
            rep = [x + 2 * rng.randint(-2, 2) for x in c.coefficients]
            odd = sum(sum(x * y for x, y in zip(row, rep)) % 2 for row in ga)
            if (len(space.roots) - odd, odd) != want:
                return False
    return True


@lru_cache(maxsize=None)
def build_M() -> np.ndarray:
    """Integer matrix of 16 * sum over roots of the three e_mu operators; columns are t_beta."""
    sp = coset_space()
    n = sp.size
    m = np.zeros((n, n), dtype=np.int64)
    root_keys = [parity_key(a) for a in sp.roots]
    for j, c in enumerate(sp.classes):
        for ak in root_keys:
            if sp.parity(ak, c.key):
                m[j, j] -= 1
                m[sp.pos(ak ^ c.key), j] += 2
            else:
                m[j, j] += 1
    m.setflags(write=False)
    return m


def omega_weight(m: int) -> Q:
    return OMEGA_BASE - Q(m, OMEGA_SCALE)


def _pm_vector(sp: CosetBasisSpace, norm: int, mu: Sequence[int], plus: int, minus: int) -> np.ndarray:
    mu_key = sp.key_of(mu)
    v = np.zeros(sp.size, dtype=np.int64)
    for k in sp.family(norm):
        v[sp.pos(k)] = minus if sp.parity(k, mu_key) else plus
    return v


def _shape(n: int) -> tuple[int, ...]:
    return (1,) * n + (-1,) * n + (0,) * (9 - 2 * n)


def build_candidate_vectors() -> dict[str, np.ndarray]:
    sp = coset_space()
    v0 = np.zeros(sp.size, dtype=np.int64)
    v0[sp.pos(0)] = 1
    v1 = _pm_vector(sp, 2, _shape(1), 1, -3)
    v1[sp.pos(sp.key_of(_shape(1)))] = 21
    return {
        "v0": v0,
        "v1": v1,
        "v2": _pm_vector(sp, 2, _shape(2), 10, -7),
        "v3": _pm_vector(sp, 2, _shape(3), 6, -7),
        "v4": _pm_vector(sp, 8, _shape(4), 5, -1),
    }


# eigenvalues claimed for the five vectors
CLAIMED = {"v0": 72, "v1": 8, "v2": 4, "v3": 20, "v4": 36}


def verify_eigen(m: np.ndarray, v: np.ndarray, eigenvalue: int) -> bool:
    if not v.any():
        raise ValueError("zero vector")
    return bool(np.array_equal(m @ v, eigenvalue * v))


def rayleigh_report(m: np.ndarray, v: np.ndarray) -> dict:
    """Where M v lands relative to v: exact ratio on the support when proportional."""
    mv = m @ v
    support = np.flatnonzero(v)
    ratios = sorted({Q(int(mv[i]), int(v[i])) for i in support})
    return {
        "support": int(len(support)),
        "leaks_off_support": bool(np.any(mv[v == 0])),
        "ratios_on_support": ratios,
    }


def full_spectrum(m: np.ndarray | None = None) -> dict:
    m = build_M() if m is None else m
    vals = approx_eigenvalues(m.astype(float))
    tol = tolerance("commutation")
    ints = []
    worst = 0.0
    for z in vals:
        r = round(z.real)
        worst = max(worst, abs(z - r))
        ints.append(r)
    mult = dict(sorted(Counter(ints).items()))
    return {
        "all_integral": worst < tol,
        "max_distance_to_integer": worst,
        "multiplicities": mult,
        "omega_weights": {str(omega_weight(k)): v for k, v in mult.items()},
    }


def e_alpha_action(space: CosetBasisSpace, y: F2Span, alpha: Sequence[int], beta_key: int, gamma_key: int) -> dict:
    """E_alpha t_(beta, gamma), gamma taken in Y mod 2A8.

    Returns the terms keyed by (beta class, gamma class) and whether the new gamma
    stays in Y; outside Y it lives in Y + <alpha>.
    """
    if gamma_key not in y:
        raise ValueError("gamma is not in Y")
    ak = parity_key(alpha)
    new_gamma = gamma_key ^ ak
    if space.parity(ak, beta_key):
        terms = {(beta_key ^ ak, new_gamma): 2, (beta_key, new_gamma): -1}
    else:
        terms = {(beta_key, new_gamma): 1}
    return {"terms": terms, "gamma_in_Y": new_gamma in y}


def top_space(space: CosetBasisSpace | None = None) -> dict:
    sp = space or coset_space()
    quad = f2_quadratic(sp.lattice)
    x = max_totally_singular(quad)
    y = max_totally_singular(quad, avoid=x)
    indices = [(0, g) for g in y.elements()]
    m = build_M()
    weights = {omega_weight(int(m[sp.pos(0), sp.pos(0)]))}
    return {"dimension": len(set(indices)), "omega_weights": sorted(weights), "Y": y}


def combine_twisted_weights(a: Sequence, b: Sequence, grid) -> list[Q]:
    grid = Q(grid)
    if grid <= 0:
        raise ValueError("grid must be positive")
    sums = {Q(x) + Q(y) for x in a for y in b}
    return sorted(s for s in sums if (s / grid).denominator == 1)


CANDIDATE_WEIGHTS = (Q(7, 8), Q(29, 24), Q(59, 48), Q(55, 48), Q(17, 16))
SWAP_A2A2_WEIGHTS = (Q(1, 8), Q(7, 24), Q(7, 24))
