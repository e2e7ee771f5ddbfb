"""Modular S and T matrices, quantum dimensions and the (A8, 3) modular invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

import numpy as np

from .affine import (
    AffineWeight,
    central_charge,
    conformal_weight,
    conjugate_module,
    enumerate_level_weights,
    simple_current_rotate,
)
from .kernel import tolerance
from .roots import AlgebraId, build_root_datum, parse_algebra, signed_orbit


@dataclass(frozen=True, eq=False)
class ModularData:
    algebra: AlgebraId
    level: int
    labels: tuple[AffineWeight, ...]
    S: np.ndarray
    T: np.ndarray
    conformal_weights: tuple[Q, ...]
    central_charge: Q
    index: dict = field(repr=False)

    def idx(self, a) -> int:
        if isinstance(a, AffineWeight):
            a = a.affine_labels
        return self.index[tuple(a)]

    @property
    def conjugation(self) -> np.ndarray:
        n = len(self.labels)
        c = np.zeros((n, n))
        for i, a in enumerate(self.labels):
            c[i, self.idx(conjugate_module(a))] = 1
        return c


def _a_type_coordinates(labels: Sequence[int]) -> np.ndarray:
    """Traceless epsilon coordinates of lambda + rho for sl_n."""
    shifted = [x + 1 for x in labels]
    x = [sum(shifted[j:]) for j in range(len(shifted))] + [0]
    x = np.array(x, dtype=float)
    return x - x.mean()


def _raw_s_type_a(ws: Sequence[AffineWeight], kappa: int) -> np.ndarray:
    coords = np.array([_a_type_coordinates(w.labels) for w in ws])
    n = len(ws)
    phase = np.exp(-2j * np.pi * np.einsum("ia,jb->ijab", coords, coords) / kappa)
    return np.linalg.det(phase.reshape(n, n, coords.shape[1], coords.shape[1]))


def _raw_s_weyl(g: AlgebraId, ws: Sequence[AffineWeight], kappa: int) -> np.ndarray:
    rd = build_root_datum(g)
    gram = np.array([[float(x) for x in row] for row in rd.weight_gram])
    shifted = np.array([[x + 1 for x in w.labels] for w in ws], dtype=float)
    out = np.zeros((len(ws), len(ws)), dtype=complex)
    for i, w in enumerate(ws):
        orbit = signed_orbit(rd, tuple(x + 1 for x in w.labels))
        pts = np.array(list(orbit.keys()), dtype=float)
        signs = np.array(list(orbit.values()), dtype=float)
        pair = pts @ gram @ shifted.T
        out[i] = signs @ np.exp(-2j * np.pi * pair / kappa)
    return out


def _normalize(raw: np.ndarray) -> np.ndarray:
    """Scale so the vacuum row has unit norm and S_00 is real positive."""
    scale = 1 / np.sqrt(np.sum(np.abs(raw[0]) ** 2))
    phase = raw[0, 0] / abs(raw[0, 0])
    return raw * scale / phase


def compute_S(g: AlgebraId, k: int, method: str = "auto") -> np.ndarray:
    ws = enumerate_level_weights(g, k)
    kappa = k + build_root_datum(g).dual_coxeter
    if method == "auto":
        method = "determinant" if g.series == "A" else "weyl"
    if method == "determinant":
        if g.series != "A":
            raise ValueError("determinant formula is for type A only")
        raw = _raw_s_type_a(ws, kappa)
    elif method == "weyl":
        raw = _raw_s_weyl(g, ws, kappa)
    else:
        raise ValueError(f"unknown S-matrix method {method!r}")
    return _normalize(raw)


def compute_T(g: AlgebraId, k: int) -> np.ndarray:
    c = central_charge(g, k)
    hs = [conformal_weight(g, k, w.labels) for w in enumerate_level_weights(g, k)]
    return np.array([np.exp(2j * np.pi * float((h - c / 24) % 1)) for h in hs])


@lru_cache(maxsize=None)
def modular_data(g: AlgebraId | str, k: int, method: str = "auto") -> ModularData:
    if isinstance(g, str):
        g = parse_algebra(g)
    ws = enumerate_level_weights(g, k)
    return ModularData(
        algebra=g,
        level=k,
        labels=ws,
        S=compute_S(g, k, method),
        T=compute_T(g, k),
        conformal_weights=tuple(conformal_weight(g, k, w.labels) for w in ws),
        central_charge=central_charge(g, k),
        index={w.affine_labels: i for i, w in enumerate(ws)},
    )


def modular_checks(md: ModularData) -> dict:
    s, t = md.S, np.diag(md.T)
    n = len(md.labels)
    eye = np.eye(n)
    s2 = s @ s
    st3 = np.linalg.matrix_power(s @ t, 3)
    return {
        "unitarity": float(np.max(np.abs(s @ s.conj().T - eye))),
        "symmetry": float(np.max(np.abs(s - s.T))),
        "s_squared_vs_conjugation": float(np.max(np.abs(s2 - md.conjugation))),
        "st_cubed_vs_s_squared": float(np.max(np.abs(st3 - s2))),
        "vacuum_row_min_real": float(np.min(s[0].real)),
        "vacuum_row_max_imag": float(np.max(np.abs(s[0].imag))),
    }


def qdim(md: ModularData, a) -> float:
    i = md.idx(a)
    return float((md.S[0, i] / md.S[0, 0]).real)


def glob(md: ModularData) -> float:
    return float(sum(qdim(md, w) ** 2 for w in md.labels))


def extension_check(md_small: ModularData, md_big: ModularData | None, branching: Sequence, glob_big: float | None = None) -> dict:
    """Compare Glob(small) with (qdim of the extension)^2 * Glob(big)."""
    qd = sum(qdim(md_small, b) for b in branching)
    g_small = glob(md_small)
    g_big = glob(md_big) if md_big is not None else float(glob_big)
    return {
        "qdim_extension": qd,
        "glob_small": g_small,
        "glob_big": g_big,
        "glob_small_over_qdim_sq": g_small / qd**2,
        "glob_small_times_qdim_sq": g_small * qd**2,
        "shrinks": abs(g_big - g_small / qd**2),
        "grows": abs(g_big - g_small * qd**2),
    }


# ---- modular invariants of sl_9 at level 3 --------------------------------

FAMILIES = ("A", "D1", "D3", "D9", "E", "Eprime", "Eprimeprime")
# literal Eprimeprime variant, with <Z_(1,0,1,0,0,0,0,1,0)> in the second square; it does not commute with S.
LITERAL = "Eprimeprime_literal"


def _deg(a: Sequence[int]) -> int:
    return sum(i * x for i, x in enumerate(a))


def _rho(a: tuple, j: int) -> tuple:
    j %= len(a)
    return a[len(a) - j:] + a[: len(a) - j]


class _Builder:
    def __init__(self, md: ModularData):
        self.md = md
        self.n = len(md.labels)
        self.X = np.zeros((self.n, self.n), dtype=np.int64)

    def vec(self, *terms: tuple) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for t in terms:
            v[self.md.idx(t)] += 1
        return v

    def bracket(self, a: tuple) -> np.ndarray:
        return self.vec(*(_rho(a, 3 * j) for j in (1, 2, 3)))

    def square(self, u: np.ndarray, mult: int = 1) -> None:
        self.X += mult * np.outer(u, u)

    def cross(self, u: np.ndarray, w: np.ndarray) -> None:
        self.X += np.outer(u, w) + np.outer(w, u)


def build_invariant(family: str, md: ModularData, conjugate: bool = False) -> np.ndarray:
    if md.algebra != AlgebraId("A", 8) or md.level != 3:
        raise ValueError("the invariant families are defined for sl_9 at level 3")
    if family not in FAMILIES and family != LITERAL:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    b = _Builder(md)
    tuples = [w.affine_labels for w in md.labels]
    if family in ("A", "D9"):
        b.X += np.eye(b.n, dtype=np.int64)
    elif family == "D1":
        for a in tuples:
            for j in range(1, 10):
                if (_deg(a) + 6 * j) % 9 == 0:
                    b.X[md.idx(a), md.idx(_rho(a, j))] += 1
    elif family == "D3":
        for a in tuples:
            for j in range(1, 4):
                if (_deg(a) + 18 * j) % 3 == 0:
                    b.X[md.idx(a), md.idx(_rho(a, 3 * j))] += 1
    elif family == "E":
        for i in range(3):
            for a in [(2, 0, 0, 1, 0, 0, 0, 0, 0), (3, 0, 0, 0, 0, 0, 0, 0, 0), (2, 0, 0, 0, 0, 0, 1, 0, 0),
                      (1, 1, 0, 0, 0, 1, 0, 0, 0), (1, 0, 1, 0, 1, 0, 0, 0, 0)]:
                b.square(b.bracket(_rho(a, i)))
            fixed = b.vec(_rho((1, 0, 0, 1, 0, 0, 1, 0, 0), i))
            b.square(fixed, 2)
            b.cross(b.bracket(_rho((0, 0, 1, 1, 1, 0, 0, 0, 0), i)), fixed)
    elif family == "Eprime":
        for i in range(3):
            b.square(b.bracket(_rho((1, 0, 0, 0, 1, 1, 0, 0, 0), i)) + b.bracket(_rho((3, 0, 0, 0, 0, 0, 0, 0, 0), i)))
            b.square(b.bracket(_rho((1, 0, 1, 0, 0, 0, 0, 1, 0), i)), 2)
    else:
        # the twist swaps the rho-orbit classes of (0,1,0,1,0,0,0,0,1) and (1,0,1,0,1,0,0,0,0)
        first = (1, 0, 1, 0, 0, 0, 0, 1, 0) if family == LITERAL else (0, 1, 0, 1, 0, 0, 0, 0, 1)
        b.square(b.bracket((1, 0, 0, 0, 1, 1, 0, 0, 0)) + b.bracket((3, 0, 0, 0, 0, 0, 0, 0, 0)))
        b.square(b.bracket(first) + b.bracket((1, 0, 1, 0, 1, 0, 0, 0, 0)))
        other = sum(b.bracket(_rho((3, 0, 0, 0, 0, 0, 0, 0, 0), i)) + b.bracket(_rho((1, 0, 0, 0, 1, 1, 0, 0, 0), i))
                    for i in (1, 2))
        b.cross(b.bracket((0, 1, 0, 1, 0, 1, 0, 0, 0)), other)
    x = b.X
    if conjugate:
        x = md.conjugation.astype(np.int64) @ x
    return x


def is_physical(x: np.ndarray) -> tuple[bool, list[tuple[int, int]]]:
    diag = np.diag(x)
    bad = [(int(i), int(j)) for i, j in zip(*np.nonzero(x)) if diag[i] == 0 or diag[j] == 0]
    return not bad, bad


def check_invariant(x: np.ndarray, md: ModularData, tol: float | None = None) -> dict:
    if x.shape != md.S.shape:
        raise ValueError(f"invariant of shape {x.shape} does not match {md.S.shape}")
    tol = tolerance("commutation") if tol is None else tol
    xf = x.astype(float)
    rs = float(np.max(np.abs(xf @ md.S - md.S @ xf)))
    rt = float(np.max(np.abs(xf * md.T[None, :] - md.T[:, None] * xf)))
    physical, violations = is_physical(x)
    return {
        "commutes_S": rs <= tol,
        "commutes_T": rt <= tol,
        "nonnegative": bool((x >= 0).all()),
        "vacuum_entry_one": int(x[0, 0]) == 1,
        "physical": physical,
        "max_residual": max(rs, rt),
        "physicality_violations": violations,
    }


def vacuum_row_support(x: np.ndarray, md: ModularData) -> list[tuple[int, ...]]:
    return [md.labels[j].affine_labels for j in np.nonzero(x[0])[0]]


def rotate_label(md: ModularData, a, times: int = 1) -> AffineWeight:
    return simple_current_rotate(md.labels[md.idx(a)], times)


def extended_qdims(x: np.ndarray, md: ModularData) -> list[float]:
    """Quantum dimensions over the extension for the blocks of a block-diagonal invariant.

    Each diagonal block sum_b X_ab qdim(b) / X_aa is divided by the vacuum block's value.
    """
    q = np.array([qdim(md, w) for w in md.labels])
    vac = float(x[0] @ q)
    out = []
    for i in range(len(md.labels)):
        if x[i, i]:
            out.append(float(x[i] @ q) / x[i, i] / vac)
    return out
