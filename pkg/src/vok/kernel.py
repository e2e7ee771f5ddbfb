"""Exact scalars, small integer linear algebra, F2 spans and the tolerance policy."""
from __future__ import annotations

import os
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Q = Fraction

_TOLERANCES = {"structural": 1e-9, "commutation": 1e-6}


def tolerance(kind: str = "structural") -> float:
    env = os.environ.get("VOK_TOL_" + kind.upper())
    if env is not None:
        return float(env)
    return _TOLERANCES[kind]


def set_tolerance(kind: str, value: float) -> None:
    if value <= 0:
        raise ValueError("tolerance must be positive")
    _TOLERANCES[kind] = float(value)


def close(a: complex, b: complex, tol: float | None = None) -> bool:
    """The single approximate comparison used everywhere."""
    return abs(a - b) <= (tolerance() if tol is None else tol)


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_q(s: str) -> Fraction:
    return Fraction(s.strip())


def qdiv(a, b) -> Fraction:
    if b == 0:
        raise ZeroDivisionError(f"division of {fmt_q(a)} by zero")
    return Fraction(a) / Fraction(b)


def approx_eigenvalues(m) -> list[complex]:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] > 4096:
        raise ValueError("matrix too large")
    if np.array_equal(a, a.T):
        return [complex(v) for v in np.linalg.eigvalsh(a.astype(float))]
    vals = np.linalg.eigvals(a.astype(complex))
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


# ---- rational matrices ----------------------------------------------------

def qmatrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def qinverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def qmatmul(a, b) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def qdet(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def qsolve(a, b) -> list[Fraction] | None:
    """Solve a x = b exactly (a may be rectangular); None if inconsistent."""
    rows, cols = len(a), len(a[0])
    m = [[Fraction(x) for x in a[r]] + [Fraction(b[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


# ---- integer lattices -----------------------------------------------------

def hnf_rows(vectors: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form: a basis of the Z-span of the given integer rows."""
    rows = [list(map(int, v)) for v in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                f = r[col] // p[col]
                r = [x - f * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        if nz:
            p = nz[0]
            if p[col] < 0:
                p = [-x for x in p]
            basis.append(p)
        rows = [r for r in rest if any(r)]
        col += 1
    for i, b in enumerate(basis):
        c = next(j for j, x in enumerate(b) if x)
        for k in range(i):
            f = basis[k][c] // b[c]
            if f:
                basis[k] = [x - f * y for x, y in zip(basis[k], b)]
    return basis


def integer_kernel(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {x in Z^n : a x = 0}."""
    rows, n = len(a), len(a[0])
    # column operations tracked on an identity block: [a; I] reduced by unimodular column moves
    cols = [[int(a[r][c]) for r in range(rows)] + [int(c == j) for j in range(n)] for c in range(n)]
    for r in range(rows):
        nz = [c for c in cols if c[r] != 0]
        zero = [c for c in cols if c[r] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[r]))
            p = nz[0]
            nxt = [p]
            for c in nz[1:]:
                f = c[r] // p[r]
                c = [x - f * y for x, y in zip(c, p)]
                (nxt if c[r] != 0 else zero).append(c)
            nz = nxt
        cols = zero
    return hnf_rows([c[rows:] for c in cols])


def lattice_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# ---- F2 ---------------------------------------------------------------------

class F2Span:
    """Fully reduced echelon basis of a subspace of F2^length; vectors are int bitmasks."""

    def __init__(self, length: int, vectors: Iterable[int] = ()):
        self.length = length
        self._rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def _check(self, v: int) -> None:
        if v < 0 or v >> self.length:
            raise ValueError(f"vector {v:#x} does not fit length {self.length}")

    def reduce(self, v: int) -> int:
        for p, row in self._rows.items():
            if v >> p & 1:
                v ^= row
        return v

    def add(self, v: int) -> bool:
        self._check(v)
        v = self.reduce(v)
        if not v:
            return False
        p = v.bit_length() - 1
        for q in list(self._rows):
            if self._rows[q] >> p & 1:
                self._rows[q] ^= v
        self._rows[p] = v
        self._rows = dict(sorted(self._rows.items(), reverse=True))
        return True

    def __contains__(self, v: int) -> bool:
        self._check(v)
        return self.reduce(v) == 0

    @property
    def basis(self) -> tuple[int, ...]:
        return tuple(self._rows.values())

    @property
    def dim(self) -> int:
        return len(self._rows)

    def elements(self) -> list[int]:
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return sorted(out)


def f2_span_and_solve(vectors: Sequence[Sequence[int]]) -> F2Span:
    """Span of bit-sequence vectors; all must share one length."""
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise ValueError(f"mixed vector lengths {sorted(lengths)}")
    length = lengths.pop() if lengths else 0
    return F2Span(length, (bits_to_int(v) for v in vectors))


def bits_to_int(bits: Sequence[int]) -> int:
    return sum((int(b) & 1) << i for i, b in enumerate(bits))


def int_to_bits(v: int, length: int) -> tuple[int, ...]:
    return tuple(v >> i & 1 for i in range(length))
