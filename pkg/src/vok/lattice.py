"""Even lattices: A_n models, cosets mod 2L, F2 quadratic spaces, involutions and twisted weights."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations
from math import floor, ceil, isqrt, sqrt
from typing import Iterator, Sequence

import numpy as np

from .kernel import F2Span, hnf_rows, integer_kernel, qdet, qinverse, qsolve

MAX_COSET_RANK = 10


@dataclass(frozen=True)
class EvenLattice:
    name: str
    basis: tuple[tuple[int, ...], ...]  # rows, ambient integer coordinates
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix is not symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise ValueError("lattice is not even")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    def norm(self, coeffs: Sequence) -> Q:
        g = self.gram
        return sum((Q(x) * g[i][j] * y for i, x in enumerate(coeffs) if x for j, y in enumerate(coeffs) if y), Q(0))

    def pair(self, a: Sequence, b: Sequence) -> Q:
        g = self.gram
        return sum((Q(x) * g[i][j] * y for i, x in enumerate(a) if x for j, y in enumerate(b) if y), Q(0))

    def ambient(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * b[k] for c, b in zip(coeffs, self.basis)) for k in range(self.ambient_dim))

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of an ambient lattice vector in the lattice basis."""
        cols = [[self.basis[i][k] for i in range(self.rank)] for k in range(self.ambient_dim)]
        x = qsolve(cols, list(vec))
        if x is None or any(c.denominator != 1 for c in x):
            raise ValueError(f"{tuple(vec)} is not in {self.name}")
        return tuple(int(c) for c in x)


def lattice_from_basis(name: str, basis: Sequence[Sequence[int]]) -> EvenLattice:
    basis = tuple(tuple(int(x) for x in b) for b in basis)
    gram = tuple(tuple(sum(x * y for x, y in zip(a, b)) for b in basis) for a in basis)
    return EvenLattice(name, basis, gram)


def build_An(n: int) -> EvenLattice:
    """Sum-zero vectors of Z^{n+1} with simple roots e_i - e_{i+1}."""
    if n <= 0:
        raise ValueError("A_n needs n >= 1")
    basis = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)) for i in range(n)]
    return lattice_from_basis(f"A{n}", basis)


def direct_sum(*lats: EvenLattice) -> EvenLattice:
    dims = [l.ambient_dim for l in lats]
    basis = []
    for i, l in enumerate(lats):
        pre, post = sum(dims[:i]), sum(dims[i + 1:])
        basis += [(0,) * pre + b + (0,) * post for b in l.basis]
    return lattice_from_basis("+".join(l.name for l in lats), basis)


# ---- short and close vectors ---------------------------------------------

def _cholesky_form(gram: Sequence[Sequence]) -> tuple[list[float], list[list[float]]]:
    n = len(gram)
    a = np.array([[float(x) for x in row] for row in gram])
    r = np.linalg.cholesky(a).T  # upper triangular, a = r^T r
    qd = [r[i, i] ** 2 for i in range(n)]
    mu = [[r[i, j] / r[i, i] if j > i else 0.0 for j in range(n)] for i in range(n)]
    return qd, mu


def close_vectors(gram: Sequence[Sequence], bound, center: Sequence | None = None) -> Iterator[tuple[int, ...]]:
    """Integer x with (x - c)^T G (x - c) <= bound; float search with slack, caller re-checks exactly."""
    n = len(gram)
    c = [float(x) for x in center] if center is not None else [0.0] * n
    qd, mu = _cholesky_form(gram)
    slack = 1e-7 * (1 + float(bound))
    x = [0] * n

    def rec(i: int, budget: float) -> Iterator[tuple[int, ...]]:
        centre = c[i] - sum(mu[i][j] * (x[j] - c[j]) for j in range(i + 1, n))
        radius = sqrt(max(budget, 0.0) / qd[i])
        for v in range(ceil(centre - radius - 1e-9), floor(centre + radius + 1e-9) + 1):
            x[i] = v
            rest = budget - qd[i] * (v - centre) ** 2
            if rest < -slack:
                continue
            if i == 0:
                yield tuple(x)
            else:
                yield from rec(i - 1, rest)

    yield from rec(n - 1, float(bound) + slack)


def short_vectors(lat: EvenLattice, bound: int) -> list[tuple[tuple[int, ...], int]]:
    """All (coeffs, norm) with norm <= bound, exact."""
    out = []
    for x in close_vectors(lat.gram, bound):
        nm = int(lat.norm(x))
        if nm <= bound:
            out.append((x, nm))
    return out


def roots(lat: EvenLattice) -> list[tuple[int, ...]]:
    return sorted(x for x, nm in short_vectors(lat, 2) if nm == 2)


# ---- cosets of 2L ---------------------------------------------------------

@dataclass(frozen=True)
class CosetClass:
    key: int  # bitmask of coefficient parities
    coefficients: tuple[int, ...]
    representative: tuple[int, ...]  # ambient coordinates
    min_norm: int
    min_vector_count: int


def parity_key(coeffs: Sequence[int]) -> int:
    return sum((c & 1) << i for i, c in enumerate(coeffs))


@lru_cache(maxsize=None)
def cosets_mod2(lat: EvenLattice, bound: int = 10) -> tuple[CosetClass, ...]:
    if lat.rank > MAX_COSET_RANK:
        raise ValueError(f"rank {lat.rank} exceeds the coset enumeration limit {MAX_COSET_RANK}")
    best: dict[int, list] = {}
    for x, nm in short_vectors(lat, bound):
        k = parity_key(x)
        cur = best.get(k)
        if cur is None or nm < cur[0] or (nm == cur[0] and x < cur[1]):
            best[k] = [nm, x, (cur[2] + 1) if cur is not None and nm == cur[0] else 1]
        elif nm == cur[0]:
            cur[2] += 1
    missing = (1 << lat.rank) - len(best)
    if missing:
        raise ValueError(f"{missing} classes of {lat.name}/2{lat.name} have no vector of norm <= {bound}")
    out = [CosetClass(k, x, lat.ambient(x), nm, cnt) for k, (nm, x, cnt) in best.items()]
    return tuple(sorted(out, key=lambda c: (c.min_norm, c.key)))


def norm_distribution(classes: Sequence[CosetClass]) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in classes:
        out[c.min_norm] = out.get(c.min_norm, 0) + 1
    return dict(sorted(out.items()))


def compare_distribution(found: dict[int, int], table: dict[int, int]) -> dict:
    norms = sorted(set(found) | set(table))
    diffs = {n: found.get(n, 0) - table.get(n, 0) for n in norms if found.get(n, 0) != table.get(n, 0)}
    return {
        "found_total": sum(found.values()),
        "table_total": sum(table.values()),
        "agree": not diffs,
        "differences": diffs,
    }


# ---- F2 quadratic spaces ----------------------------------------------------

@dataclass(frozen=True)
class QuadraticSpace:
    dim: int
    half_diag: tuple[int, ...]  # G_ii / 2 mod 2
    rows: tuple[int, ...]  # bitmask of G_ij mod 2 per row

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]]) -> "QuadraticSpace":
        n = len(gram)
        if any(gram[i][i] % 2 for i in range(n)):
            raise ValueError("quadratic form needs an even diagonal")
        rows = tuple(sum((gram[i][j] & 1) << j for j in range(n)) for i in range(n))
        return cls(n, tuple((gram[i][i] // 2) & 1 for i in range(n)), rows)

    def b(self, x: int, y: int) -> int:
        s = 0
        i = 0
        while x:
            if x & 1:
                s ^= bin(self.rows[i] & y).count("1") & 1
            x >>= 1
            i += 1
        return s

    def q(self, x: int) -> int:
        s = 0
        bits = [i for i in range(self.dim) if x >> i & 1]
        for i in bits:
            s += self.half_diag[i]
        for i, j in combinations(bits, 2):
            s += self.rows[i] >> j & 1
        return s & 1

    def totally_singular(self, vectors: Sequence[int]) -> bool:
        return all(self.q(v) == 0 for v in vectors) and all(self.b(u, v) == 0 for u, v in combinations(vectors, 2))


def f2_quadratic(lat: EvenLattice) -> QuadraticSpace:
    return QuadraticSpace.from_gram(lat.gram)


def max_totally_singular(space: QuadraticSpace, avoid: F2Span | None = None) -> F2Span:
    """A maximal totally singular subspace, meeting `avoid` trivially when given.

    Without `avoid` a greedy pass suffices for a nondegenerate form, since every
    totally singular subspace extends to one of maximal dimension. With `avoid`
    the search backtracks until it reaches that dimension.
    """
    if space.dim > 16:
        raise ValueError("search is limited to dimension 16")
    singular = [v for v in range(1, 1 << space.dim) if space.q(v) == 0]
    chosen: list[int] = []
    for v in singular:
        if v not in F2Span(space.dim, chosen) and all(space.b(v, c) == 0 for c in chosen):
            chosen.append(v)
    if avoid is None:
        return F2Span(space.dim, chosen)
    target = len(chosen)
    base = list(avoid.basis)

    def search(start: int, picked: list[int]) -> list[int] | None:
        if len(picked) == target:
            return picked
        span = F2Span(space.dim, picked + base)
        for idx in range(start, len(singular)):
            v = singular[idx]
            if v in span or any(space.b(v, c) for c in picked):
                continue
            found = search(idx + 1, picked + [v])
            if found is not None:
                return found
        return None

    found = search(0, [])
    if found is None:
        raise RuntimeError("no totally singular complement found")
    return F2Span(space.dim, found)


# ---- involutions and twisted lowest weights --------------------------------

@dataclass(frozen=True)
class Isometry:
    matrix: tuple[tuple[int, ...], ...]  # acts on coefficient columns
    order: int = 2


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def check_isometry(lat: EvenLattice, sigma: Isometry) -> None:
    s = [list(r) for r in sigma.matrix]
    n = lat.rank
    if len(s) != n:
        raise ValueError("isometry size does not match the lattice rank")
    st = [list(r) for r in zip(*s)]
    if _matmul(_matmul(st, [list(r) for r in lat.gram]), s) != [list(r) for r in lat.gram]:
        raise ValueError("matrix does not preserve the gram matrix")
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(sigma.order):
        p = _matmul(p, s)
    if p != [[int(i == j) for j in range(n)] for i in range(n)]:
        raise ValueError(f"matrix does not have order dividing {sigma.order}")
    if sigma.order != 2:
        raise ValueError("only involutions are supported")


def swap_isometry(rank: int) -> Isometry:
    """Exchange the two summands of L + L, each of the given rank."""
    n = 2 * rank
    m = [[int(j == (i + rank) % n) for j in range(n)] for i in range(n)]
    return Isometry(tuple(map(tuple, m)))


def scalar_isometry(rank: int, sign: int) -> Isometry:
    return Isometry(tuple(tuple(sign * int(i == j) for j in range(rank)) for i in range(rank)))


def eigenlattice_data(lat: EvenLattice, sigma: Isometry) -> dict:
    check_isometry(lat, sigma)
    n = lat.rank
    s = sigma.matrix
    plus = [[s[i][j] + (i == j) for j in range(n)] for i in range(n)]
    minus = [[(i == j) - s[i][j] for j in range(n)] for i in range(n)]
    big_n = integer_kernel(plus)
    big_m = hnf_rows([list(col) for col in zip(*minus)])
    h0 = integer_kernel(minus)
    index = 1
    if big_n:
        gn = [[lat.pair(a, b) for b in big_n] for a in big_n]
        gm = [[lat.pair(a, b) for b in big_m] for a in big_m]
        ratio = qdet(gm) / qdet(gn)
        index = isqrt(int(ratio))
        if index * index != ratio:
            raise ArithmeticError("index of M in N is not integral")
    return {
        "h0_basis": h0,
        "h1_basis": big_n,
        "N": big_n,
        "M": big_m,
        "rankN": len(big_n),
        "index_M_in_N": index,
        "M_in_N": all(qsolve([list(c) for c in zip(*big_n)], m) is not None for m in big_m) if big_m else True,
    }


@dataclass(frozen=True)
class TwistedWeightClass:
    representative: tuple[Q, ...]  # P0 of a dual vector, in lattice coefficients
    n_lambda: Q
    weight: Q


def _dual_quotient_reps(lat: EvenLattice) -> list[list[Q]]:
    h = hnf_rows(lat.gram)
    diag = [row[next(j for j, x in enumerate(row) if x)] for row in h]
    ginv = qinverse(lat.gram)
    reps = []
    ranges = [range(d) for d in diag]
    from itertools import product

    for y in product(*ranges):
        reps.append([sum((ginv[i][j] * y[j] for j in range(lat.rank)), Q(0)) for i in range(lat.rank)])
    return reps


def twisted_weight_classes(lat: EvenLattice, sigma: Isometry) -> list[TwistedWeightClass]:
    data = eigenlattice_data(lat, sigma)
    n = lat.rank
    s = sigma.matrix
    rank_n = data["rankN"]
    gens2 = hnf_rows([[s[i][j] + (i == j) for i in range(n)] for j in range(n)])  # 2 P0(L)
    if not gens2:
        return [TwistedWeightClass(tuple(Q(0) for _ in range(n)), Q(0), Q(rank_n, 16))]
    basis = [[Q(x, 2) for x in g] for g in gens2]
    cols = [list(c) for c in zip(*basis)]
    gram_b = [[lat.pair(a, b) for b in basis] for a in basis]

    def coords(v):
        z = qsolve(cols, v)
        if z is None:
            raise ArithmeticError("vector outside the fixed space")
        return z

    classes: list[tuple[list[Q], list[Q]]] = []
    for x in _dual_quotient_reps(lat):
        p = [(x[i] + sum(s[i][j] * x[j] for j in range(n))) / 2 for i in range(n)]
        c = coords(p)
        c = [ci - floor(ci) for ci in c]
        if all(any(ci != cj for ci, cj in zip(c, other)) for _, other in classes):
            classes.append((p, c))
    out = []
    for _, c in classes:
        centre = [-ci for ci in c]
        start = [-round(ci) for ci in c]
        bound = sum((Q(a + ci) * gram_b[i][j] * (b + cj) for i, (a, ci) in enumerate(zip(start, c))
                     for j, (b, cj) in enumerate(zip(start, c))), Q(0))
        best = bound
        best_z = start
        for z in close_vectors(gram_b, bound, centre):
            v = sum((Q(z[i] + c[i]) * gram_b[i][j] * (z[j] + c[j]) for i in range(len(c)) for j in range(len(c))), Q(0))
            if v < best or (v == best and list(z) < best_z):
                best, best_z = v, list(z)
        rep = tuple(sum((Q(best_z[k] + c[k]) * basis[k][i] for k in range(len(c))), Q(0)) for i in range(n))
        out.append(TwistedWeightClass(rep, best, Q(rank_n, 16) + best / 2))
    return sorted(out, key=lambda t: (t.weight, t.representative))


# ---- the Phi / Psi decomposition of A8^3 --------------------------------------

def _block(v: int, i: int, width: int) -> int:
    return v << (i * width)


def build_phi_psi(x_span: F2Span, y_span: F2Span, base: EvenLattice | None = None) -> dict:
    base = base or build_An(8)
    r = base.rank
    space = f2_quadratic(base)
    if F2Span(r, list(x_span.basis) + list(y_span.basis)).dim != r:
        raise ValueError("X + Y does not span the whole quotient")
    big = f2_quadratic(direct_sum(base, base, base))
    units = [1 << i for i in range(r)]

    def mu(i: int, j: int, v: int) -> int:
        return _block(v, i, r) | _block(v, j, r)

    def eta(v: int) -> int:
        return _block(v, 0, r) | _block(v, 1, r) | _block(v, 2, r)

    phi = [mu(0, 1, u) for u in units] + [eta(v) for v in x_span.basis]
    psi = [mu(1, 2, u) for u in units] + [eta(v) for v in y_span.basis]
    phi_span, psi_span = F2Span(3 * r, phi), F2Span(3 * r, psi)
    # exact pairing of integral lifts: mu_12(a) = (a, -a, 0), eta(c) = (c, c, c)
    triple = direct_sum(base, base, base)
    lifts_mu = [tuple(int(i == j) for j in range(r)) + tuple(-int(i == j) for j in range(r)) + (0,) * r for i in range(r)]
    lifts_eta = [tuple((v >> j) & 1 for j in range(r)) * 3 for v in list(x_span.basis) + list(y_span.basis)]
    orth = all(triple.pair(m, e) == 0 for m in lifts_mu for e in lifts_eta)
    return {
        "X_totally_singular": space.totally_singular(list(x_span.basis)),
        "Y_totally_singular": space.totally_singular(list(y_span.basis)),
        "phi_dim": phi_span.dim,
        "psi_dim": psi_span.dim,
        "phi_totally_singular": big.totally_singular(list(phi_span.basis)),
        "psi_totally_singular": big.totally_singular(list(psi_span.basis)),
        "phi_plus_psi_dim": F2Span(3 * r, phi + psi).dim,
        "mu_eta_orthogonal": orth,
    }
