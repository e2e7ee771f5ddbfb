"""Orbifold dimension bookkeeping, the h^vee/k classifier, and inner-automorphism checks."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as Q
from math import lcm
from typing import Iterable, Sequence

from .affine import conformal_weight, enumerate_level_weights
from .roots import (
    AlgebraId,
    build_root_datum,
    inner,
    orbit_labels,
    parse_algebra,
    root_weight_pairing,
    weight_system,
)


def orbifold_dim(dim_v: int, dim_fixed: int, dim_half: int) -> int:
    if min(dim_v, dim_fixed, dim_half) < 0:
        raise ValueError("dimensions must be nonnegative")
    out = 3 * dim_fixed + 24 * (1 - dim_half) - dim_v
    if out < 0:
        raise ValueError(f"infeasible: formula gives negative dimension {out}")
    return out


def ratio_for_dim(d: int) -> Q:
    if d <= 24:
        raise ValueError("need dim > 24 for a semisimple weight-one algebra")
    return Q(d - 24, 24)


def lie_numbers(g: AlgebraId) -> tuple[int, int]:
    """(dimension, dual Coxeter number) by closed formula, for any rank."""
    n = g.rank
    return {
        "A": (n * (n + 2), n + 1),
        "B": (n * (2 * n + 1), 2 * n - 1),
        "C": (n * (2 * n + 1), n + 1),
        "D": (n * (2 * n - 1), 2 * n - 2),
        "E": {6: (78, 12), 7: (133, 18), 8: (248, 30)}.get(n, (0, 0)),
        "F": (52, 9),
        "G": (14, 4),
    }[g.series]


def canonical_name(g: AlgebraId) -> str:
    # B2 and C2 are the same algebra; the classifier reports C2
    return "C2" if (g.series, g.rank) == ("B", 2) else str(g)


@dataclass(frozen=True, order=True)
class LieSummand:
    algebra: AlgebraId
    level: int

    def __str__(self) -> str:
        return f"{canonical_name(self.algebra)},{self.level}"


@dataclass(frozen=True)
class CandidateAlgebra:
    summands: tuple[LieSummand, ...]

    @property
    def total_dim(self) -> int:
        return sum(lie_numbers(s.algebra)[0] for s in self.summands)

    def __str__(self) -> str:
        counts = Counter(str(s) for s in self.summands)
        order = sorted(counts, key=lambda n: (-lie_numbers(parse_algebra(n.split(",")[0]))[0], n))
        return "".join(n if counts[n] == 1 else f"{n}^{counts[n]}" for n in order)


def all_algebras(max_rank: int = 9) -> list[AlgebraId]:
    out = []
    for n in range(1, max_rank + 1):
        out.append(AlgebraId("A", n))
        if n >= 2:
            out.append(AlgebraId("B", n))
        if n >= 3:  # C2 is B2
            out.append(AlgebraId("C", n))
        if n >= 4:
            out.append(AlgebraId("D", n))
    out += [AlgebraId("E", 6), AlgebraId("E", 7), AlgebraId("E", 8), AlgebraId("F", 4), AlgebraId("G", 2)]
    return sorted(set(out))


def simple_factor_pool(ratio: Q, max_dim: int | None = None, max_rank: int = 9) -> list[LieSummand]:
    out = []
    for g in all_algebras(max_rank):
        dim, hv = lie_numbers(g)
        k = Q(hv) / ratio
        if k.denominator == 1 and k > 0 and (max_dim is None or dim <= max_dim):
            out.append(LieSummand(g, int(k)))
    return out


def enumerate_candidates(d: int, max_rank: int = 9) -> list[CandidateAlgebra]:
    pool = sorted(simple_factor_pool(ratio_for_dim(d), d, max_rank), key=lambda s: (lie_numbers(s.algebra)[0], s))
    dims = [lie_numbers(s.algebra)[0] for s in pool]
    out: list[CandidateAlgebra] = []

    def rec(start: int, left: int, acc: list[LieSummand]) -> None:
        if left == 0:
            out.append(CandidateAlgebra(tuple(sorted(acc))))
            return
        for i in range(start, len(pool)):
            if dims[i] > left:
                break
            acc.append(pool[i])
            rec(i, left - dims[i], acc)
            acc.pop()

    rec(0, d, [])
    return sorted(out, key=str)


# ---- involution fixed-point table ---------------------------------------------

U1 = "U1"


@dataclass(frozen=True)
class InvolutionRow:
    source: tuple[str, ...]
    image: tuple[str, ...]
    kind: str


FIXED_POINT_TABLE = (
    InvolutionRow(("A8",), ("B4",), "outer"),
    InvolutionRow(("A2", "A2"), ("A2",), "swap"),
    InvolutionRow(("F4",), ("B4",), "inner by Lambda4"),
    InvolutionRow(("E7",), ("A7",), "inner"),
    InvolutionRow(("A5",), ("A2", "A2", U1), "inner"),
)


def _type_dim(name: str) -> int:
    return 1 if name == U1 else lie_numbers(parse_algebra(name))[0]


def parse_type(text: str) -> Counter:
    """'B4A2', 'A7A2^2U1' -> multiset of simple types (and U1)."""
    out: Counter = Counter()
    pos = 0
    for m in re.finditer(r"(U1|[A-G]\d+)(?:\^(\d+))?", text):
        if m.start() != pos:
            raise ValueError(f"cannot parse Lie type {text!r}")
        out[m.group(1)] += int(m.group(2) or 1)
        pos = m.end()
    if pos != len(text) or not out:
        raise ValueError(f"cannot parse Lie type {text!r}")
    return out


def type_dim(t: Counter) -> int:
    return sum(_type_dim(n) * c for n, c in t.items())


def fixed_point_types(types: Sequence[str]) -> set[tuple[tuple[str, int], ...]]:
    """All fixed subalgebra types reachable by applying table rows (or identity) to the summands."""
    results: set = set()

    def rec(rest: Counter, acc: Counter) -> None:
        if not +rest:
            results.add(tuple(sorted((+acc).items())))
            return
        first = min(n for n, c in rest.items() if c > 0)
        rest1 = rest.copy()
        rest1[first] -= 1
        acc1 = acc.copy()
        acc1[first] += 1
        rec(rest1, acc1)
        for row in FIXED_POINT_TABLE:
            src = Counter(row.source)
            if src[first] and all(rest[n] >= c for n, c in src.items()):
                rec(rest - src, acc + Counter(row.image))

    rec(Counter(types), Counter())
    return results


def subalgebra_filter(c: CandidateAlgebra, required: str) -> bool:
    req = parse_type(required)
    images = {n for row in FIXED_POINT_TABLE for n in row.image}
    unknown = sorted(set(req) - images)
    if unknown:
        raise ValueError(f"no involution in the fixed-point table produces {', '.join(unknown)}")
    types = [canonical_name(s.algebra) for s in c.summands]
    return tuple(sorted(req.items())) in fixed_point_types(types)


def classify(d: int, required: str | None = None, max_rank: int = 9) -> list[CandidateAlgebra]:
    cands = enumerate_candidates(d, max_rank)
    if required is not None:
        cands = [c for c in cands if subalgebra_filter(c, required)]
    return cands


# ---- inner automorphisms -----------------------------------------------------

def min_pairing(g: AlgebraId, h: Sequence, lam: Sequence[int]) -> Q:
    """min over the Weyl orbit of lam of (h | w lam); vertices of the weight polytope suffice."""
    rd = build_root_datum(g)
    return min(inner(rd, h, mu) for mu in orbit_labels(rd, lam))


def min_pairing_full(g: AlgebraId, h: Sequence, lam: Sequence[int]) -> Q:
    rd = build_root_datum(g)
    return min(inner(rd, h, mu) for mu in weight_system(rd, lam))


def _denominators_lcm(values: Iterable[Q]) -> int:
    n = 1
    for v in values:
        n = lcm(n, Q(v).denominator)
    return n


def integral_pairs(g1: AlgebraId, k1: int, g2: AlgebraId, k2: int) -> list[tuple[tuple[int, ...], tuple[int, ...], Q]]:
    out = []
    for a in enumerate_level_weights(g1, k1):
        h1 = conformal_weight(g1, k1, a.labels)
        for b in enumerate_level_weights(g2, k2):
            t = h1 + conformal_weight(g2, k2, b.labels)
            if t.denominator == 1:
                out.append((a.labels, b.labels, t))
    return out


F4 = AlgebraId("F", 4)
A2 = AlgebraId("A", 2)
LAMBDA4 = (0, 0, 0, 1)


def integral_pairs_F4A2() -> list[tuple[tuple[int, ...], tuple[int, ...], Q]]:
    return integral_pairs(F4, 6, A2, 2)


def inner_order(g: AlgebraId, h: Sequence) -> int:
    """Smallest n with n (h|x) integral for every fundamental weight and simple root x."""
    rd = build_root_datum(g)
    vals = [inner(rd, h, tuple(int(i == j) for j in range(rd.rank))) for i in range(rd.rank)]
    vals += [root_weight_pairing(rd, h, tuple(int(i == j) for j in range(rd.rank))) for i in range(rd.rank)]
    return _denominators_lcm(vals)


def fixed_dim(g: AlgebraId, h: Sequence) -> int:
    """dim of the centralizer of exp(2 pi i h): rank plus roots with (h|alpha) integral."""
    rd = build_root_datum(g)
    return rd.rank + sum(1 for r in rd.roots if root_weight_pairing(rd, h, r).denominator == 1)


def twisted_halfweight_check(level: int = 6) -> dict:
    rd = build_root_datum(F4)
    h = LAMBDA4
    hh = inner(rd, h, h)
    rows = []
    for l1, l2, total in integral_pairs_F4A2():
        m_orbit = min_pairing(F4, h, l1)
        m_full = min_pairing_full(F4, h, l1)
        rows.append({
            "lambda1": l1,
            "lambda2": l2,
            "l": total,
            "min_orbit": m_orbit,
            "min_full": m_full,
            "weight": total + m_full + level * hh / 2,
            "weight_unscaled_norm": total + m_full + hh / 2,
        })
    root_min = min(root_weight_pairing(rd, h, r) for r in rd.roots)
    pairings = [inner(rd, h, tuple(int(i == j) for j in range(4))) for i in range(4)]
    weights = [r["weight"] for r in rows]
    return {
        "h_norm_lie": hh,
        "h_norm_voa": level * hh,
        "fundamental_pairings": pairings,
        "order": inner_order(F4, h),
        "min_root_pairing": root_min,
        "root_condition": root_min >= -1,
        "orbit_equals_full": all(r["min_orbit"] == r["min_full"] for r in rows),
        "rows": rows,
        "all_positive": all(w > 0 for w in weights),
        "no_half": all(w != Q(1, 2) for w in weights),
        "fixed_dim_F4": fixed_dim(F4, h),
        "fixed_dim_total": fixed_dim(F4, h) + build_root_datum(A2).dimension,
    }


E7 = AlgebraId("E", 7)
A5 = AlgebraId("A", 5)


def e7a5_battery() -> dict:
    re7, ra5 = build_root_datum(E7), build_root_datum(A5)
    h1 = (0, Q(1, 2), 0, 0, 0, 0, 0)
    h2 = (0, 0, Q(1, 2), 0, 0)
    hh = 3 * inner(re7, h1, h1) + 1 * inner(ra5, h2, h2)
    root_vals = [2 * root_weight_pairing(re7, h1, r) for r in re7.roots] + [2 * root_weight_pairing(ra5, h2, r) for r in ra5.roots]
    pairs = integral_pairs(E7, 3, A5, 1)
    pair_vals = [2 * (inner(re7, h1, a) + inner(ra5, h2, b)) for a, b, _ in pairs]
    fund = [inner(re7, h1, tuple(int(i == j) for j in range(7))) for i in range(7)]
    fund += [inner(ra5, h2, tuple(int(i == j) for j in range(5))) for i in range(5)]
    fixed = fixed_dim(E7, h1) + fixed_dim(A5, h2)
    table_fixed = type_dim(parse_type("A7A2^2U1"))
    dim_w = re7.dimension + ra5.dimension
    return {
        "dim_E7A5": dim_w,
        "h_norm_voa": hh,
        "h_norm_integral": hh.denominator == 1,
        "roots_order_two": all(v.denominator == 1 for v in root_vals),
        "integral_pair_count": len(pairs),
        "pairs_order_two": all(v.denominator == 1 for v in pair_vals),
        "fundamental_pairings": fund,
        "fixed_dim": fixed,
        "table_fixed_dim": table_fixed,
        "orbifold_dim": orbifold_dim(dim_w, fixed, 0),
        "target_dim": 2 * build_root_datum(A2).dimension + build_root_datum(AlgebraId("A", 8)).dimension,
    }
