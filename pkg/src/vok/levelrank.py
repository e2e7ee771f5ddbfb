from __future__ import annotations

from itertools import product
from typing import Sequence

Partition = tuple[int, ...]


def _check_label(n: int, m: int, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != n or any(x < 0 for x in a) or sum(a) != m:
        raise ValueError(f"{a} is not in C_{{{n},{m}}}")
    return a


def d_map(n: int, m: int, a: Sequence[int]) -> Partition:
    """(a1+...+a_{n-1}, a2+...+a_{n-1}, ..., a_{n-1}) with zero parts dropped."""
    a = _check_label(n, m, a)
    parts = tuple(sum(a[i:]) for i in range(1, n))
    return tuple(p for p in parts if p)


def degree(n: int, m: int, a: Sequence[int]) -> int:
    return sum(d_map(n, m, a)) % n


def w_map(n: int, m: int, lam: Sequence[int]) -> tuple[int, ...]:
    """Partition in the n x m box -> (m - l1 + ln, l1 - l2, ..., l_{n-1} - ln)."""
    lam = tuple(lam)
    if len(lam) > n or (lam and lam[0] > m) or any(x < y for x, y in zip(lam, lam[1:])) or any(x <= 0 for x in lam):
        raise ValueError(f"{lam} is not a partition inside the {n}x{m} box")
    l = list(lam) + [0] * (n - len(lam))
    return (m - l[0] + l[-1],) + tuple(l[i] - l[i + 1] for i in range(n - 1))


def transpose(lam: Sequence[int]) -> Partition:
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def rotate(t: Sequence[int], s: int) -> tuple[int, ...]:
    """rho^s: right shift by s (negative s shifts left)."""
    t = tuple(t)
    s %= len(t)
    return t[len(t) - s:] + t[: len(t) - s]


def tau(n: int, m: int, a: Sequence[int]) -> tuple[int, ...]:
    """Level-rank map C^0_{n,m} -> C^0_{m,n}."""
    d = d_map(n, m, a)
    size = sum(d)
    if size % n:
        raise ValueError(f"{tuple(a)} has degree {size % n}, not 0")
    return rotate(w_map(m, n, transpose(d)), -(size // n))


def labels(n: int, m: int) -> list[tuple[int, ...]]:
    """C_{n,m} in descending lexicographic order."""
    out = [t for t in product(range(m, -1, -1), repeat=n) if sum(t) == m]
    return out


def degree_zero(n: int, m: int) -> list[tuple[int, ...]]:
    return [a for a in labels(n, m) if degree(n, m, a) == 0]


def levelrank_pairs(n: int, m: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [(a, tau(n, m, a)) for a in degree_zero(n, m)]
