from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from vok.roots import (
    AlgebraId,
    Weight,
    build_root_datum,
    dominant_rep,
    dual_weight,
    fundamental,
    parse_algebra,
    reflect,
    signed_orbit,
    weight_inner,
    weight_system,
    weyl_group_order,
    weyl_orbit,
)

# (dim, dual Coxeter number, |W|) from the standard classification tables
STANDARD = {
    "A1": (3, 2, 2), "A2": (8, 3, 6), "A5": (35, 6, 720), "A8": (80, 9, 362880),
    "B2": (10, 3, 8), "B4": (36, 7, 384), "C3": (21, 4, 48), "D4": (28, 6, 192),
    "E6": (78, 12, 51840), "E7": (133, 18, 2903040), "E8": (248, 30, 696729600),
    "F4": (52, 9, 1152), "G2": (14, 4, 12),
}

ALL = [AlgebraId(s, n) for s, ns in {"A": range(1, 10), "B": range(2, 10), "C": range(2, 10), "D": range(4, 10)}.items() for n in ns]
ALL += [AlgebraId("E", n) for n in (6, 7, 8)] + [AlgebraId("F", 4), AlgebraId("G", 2)]


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_standard_numbers(name):
    g = parse_algebra(name)
    rd = build_root_datum(g)
    assert (rd.dimension, rd.dual_coxeter, weyl_group_order(g)) == STANDARD[name]


@pytest.mark.parametrize("g", ALL, ids=str)
def test_root_count_and_long_root_norm(g):
    rd = build_root_datum(g)
    assert 2 * len(rd.positive_roots) + rd.rank == rd.dimension
    assert max(rd.simple_root_norms) == 2
    assert sum(rd.comarks) + 1 == rd.dual_coxeter


def test_parse_errors():
    for bad in ("X3", "D3", "E9", "F5", "A0", "sl9"):
        with pytest.raises(ValueError):
            parse_algebra(bad)
    with pytest.raises(ValueError):
        build_root_datum(AlgebraId("A", 10))


def test_weight_norms():
    a2 = parse_algebra("A2")
    assert weight_inner(fundamental(a2, 1), fundamental(a2, 1)) == Q(2, 3)
    assert fundamental(a2, 2, 3).labels == (0, 3)
    f4 = build_root_datum(parse_algebra("F4"))
    # Bourbaki numbering: alpha_1, alpha_2 long
    assert f4.simple_root_norms == (2, 2, 1, 1)


def test_orbit_sizes():
    a2 = parse_algebra("A2")
    assert len(weyl_orbit(Weight(a2, (1, 0)))) == 3
    assert len(weyl_orbit(Weight(a2, (1, 1)))) == 6
    e8 = parse_algebra("E8")
    assert len(weyl_orbit(Weight(e8, (0, 0, 0, 0, 0, 0, 0, 1)))) == 240


def test_weight_system_of_adjoint():
    rd = build_root_datum(parse_algebra("B2"))
    ws = weight_system(rd, rd.labels_of_root(rd.theta))
    # roots plus zero
    assert len(ws) == len(rd.roots) + 1


def test_dual_weight():
    a8 = parse_algebra("A8")
    assert dual_weight(Weight(a8, (1, 0, 0, 0, 0, 0, 0, 0))).labels == (0, 0, 0, 0, 0, 0, 0, 1)
    e8 = parse_algebra("E8")
    lab = (0, 1, 0, 0, 0, 0, 0, 0)
    assert dual_weight(Weight(e8, lab)).labels == lab


@given(st.sampled_from(["A3", "B3", "C3", "G2", "F4"]), st.lists(st.integers(0, 2), min_size=4, max_size=4), st.integers(0, 3))
def test_reflection_preserves_norm_and_orbit(name, raw, i):
    g = parse_algebra(name)
    rd = build_root_datum(g)
    lam = tuple(raw[: g.rank])
    i %= g.rank
    mu = reflect(rd, lam, i)
    assert weight_inner(Weight(g, lam), Weight(g, lam)) == _norm(rd, mu)
    assert reflect(rd, mu, i) == lam
    assert dominant_rep(rd, mu) == lam


def _norm(rd, mu):
    return sum(rd.weight_gram[i][j] * mu[i] * mu[j] for i in range(rd.rank) for j in range(rd.rank))


def test_signed_orbit_of_rho_is_regular():
    rd = build_root_datum(parse_algebra("A2"))
    orb = signed_orbit(rd, (1, 1))
    assert len(orb) == 6
    assert sorted(orb.values()) == [-1, -1, -1, 1, 1, 1]
