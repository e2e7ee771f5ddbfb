from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, strategies as st

from vok.kernel import F2Span
from vok.lattice import (
    EvenLattice,
    Isometry,
    QuadraticSpace,
    build_An,
    build_phi_psi,
    check_isometry,
    compare_distribution,
    cosets_mod2,
    direct_sum,
    eigenlattice_data,
    f2_quadratic,
    lattice_from_basis,
    max_totally_singular,
    norm_distribution,
    parity_key,
    roots,
    scalar_isometry,
    short_vectors,
    swap_isometry,
    twisted_weight_classes,
)

D4 = lattice_from_basis("D4", [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)])


def brute_minima(lat, box=2):
    """Minimal norm per class of L/2L by scanning a coefficient box."""
    best = {}
    for x in product(range(-box, box + 1), repeat=lat.rank):
        k = parity_key(x)
        nm = int(lat.norm(x))
        best[k] = min(best.get(k, nm), nm)
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
def test_root_counts(n):
    assert len(roots(build_An(n))) == n * (n + 1)


def test_d4_and_sums():
    assert len(roots(D4)) == 24
    assert len(roots(direct_sum(build_An(2), build_An(2)))) == 12


def test_short_vectors_against_box():
    lat = build_An(3)
    found = sorted(short_vectors(lat, 4))
    box = sorted((x, int(lat.norm(x))) for x in product(range(-3, 4), repeat=3) if lat.norm(x) <= 4)
    assert found == box


@pytest.mark.parametrize("lat", [build_An(2), build_An(3), build_An(4), D4], ids=lambda l: l.name)
def test_coset_minima_against_box(lat):
    classes = cosets_mod2(lat)
    assert len(classes) == 2 ** lat.rank
    brute = brute_minima(lat)
    assert {c.key: c.min_norm for c in classes} == brute
    for c in classes:
        assert int(lat.norm(c.coefficients)) == c.min_norm
        assert parity_key(c.coefficients) == c.key


def test_a8_distribution():
    dist = norm_distribution(cosets_mod2(build_An(8)))
    assert dist == {0: 1, 2: 36, 4: 126, 6: 84, 8: 9}
    cmp = compare_distribution(dist, {0: 1, 2: 36, 4: 126, 6: 84, 8: 8})
    assert (cmp["found_total"], cmp["table_total"], cmp["agree"]) == (256, 255, False)
    assert cmp["differences"] == {8: 1}


def test_a8_norm8_classes_have_70_minimal_vectors():
    norm8 = [c for c in cosets_mod2(build_An(8)) if c.min_norm == 8]
    assert [c.min_vector_count for c in norm8] == [70] * 9


def test_rank_guard():
    with pytest.raises(ValueError):
        cosets_mod2(direct_sum(build_An(8), build_An(3)))
    with pytest.raises(ValueError):
        build_An(0)
    with pytest.raises(ValueError):
        EvenLattice("odd", ((1,),), ((1,),))
    with pytest.raises(ValueError):
        build_An(2).coordinates((1, 0, 0))


even_grams = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n).map(
        lambda xs: [[2 * xs[i * n + i] if i == j else xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]
    )
)


@given(even_grams, st.data())
def test_polar_form(gram, data):
    sp = QuadraticSpace.from_gram(gram)
    n = len(gram)
    x = data.draw(st.integers(0, 2**n - 1))
    y = data.draw(st.integers(0, 2**n - 1))
    assert sp.b(x, y) == (sp.q(x ^ y) + sp.q(x) + sp.q(y)) % 2
    # q agrees with the integral norm / 2 of the 0/1 lift
    bits = [x >> i & 1 for i in range(n)]
    nm = sum(gram[i][j] * bits[i] * bits[j] for i in range(n) for j in range(n))
    assert sp.q(x) == (nm // 2) % 2


def hyperbolic(k):
    n = 2 * k
    return [[0 if i == j else int(i // 2 == j // 2) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_witt_index_of_hyperbolic_space(k):
    sp = QuadraticSpace.from_gram(hyperbolic(k))
    x = max_totally_singular(sp)
    assert x.dim == k
    y = max_totally_singular(sp, avoid=x)
    assert y.dim == k
    assert F2Span(2 * k, list(x.basis) + list(y.basis)).dim == 2 * k


def test_a8_singular_subspaces():
    sp = f2_quadratic(build_An(8))
    x = max_totally_singular(sp)
    y = max_totally_singular(sp, avoid=x)
    assert x.dim == y.dim == 4
    assert sp.totally_singular(list(x.basis)) and sp.totally_singular(list(y.basis))
    r = build_phi_psi(x, y)
    assert (r["phi_dim"], r["psi_dim"], r["phi_plus_psi_dim"]) == (12, 12, 24)
    assert r["phi_totally_singular"] and r["psi_totally_singular"] and r["mu_eta_orthogonal"]
    with pytest.raises(ValueError):
        build_phi_psi(x, x)


def test_anisotropic():
    assert max_totally_singular(f2_quadratic(build_An(2))).dim == 0


def test_isometry_checks():
    a2 = build_An(2)
    with pytest.raises(ValueError):
        check_isometry(a2, Isometry(((0, 1), (1, 1))))
    with pytest.raises(ValueError):
        check_isometry(a2, Isometry(((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    # Dynkin diagram flip is an involutive isometry of A2
    check_isometry(a2, Isometry(((0, 1), (1, 0))))


def test_twisted_weights():
    w = [c.weight for c in twisted_weight_classes(direct_sum(build_An(2), build_An(2)), swap_isometry(2))]
    assert w == [Q(1, 8), Q(7, 24), Q(7, 24)]
    a1 = build_An(1)
    assert [c.weight for c in twisted_weight_classes(a1, scalar_isometry(1, -1))] == [Q(1, 16)]
    assert [c.weight for c in twisted_weight_classes(a1, scalar_isometry(1, 1))] == [0, Q(1, 4)]


@pytest.mark.parametrize("lat,sigma", [
    (direct_sum(build_An(2), build_An(2)), swap_isometry(2)),
    (direct_sum(build_An(3), build_An(3)), swap_isometry(3)),
    (build_An(3), scalar_isometry(3, -1)),
    (build_An(2), Isometry(((0, 1), (1, 0)))),
    (D4, scalar_isometry(4, -1)),
])
def test_eigenlattices(lat, sigma):
    d = eigenlattice_data(lat, sigma)
    assert d["M_in_N"]
    assert d["rankN"] + len(d["h0_basis"]) == lat.rank
    # (1 - sigma) L sits in N with 2-power index
    i = d["index_M_in_N"]
    assert i & (i - 1) == 0
