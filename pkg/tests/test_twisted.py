import random
from fractions import Fraction as Q

import numpy as np
import pytest

from vok import data
from vok.kernel import F2Span
from vok.lattice import parity_key
from vok.twisted import (
    CLAIMED,
    CANDIDATE_WEIGHTS,
    SWAP_A2A2_WEIGHTS,
    build_M,
    build_candidate_vectors,
    combine_twisted_weights,
    coset_space,
    e_alpha_action,
    full_spectrum,
    omega_weight,
    parity_well_defined,
    rayleigh_report,
    root_parity_counts,
    top_space,
    verify_eigen,
)


def test_M_matches_independent_construction():
    # rebuild from ambient vectors, lattice coordinates and the exact integer pairing
    sp = coset_space()
    lat = sp.lattice
    amb_roots = [lat.ambient(a) for a in sp.roots]
    m = np.zeros((sp.size, sp.size), dtype=np.int64)
    for j, c in enumerate(sp.classes):
        beta = lat.ambient(c.coefficients)
        for a in amb_roots:
            if sum(x * y for x, y in zip(a, beta)) % 2:
                m[j, j] -= 1
                target = parity_key(lat.coordinates([x + y for x, y in zip(a, beta)]))
                m[sp.pos(target), j] += 2
            else:
                m[j, j] += 1
    assert np.array_equal(m, build_M())


def test_M_shape():
    m = build_M()
    assert m.shape == (256, 256)
    assert np.array_equal(m, m.T)
    assert not m.flags.writeable
    assert m[0, 0] == 72


def test_parity_counts():
    sp = coset_space()
    assert all(root_parity_counts(sp, k) == (44, 28) for k in sp.family(2))
    frozen = data.load("cosets_A8")["root_parity_counts"]
    for norm, counts in frozen.items():
        assert {root_parity_counts(sp, k) for k in sp.family(int(norm))} == {tuple(c) for c in counts}


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_parity_well_defined(seed):
    assert parity_well_defined(coset_space(), random.Random(seed), samples=2)


def test_omega():
    assert [omega_weight(CLAIMED[k]) for k in ("v0", "v1", "v2", "v3", "v4")] == list(CANDIDATE_WEIGHTS)
    assert omega_weight(0) == Q(5, 4)


def test_proven_eigenvectors():
    m = build_M()
    v = build_candidate_vectors()
    assert verify_eigen(m, v["v0"], 72)
    assert verify_eigen(m, v["v1"], 8)
    with pytest.raises(ValueError):
        verify_eigen(m, np.zeros(256, dtype=np.int64), 1)


def test_unverified_eigenvectors_are_reported():
    m = build_M()
    v = build_candidate_vectors()
    for name in ("v2", "v3", "v4"):
        assert not verify_eigen(m, v[name], CLAIMED[name])
        assert not rayleigh_report(m, v[name])["leaks_off_support"]
    assert rayleigh_report(m, v["v2"])["ratios_on_support"] == [4, Q(88, 5)]


def test_spectrum_frozen():
    spectrum = full_spectrum()
    assert spectrum["all_integral"]
    frozen = data.load("twisted_spectrum")
    assert {str(k): v for k, v in spectrum["multiplicities"].items()} == frozen["multiplicities"]
    assert spectrum["omega_weights"] == frozen["omega_weights"]
    assert sum(spectrum["multiplicities"].values()) == 256
    # trace check: sum of eigenvalues equals the trace
    assert sum(k * v for k, v in spectrum["multiplicities"].items()) == int(np.trace(build_M()))


def test_top_space_and_combination():
    top = top_space()
    assert top["dimension"] == 16
    assert top["omega_weights"] == [Q(7, 8)]
    combined = combine_twisted_weights([Q(7, 8)], SWAP_A2A2_WEIGHTS, Q(1, 4))
    assert combined == [1]
    combined = combine_twisted_weights(CANDIDATE_WEIGHTS, SWAP_A2A2_WEIGHTS, Q(1, 4))
    assert combined == [1, Q(3, 2)]
    with pytest.raises(ValueError):
        combine_twisted_weights([1], [1], 0)


def test_e_alpha_action():
    sp = coset_space()
    y = top_space()["Y"]
    alpha = sp.roots[0]
    ak = parity_key(alpha)
    odd = next(k for k in sp.family(2) if sp.parity(ak, k))
    even = next(k for k in sp.family(2) if not sp.parity(ak, k))
    r = e_alpha_action(sp, y, alpha, odd, 0)
    assert r["terms"] == {(odd ^ ak, ak): 2, (odd, ak): -1}
    assert e_alpha_action(sp, y, alpha, even, 0)["terms"] == {(even, ak): 1}
    with pytest.raises(ValueError):
        e_alpha_action(sp, F2Span(8), alpha, even, 1)
