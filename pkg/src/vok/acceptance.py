"""Acceptance criteria shared by the test suite and `vok verify-all`."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable

from . import data
from .affine import conformal_weight
from .lattice import (
    build_An,
    compare_distribution,
    cosets_mod2,
    direct_sum,
    norm_distribution,
    scalar_isometry,
    swap_isometry,
    twisted_weight_classes,
)
from .levelrank import degree_zero, rotate, tau
from .modular import (
    FAMILIES,
    LITERAL,
    build_invariant,
    check_invariant,
    extended_qdims,
    extension_check,
    glob,
    modular_checks,
    modular_data,
    qdim,
    vacuum_row_support,
)
from .orbifold import (
    canonical_name,
    classify,
    enumerate_candidates,
    e7a5_battery,
    orbifold_dim,
    ratio_for_dim,
    simple_factor_pool,
    twisted_halfweight_check,
)
from .roots import AlgebraId
from .twisted import (
    CLAIMED,
    CANDIDATE_WEIGHTS,
    build_M,
    build_candidate_vectors,
    combine_twisted_weights,
    coset_space,
    full_spectrum,
    omega_weight,
    root_parity_counts,
    top_space,
    verify_eigen,
)

A2, A8 = AlgebraId("A", 2), AlgebraId("A", 8)


@dataclass
class Criterion:
    number: int
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def line(self) -> str:
        failed = [k for k, v in self.checks.items() if not v]
        tail = "" if not failed else " (failed: " + ", ".join(failed) + ")"
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.name}{tail}"


def _sl9(*idx: int) -> tuple[int, ...]:
    """Level-3 affine labels of a sum of fundamental weights of sl_9 (repeats allowed)."""
    t = [0] * 9
    for i in idx:
        t[i] += 1
    t[0] = 3 - sum(t[1:])
    return tuple(t)


# ---- 1 ------------------------------------------------------------------------

TAU_TABLE = {
    (9, 0, 0): (3, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 9, 0): (0, 0, 0, 3, 0, 0, 0, 0, 0),
    (0, 0, 9): (0, 0, 0, 0, 0, 0, 3, 0, 0),
    (4, 4, 1): (0, 0, 0, 1, 0, 0, 0, 1, 1),
    (4, 1, 4): (0, 1, 1, 0, 0, 0, 1, 0, 0),
    (1, 4, 4): (1, 0, 0, 0, 1, 1, 0, 0, 0),
}


def criterion_1() -> Criterion:
    c = Criterion(1, "level-rank map tau on C0_{3,9}")
    got = {a: tau(3, 9, a) for a in TAU_TABLE}
    mism = {a: got[a] for a in TAU_TABLE if got[a] != TAU_TABLE[a]}
    dom = degree_zero(3, 9)
    images = [tau(3, 9, a) for a in dom]
    c.checks["six_table_values"] = not mism
    c.checks["domain_size_19"] = len(dom) == 19
    c.checks["bijective"] = len(set(images)) == len(dom) and set(images) == set(degree_zero(9, 3))
    c.detail = {
        "mismatches": {str(a): {"computed": got[a], "table": TAU_TABLE[a]} for a in mism},
        "image_set_equal": set(got.values()) == set(TAU_TABLE.values()),
        "involutive": all(tau(9, 3, b) == a for a, b in zip(dom, images)),
    }
    return c


# ---- 2 ------------------------------------------------------------------------

EXTENDED_MODULES = {
    "3L1": ([_sl9(1, 1, 1), _sl9(4, 4, 4), _sl9(7, 7, 7), _sl9(1, 5, 6), _sl9(2, 3, 7), _sl9(4, 8)], Q(4, 3)),
    "3L2": ([_sl9(2, 2, 2), _sl9(5, 5, 5), _sl9(8, 8, 8), _sl9(2, 6, 7), _sl9(3, 4, 8), _sl9(1, 5)], Q(7, 3)),
    "tau1": ([_sl9(2, 7), _sl9(1, 3, 5), _sl9(4, 6, 8)], Q(4, 3)),
    "tau2": ([_sl9(2, 7), _sl9(1, 3, 5), _sl9(4, 6, 8)], Q(4, 3)),
    "3L1 x tau1": ([_sl9(1, 3, 8), _sl9(2, 4, 6), _sl9(5, 7)], Q(5, 3)),
    "3L1 x tau2": ([_sl9(1, 3, 8), _sl9(2, 4, 6), _sl9(5, 7)], Q(5, 3)),
    "3L2 x tau1": ([_sl9(2, 4), _sl9(3, 5, 7), _sl9(1, 6, 8)], Q(5, 3)),
    "3L2 x tau2": ([_sl9(2, 4), _sl9(3, 5, 7), _sl9(1, 6, 8)], Q(5, 3)),
}


def criterion_2() -> Criterion:
    c = Criterion(2, "conformal weights")
    h = lambda g, k, aff: conformal_weight(g, k, aff[1:])
    c.checks["A2_1_L1_is_1/3"] = h(A2, 1, (0, 1, 0)) == Q(1, 3)
    c.checks["A8_3_3L1_is_4/3"] = h(A8, 3, _sl9(1, 1, 1)) == Q(4, 3)
    c.checks["A8_3_3L2_is_7/3"] = h(A8, 3, _sl9(2, 2, 2)) == Q(7, 3)
    rows = {}
    ok = True
    for name, (parts, expected) in EXTENDED_MODULES.items():
        vals = sorted({h(A8, 3, p) % 1 for p in parts})
        rows[name] = [str(v) for v in vals]
        ok &= vals == [expected % 1]
    # the product modules are simple-current rotations of tau
    taus = EXTENDED_MODULES["tau1"][0]
    ok_rot = {rotate(t, 1) for t in taus} == set(EXTENDED_MODULES["3L1 x tau1"][0]) and \
        {rotate(t, 2) for t in taus} == set(EXTENDED_MODULES["3L2 x tau1"][0])
    c.checks["mod1_row_eight_modules"] = ok
    c.checks["products_are_rotations"] = ok_rot
    c.detail = {"mod1": rows}
    return c


# ---- 3 ------------------------------------------------------------------------

def criterion_3() -> Criterion:
    c = Criterion(3, "modular data of (A8, 3)")
    md = modular_data(A8, 3)
    r = modular_checks(md)
    c.checks["unitarity"] = r["unitarity"] < 1e-8
    c.checks["S2_equals_C"] = r["s_squared_vs_conjugation"] < 1e-8
    c.checks["ST3_equals_S2"] = r["st_cubed_vs_s_squared"] < 1e-8
    c.detail = r | {"modules": len(md.labels)}
    return c


# ---- 4 ------------------------------------------------------------------------

EPRIME_VACUUM_ROW = sorted([
    (3, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 3, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 3, 0, 0),
    (0, 1, 1, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 1, 1),
    (1, 0, 0, 0, 1, 1, 0, 0, 0),
])


def criterion_4() -> Criterion:
    c = Criterion(4, "modular invariants of (A8, 3)")
    md = modular_data(A8, 3)
    table = {}
    commute = True
    for fam in FAMILIES:
        for conj in (False, True):
            r = check_invariant(build_invariant(fam, md, conj), md, 1e-6)
            name = ("C" if conj else "") + fam
            table[name] = {k: r[k] for k in ("commutes_S", "commutes_T", "physical", "max_residual")}
            table[name]["violations"] = len(r["physicality_violations"])
            commute &= r["commutes_S"] and r["commutes_T"] and r["nonnegative"] and r["vacuum_entry_one"]
    lit = check_invariant(build_invariant(LITERAL, md), md, 1e-6)
    c.checks["all_commute_with_S_T"] = commute
    c.checks["Eprime_physical"] = table["Eprime"]["physical"]
    c.checks["CEprime_not_physical"] = not table["CEprime"]["physical"]
    c.checks["Eprimeprime_not_physical"] = not table["Eprimeprime"]["physical"]
    support = sorted(vacuum_row_support(build_invariant("Eprime", md), md))
    c.checks["Eprime_vacuum_row"] = support == EPRIME_VACUUM_ROW
    c.detail = {
        "families": table,
        "literal_Eprimeprime_commutes_S": lit["commutes_S"],
        "literal_Eprimeprime_residual": lit["max_residual"],
    }
    return c


# ---- 5 ------------------------------------------------------------------------

E6_BRANCHING = [(9, 0, 0), (0, 9, 0), (0, 0, 9), (4, 1, 4), (4, 4, 1), (1, 4, 4)]


def criterion_5() -> Criterion:
    c = Criterion(5, "quantum and global dimensions")
    md = modular_data(A8, 3)
    q3 = qdim(md, (0, 0, 0, 3, 0, 0, 0, 0, 0))
    x = build_invariant("Eprime", md)
    row = {str(a): qdim(md, a) for a in vacuum_row_support(x, md)}
    c.checks["qdim_3L3_is_1"] = abs(q3 - 1) < 1e-6
    c.checks["qdim_Eprime_row_is_1"] = all(abs(v - 1) < 1e-6 for v in row.values())
    globs = {}
    for g, k in ((A2, 1), (A2, 9), (A8, 3)):
        m = modular_data(g, k)
        globs[f"{g},{k}"] = (glob(m), 1 / abs(m.S[0, 0]) ** 2)
    c.checks["glob_is_inverse_S00_sq"] = all(abs(a - b) < 1e-6 * b for a, b in globs.values())
    e6 = modular_data(AlgebraId("E", 6), 1)
    ext = extension_check(modular_data(A2, 9), e6, E6_BRANCHING)
    c.checks["extension_identity_glob_grows"] = ext["grows"] < 1e-6 * ext["glob_big"]
    c.detail = {
        "qdim_3L3": q3,
        "Eprime_row_qdims": row,
        "extension_level_qdims": sorted({round(v, 9) for v in extended_qdims(x, md)}),
        "globs": globs,
        "extension": ext,
        "extension_identity_reversed_holds": ext["shrinks"] < 1e-6 * max(ext["glob_big"], 1),
    }
    return c


# ---- 6 ------------------------------------------------------------------------

TABLE_COUNTS = {0: 1, 2: 36, 4: 126, 6: 84, 8: 8}


def criterion_6() -> Criterion:
    c = Criterion(6, "cosets of A8 / 2 A8")
    classes = cosets_mod2(build_An(8), bound=10)
    dist = norm_distribution(classes)
    cmp = compare_distribution(dist, TABLE_COUNTS)
    frozen = data.load("cosets_A8")
    c.checks["256_classes"] = len(classes) == 256
    c.checks["max_min_norm_le_10"] = max(dist) <= 10
    c.checks["norms_0_2_agree"] = dist.get(0) == 1 and dist.get(2) == 36
    c.checks["discrepancy_detected"] = not cmp["agree"] and cmp["table_total"] == 255
    c.checks["matches_frozen"] = {str(k): v for k, v in dist.items()} == frozen["distribution"] and \
        {str(k): v for k, v in cmp["differences"].items()} == frozen["differences_vs_table"]
    c.checks["roots_count_72"] = sum(cl.min_vector_count for cl in classes if cl.min_norm == 2) == 72
    c.detail = {"distribution": dist, "comparison": cmp}
    return c


# ---- 7 ------------------------------------------------------------------------

def criterion_7() -> Criterion:
    c = Criterion(7, "twisted spectrum on the free coset model")
    m = build_M()
    vecs = build_candidate_vectors()
    results = {k: verify_eigen(m, v, CLAIMED[k]) for k, v in vecs.items()}
    for k, ok in results.items():
        c.checks[f"M_{k}_eq_{CLAIMED[k]}_{k}"] = ok
    weights = [omega_weight(CLAIMED[k]) for k in ("v0", "v1", "v2", "v3", "v4")]
    c.checks["omega_weights_map"] = tuple(weights) == CANDIDATE_WEIGHTS
    sp = coset_space()
    c.checks["parity_44_28_on_C2"] = all(root_parity_counts(sp, k) == (44, 28) for k in sp.family(2))
    spectrum = full_spectrum(m)
    c.checks["spectrum_integral"] = spectrum["all_integral"]
    c.detail = {"spectrum": spectrum["multiplicities"], "max_distance": spectrum["max_distance_to_integer"]}
    return c


# ---- 8 ------------------------------------------------------------------------

def criterion_8() -> Criterion:
    c = Criterion(8, "sigma-twisted A2+A2 and combined weights")
    a2 = build_An(2)
    cls = twisted_weight_classes(direct_sum(a2, a2), swap_isometry(2))
    ws = sorted(t.weight for t in cls)
    c.checks["weights_1/8_7/24_7/24"] = ws == [Q(1, 8), Q(7, 24), Q(7, 24)]
    comb = combine_twisted_weights(CANDIDATE_WEIGHTS, ws, Q(1, 4))
    c.checks["combined_is_1_3/2"] = comb == [Q(1), Q(3, 2)]
    c.checks["minimum_is_1"] = bool(comb) and comb[0] == 1
    top = top_space()
    c.checks["top_dimension_16"] = top["dimension"] == 16
    c.detail = {"weights": ws, "combined": comb, "A1_minus_identity": twisted_weight_classes(build_An(1), scalar_isometry(1, -1))[0].weight}
    return c


# ---- 9 ------------------------------------------------------------------------

DIM60 = {"C2,2^6", "D4,4A2,2^4", "F4,6A2,2"}
RATIO3_POOL = {"A2", "B2", "A5", "C5", "D4", "A8", "B5", "F4", "E6"}


def criterion_9() -> Criterion:
    c = Criterion(9, "orbifold bookkeeping and classifier")
    c.checks["96_44_0_to_60"] = orbifold_dim(96, 44, 0) == 60
    c.checks["60_44_0_to_96"] = orbifold_dim(60, 44, 0) == 96
    got = {str(x) for x in enumerate_candidates(60)}
    c.checks["dim60_exactly_three"] = got == DIM60
    c.checks["B4A2_filter_leaves_F4A2"] = [str(x) for x in classify(60, "B4A2")] == ["F4,6A2,2"]
    pool = {canonical_name(s.algebra) for s in simple_factor_pool(ratio_for_dim(96), 96)}
    expected_pool = {canonical_name(AlgebraId(n[0], int(n[1:]))) for n in RATIO3_POOL}
    c.checks["ratio3_pool"] = pool == expected_pool
    c.detail = {
        "dim60": sorted(got),
        "dim60_extra": sorted(got - DIM60),
        "pool": sorted(pool),
        "pool_extra": sorted(pool - expected_pool),
        "pool_missing": sorted(expected_pool - pool),
    }
    return c


# ---- 10 -----------------------------------------------------------------------

F4A2_PAIRS = [
    ((0, 0, 0, 0), (0, 0), 0),
    ((0, 0, 0, 1), (1, 1), 1),
    ((0, 0, 0, 3), (1, 1), 2),
    ((0, 0, 0, 4), (0, 0), 2),
    ((0, 0, 0, 6), (1, 1), 4),
    ((0, 0, 2, 1), (1, 1), 3),
    ((0, 0, 3, 0), (0, 0), 3),
    ((0, 1, 0, 1), (1, 0), 2),
    ((0, 1, 0, 1), (0, 1), 2),
    ((0, 1, 0, 2), (0, 2), 3),
    ((0, 1, 0, 2), (2, 0), 3),
    ((1, 0, 0, 3), (0, 0), 3),
    ((1, 0, 1, 2), (1, 0), 3),
    ((1, 0, 1, 2), (0, 1), 3),
    ((1, 1, 0, 0), (0, 0), 2),
    ((2, 0, 0, 0), (0, 2), 2),
    ((2, 0, 0, 0), (2, 0), 2),
    ((2, 0, 1, 0), (1, 1), 3),
]


def criterion_10() -> Criterion:
    from .orbifold import integral_pairs_F4A2

    c = Criterion(10, "F4 battery")
    r = twisted_halfweight_check()
    c.checks["pairings_1_2_3/2_1"] = r["fundamental_pairings"] == [1, 2, Q(3, 2), 1]
    c.checks["order_2"] = r["order"] == 2
    c.checks["min_root_pairing_-1"] = r["min_root_pairing"] == -1
    got = {(a, b): t for a, b, t in integral_pairs_F4A2()}
    want = {(a, b): Q(t) for a, b, t in F4A2_PAIRS}
    c.checks["eighteen_pairs_exact"] = got == want
    c.checks["weights_multiset"] = sorted(got.values()) == sorted(want.values())
    c.detail = {
        "count": len(got),
        "only_computed": sorted(set(got) - set(want)),
        "only_listed": sorted(set(want) - set(got)),
        "listed_pair_weights": {str(k): str(conformal_weight(AlgebraId("F", 4), 6, k[0]) + conformal_weight(A2, 2, k[1]))
                                for k in set(want) - set(got)},
        "halfweight_all_positive": r["all_positive"],
        "halfweight_none_half": r["no_half"],
    }
    return c


# ---- 11 -----------------------------------------------------------------------

def criterion_11() -> Criterion:
    c = Criterion(11, "fixed points, dimension formula, classifier chain")
    r = twisted_halfweight_check()
    fixed = r["fixed_dim_total"]
    c.checks["fixed_dim_44"] = fixed == 44
    d = orbifold_dim(96, fixed, 0)
    c.checks["dim_60"] = d == 60
    final = [str(x) for x in classify(d, "B4A2")]
    c.checks["classifier_filter_F4A2"] = final == ["F4,6A2,2"]
    back = orbifold_dim(60, fixed, 0)
    c.checks["reverse_96"] = back == 96
    e7 = e7a5_battery()
    c.checks["E7A5_to_96"] = e7["orbifold_dim"] == e7["target_dim"] == 96
    c.checks["E7A5_h_norm_integral"] = e7["h_norm_integral"]
    c.detail = {"chain": [96, fixed, d, final], "E7A5": {k: str(v) for k, v in e7.items()}}
    return c


CRITERIA: tuple[Callable[[], Criterion], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
)


def run_all() -> list[Criterion]:
    return [f() for f in CRITERIA]
