"""Command-line front end: `vok <command> [options]`.

Every command builds a report with inputs, outputs and named boolean checks.
The exit code is 0 when all checks pass, 1 when one fails and 2 on bad usage.

Output formats:
  --json  one JSON object, keys sorted, rationals as "p/q"
  --tsv   (default) one "path<TAB>value" line per leaf, in sorted key order;
          list items get their index as a path segment, numeric vectors
          and empty lists stay inline as JSON arrays

Environment overrides: VOK_FORMAT (json|tsv), VOK_TOL (float), VOK_SEED (int).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import acceptance, lattice, levelrank, modular, orbifold, twisted
from .affine import conformal_weight, enumerate_level_weights
from .kernel import fmt_q, set_tolerance, tolerance
from .roots import build_root_datum, parse_algebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def plain(x: Any) -> Any:
    """Convert to JSON-ready values: rationals as strings, tuples as lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return fmt_q(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, dict):
        return {str(plain(k)) if not isinstance(k, str) else k: plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [plain(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    return str(x)


def _flat(prefix: str, x: Any, out: list[str]) -> None:
    if isinstance(x, dict):
        if not x:
            out.append(f"{prefix}\t{{}}")
        for k in sorted(x):
            _flat(f"{prefix}.{k}" if prefix else k, x[k], out)
    elif isinstance(x, list) and any(isinstance(v, (dict, list, str)) for v in x):
        for i, v in enumerate(x):
            _flat(f"{prefix}.{i}", v, out)
    else:
        out.append(f"{prefix}\t{x if isinstance(x, str) else json.dumps(x)}")


def serialize(report: dict, fmt: str) -> str:
    data = plain(report)
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2)
    out: list[str] = []
    _flat("", data, out)
    return "\n".join(out)


def report(command: str, inputs: dict, outputs: dict, checks: dict | None = None, notes: Sequence[str] = ()) -> dict:
    checks = {k: bool(v) for k, v in (checks or {}).items()}
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
        "passed": all(checks.values()),
        "notes": list(notes),
    }


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


# ---- commands ------------------------------------------------------------------

def cmd_roots(a) -> dict:
    rd = build_root_datum(parse_algebra(a.algebra))
    return report("roots", {"algebra": a.algebra}, {
        "algebra": str(rd.id),
        "dimension": rd.dimension,
        "dual_coxeter": rd.dual_coxeter,
        "marks": rd.marks,
        "comarks": rd.comarks,
        "positive_roots": len(rd.positive_roots),
    }, {"dimension_count": 2 * len(rd.positive_roots) + rd.rank == rd.dimension})


def cmd_weights(a) -> dict:
    g = parse_algebra(a.algebra)
    ws = enumerate_level_weights(g, a.level)
    rows = [{"affine_labels": w.affine_labels, "h": conformal_weight(g, a.level, w.labels)} for w in ws]
    return report("weights", {"algebra": str(g), "level": a.level}, {"count": len(ws), "weights": rows})


def cmd_tau(a) -> dict:
    lab = _ints(a.labels)
    img = levelrank.tau(a.n, a.m, lab)
    back = levelrank.tau(a.m, a.n, img)
    return report("tau", {"n": a.n, "m": a.m, "labels": lab}, {"image": ",".join(map(str, img))},
                  {"involutive": back == lab})


def cmd_levelrank_pairs(a) -> dict:
    pairs = levelrank.levelrank_pairs(a.n, a.m)
    imgs = [b for _, b in pairs]
    return report("levelrank-pairs", {"n": a.n, "m": a.m},
                  {"count": len(pairs), "pairs": [[",".join(map(str, x)), ",".join(map(str, y))] for x, y in pairs]},
                  {"bijective": len(set(imgs)) == len(imgs) and set(imgs) == set(levelrank.degree_zero(a.m, a.n))})


def cmd_smatrix(a) -> dict:
    md = modular.modular_data(parse_algebra(a.algebra), a.level, a.method)
    r = modular.modular_checks(md)
    tol = tolerance("structural") * 10
    out = {"modules": len(md.labels), "central_charge": md.central_charge, "residuals": r, "S00": md.S[0, 0].real}
    if a.full:
        out["S"] = np.round(md.S, 12)
        out["labels"] = [w.affine_labels for w in md.labels]
    return report("smatrix", {"algebra": str(md.algebra), "level": a.level, "method": a.method}, out, {
        "unitary": r["unitarity"] < tol,
        "symmetric": r["symmetry"] < tol,
        "S2_is_C": r["s_squared_vs_conjugation"] < tol,
        "ST3_is_S2": r["st_cubed_vs_s_squared"] < tol,
    })


def cmd_check_invariant(a) -> dict:
    md = modular.modular_data("A8", 3)
    x = modular.build_invariant(a.family, md, a.conjugate)
    r = modular.check_invariant(x, md)
    out = {k: v for k, v in r.items() if k != "physicality_violations"}
    out["physicality_violations"] = len(r["physicality_violations"])
    out["vacuum_row"] = [",".join(map(str, t)) for t in modular.vacuum_row_support(x, md)]
    notes = []
    if a.family == modular.LITERAL:
        notes.append("literal bracket form of E''; it is not expected to commute with S")
    return report("check-invariant", {"family": a.family, "conjugate": a.conjugate}, out, {
        "commutes_S": r["commutes_S"],
        "commutes_T": r["commutes_T"],
        "nonnegative": r["nonnegative"],
        "vacuum_entry_one": r["vacuum_entry_one"],
    }, notes)


def cmd_qdim(a) -> dict:
    g = parse_algebra(a.algebra)
    md = modular.modular_data(g, a.level)
    lab = _ints(a.labels)
    if len(lab) == g.rank:
        lab = (a.level - sum(c * x for c, x in zip(build_root_datum(g).comarks, lab)),) + lab
    q = modular.qdim(md, lab)
    return report("qdim", {"algebra": str(g), "level": a.level, "labels": lab},
                  {"qdim": q, "simple_current": abs(q - 1) < tolerance("commutation"), "glob": modular.glob(md)})


def cmd_cosets(a) -> dict:
    lat = _lattice(a.lattice)
    classes = lattice.cosets_mod2(lat, a.bound)
    dist = lattice.norm_distribution(classes)
    out = {"classes": len(classes), "distribution": dist}
    checks = {"all_classes_found": len(classes) == 2 ** lat.rank}
    notes = []
    if lat.name == "A8":
        cmp = lattice.compare_distribution(dist, acceptance.TABLE_COUNTS)
        out["reference_table"] = acceptance.TABLE_COUNTS
        out["comparison"] = cmp
        if not cmp["agree"]:
            notes.append(
                f"reference table sums to {cmp['table_total']} but there are {cmp['found_total']} classes; "
                f"differences by norm: {cmp['differences']}"
            )
    return report("cosets", {"lattice": lat.name, "bound": a.bound}, out, checks, notes)


def _lattice(text: str) -> lattice.EvenLattice:
    parts = []
    for p in text.split("+"):
        g = parse_algebra(p)
        if g.series != "A":
            raise UsageError("lattices are built from A_n summands, e.g. A8 or A2+A2")
        parts.append(lattice.build_An(g.rank))
    return parts[0] if len(parts) == 1 else lattice.direct_sum(*parts)


def cmd_twisted_lattice(a) -> dict:
    lat = _lattice(a.lattice)
    if a.swap:
        half = lat.rank // 2
        if lat.rank % 2 or lat.gram[:half] != tuple(r[half:] + r[:half] for r in lat.gram[half:]):
            raise UsageError("--swap needs two equal summands")
        sigma = lattice.swap_isometry(half)
    else:
        sigma = lattice.scalar_isometry(lat.rank, -1 if a.negate else 1)
    d = lattice.eigenlattice_data(lat, sigma)
    cls = lattice.twisted_weight_classes(lat, sigma)
    rows = [{"representative": c.representative, "n_lambda": c.n_lambda, "weight": c.weight} for c in cls]
    return report("twisted-lattice", {"lattice": lat.name, "involution": "swap" if a.swap else ("-1" if a.negate else "1")},
                  {"rankN": d["rankN"], "index_M_in_N": d["index_M_in_N"], "classes": rows},
                  {"M_in_N": d["M_in_N"], "weights_bounded_below": all(c.weight >= Fraction(d["rankN"], 16) for c in cls)})


def cmd_twisted_spectrum(a) -> dict:
    m = twisted.build_M()
    vecs = twisted.build_candidate_vectors()
    rows = []
    checks = {}
    for name, v in vecs.items():
        ok = twisted.verify_eigen(m, v, twisted.CLAIMED[name])
        rows.append({"name": name, "m": twisted.CLAIMED[name], "weight": twisted.omega_weight(twisted.CLAIMED[name]),
                     "verified": ok, "ratios_on_support": twisted.rayleigh_report(m, v)["ratios_on_support"]})
        checks[f"{name}_eigen"] = ok
    spectrum = twisted.full_spectrum(m)
    checks["spectrum_integral"] = spectrum["all_integral"]
    checks["parity_well_defined"] = twisted.parity_well_defined(twisted.coset_space(), random.Random(a.seed))
    return report("twisted-spectrum", {"seed": a.seed}, {
        "eigen_table": rows,
        "multiplicities": spectrum["multiplicities"],
        "omega_weights": spectrum["omega_weights"],
    }, checks, ["the operator acts on the free 256-dimensional space over A8/2A8"])


def cmd_orbifold_dim(a) -> dict:
    d = orbifold.orbifold_dim(a.dimV, a.fixed, a.half)
    return report("orbifold-dim", {"dimV": a.dimV, "fixed": a.fixed, "half": a.half}, {"dim": d})


def cmd_classify(a) -> dict:
    cands = orbifold.classify(a.dim, a.require, a.max_rank)
    return report("classify", {"dim": a.dim, "require": a.require, "max_rank": a.max_rank},
                  {"ratio": orbifold.ratio_for_dim(a.dim), "candidates": [str(c) for c in cands]})


def cmd_f4_check(a) -> dict:
    r = orbifold.twisted_halfweight_check()
    rows = [{k: v for k, v in row.items() if k in ("lambda1", "lambda2", "l", "min_full", "weight")} for row in r["rows"]]
    return report("f4-check", {"h": "Lambda4", "level": 6}, {
        "fundamental_pairings": r["fundamental_pairings"],
        "order": r["order"],
        "min_root_pairing": r["min_root_pairing"],
        "h_norm_voa": r["h_norm_voa"],
        "fixed_dim": r["fixed_dim_total"],
        "pairs": rows,
    }, {
        "order_2": r["order"] == 2,
        "root_condition": r["root_condition"],
        "all_positive": r["all_positive"],
        "no_half": r["no_half"],
        "orbit_equals_full": r["orbit_equals_full"],
    })


def cmd_e7a5_check(a) -> dict:
    r = orbifold.e7a5_battery()
    return report("e7a5-check", {"h": "(Lambda2, Lambda3)/2"}, r, {
        "h_norm_integral": r["h_norm_integral"],
        "roots_order_two": r["roots_order_two"],
        "pairs_order_two": r["pairs_order_two"],
        "fixed_dim_matches_table": r["fixed_dim"] == r["table_fixed_dim"],
        "dim_96": r["orbifold_dim"] == r["target_dim"],
    })


def cmd_verify_all(a) -> dict:
    results = acceptance.run_all()
    return report("verify-all", {}, {
        "criteria": [{"number": c.number, "name": c.name, "passed": c.passed, "checks": c.checks} for c in results],
        "summary": [c.line() for c in results],
    }, {f"criterion_{c.number}": c.passed for c in results})


# ---- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def global_flags(default):
        # subcommands reuse the flags with SUPPRESS so they do not reset values given before the command
        common = argparse.ArgumentParser(add_help=False)
        fmt = common.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default=default, help="JSON output")
        fmt.add_argument("--tsv", dest="fmt", action="store_const", const="tsv", default=default,
                         help="path<TAB>value lines (default)")
        common.add_argument("--tol", type=float, default=default, help="commutation tolerance (default 1e-6)")
        common.add_argument("--seed", type=int, default=default, help="seed for randomized spot checks")
        return common

    common = global_flags(argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="vok", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter,
                                parents=[global_flags(None)])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("roots", cmd_roots, "root-system data of a simple Lie algebra")
    sp.add_argument("algebra")
    sp = add("weights", cmd_weights, "level-k dominant weights with conformal weights")
    sp.add_argument("algebra")
    sp.add_argument("level", type=int)
    sp = add("tau", cmd_tau, "level-rank map on one label")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("labels", help="comma-separated, e.g. 4,4,1")
    sp = add("levelrank-pairs", cmd_levelrank_pairs, "all degree-zero labels with their images")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp = add("smatrix", cmd_smatrix, "modular S, T and their residuals")
    sp.add_argument("algebra")
    sp.add_argument("level", type=int)
    sp.add_argument("--method", choices=["auto", "determinant", "weyl"], default="auto")
    sp.add_argument("--full", action="store_true", help="include the S matrix")
    sp = add("check-invariant", cmd_check_invariant, "check a modular invariant of sl_9 at level 3")
    sp.add_argument("family", choices=list(modular.FAMILIES) + [modular.LITERAL])
    sp.add_argument("--conjugate", action="store_true")
    sp = add("qdim", cmd_qdim, "quantum dimension of one module")
    sp.add_argument("algebra")
    sp.add_argument("level", type=int)
    sp.add_argument("labels", help="finite or affine Dynkin labels, comma-separated")
    sp = add("cosets", cmd_cosets, "coset minima of L/2L")
    sp.add_argument("lattice", help="e.g. A8")
    sp.add_argument("--bound", type=int, default=10)
    sp = add("twisted-lattice", cmd_twisted_lattice, "twisted lowest weights for an involution")
    sp.add_argument("lattice", help="e.g. A2+A2")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--swap", action="store_true")
    g.add_argument("--negate", action="store_true")
    add("twisted-spectrum", cmd_twisted_spectrum, "eigen table of the twisted operator")
    sp = add("orbifold-dim", cmd_orbifold_dim, "3 dim fixed + 24 (1 - dim half) - dim V")
    sp.add_argument("--dimV", type=int, required=True)
    sp.add_argument("--fixed", type=int, required=True)
    sp.add_argument("--half", type=int, default=0)
    sp = add("classify", cmd_classify, "semisimple candidates with h/k = (dim - 24)/24")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--require", default=None, help="fixed-point type, e.g. B4A2")
    sp.add_argument("--max-rank", type=int, default=9)
    add("f4-check", cmd_f4_check, "inner automorphism by Lambda4 on F4,6 A2,2")
    add("e7a5-check", cmd_e7a5_check, "inner automorphism on E7,3 A5,1")
    add("verify-all", cmd_verify_all, "run every acceptance criterion")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.fmt or os.environ.get("VOK_FORMAT", "tsv")
    if fmt not in ("json", "tsv"):
        parser.error(f"unknown output format {fmt!r}")
    tol = args.tol if args.tol is not None else os.environ.get("VOK_TOL")
    if tol is not None:
        try:
            set_tolerance("commutation", float(tol))
        except ValueError as exc:
            parser.error(str(exc))
    if args.seed is None:
        args.seed = int(os.environ.get("VOK_SEED", "0"))
    try:
        rep = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"vok {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(serialize(rep, fmt))
    return EXIT_OK if rep["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
