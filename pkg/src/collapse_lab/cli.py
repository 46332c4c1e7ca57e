"""Command-line interface: verification presets, single-class checks,
inventories, and reference-table recomputation.

Exit codes: 0 all checks pass; 1 usage or domain error; 2 claim mismatch;
3 cap truncation when --require-complete is set.  All searches are
deterministic and seed-free, so reports are byte-identical across runs.
"""

import argparse
import csv
import io
import json
import os
import sys
from importlib import resources

from . import criteria
from .criteria import (
    _ops_order,
    _rack_orbit,
    WitnessC,
    abelian_screen,
    austere_check,
    check_type_c,
    check_type_d,
    check_type_f,
    quasi_real_data,
    run_all_checks,
    verify_witness,
    witness_to_json,
)
from .gf import field_from_order, poly_parse, poly_text
from .matgrp import (
    block_diag,
    central_quotient,
    companion_matrix,
    conj_class,
    det,
    element_order,
    field_display,
    mat_mul,
    mat_parse,
    mat_pow,
    mat_text,
    matrix,
    matrix_to_perm,
    perm_cycles_text,
    sl_group,
    sp_form_check,
    sp_group,
)
from .rack import from_class
from .ssclass import (
    ProjectedClassOracle,
    count_vs_verdict_tables,
    inventory_to_csv,
    inventory_to_json,
    psl2_semisimple_inventory,
    reduction_witness,
    tables_to_json,
)
from .witnesses import (
    cube_rack_class,
    s6_double_transposition_witness,
    sl3_2_transvection_witness,
    sp4_2_rank2_involution_witness,
    sp4_3_classes,
    sp4_3_conjugation_data,
    sp6_2_embedded_witness,
)

_CAP_DEFAULTS = {
    "group": criteria._GROUP_CAP,
    "lattice": criteria._LATTICE_CAP,
    "fbound": criteria._F_BOUND,
    "pairs": criteria._PAIR_BUDGET,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


# ---------------------------------------------------------------------------
# claims (the unit of verify-preset reporting)
# ---------------------------------------------------------------------------

def _claim(name, expected, computed):
    return {"claim": name, "expected": expected, "computed": computed,
            "pass": expected == computed}


def _cycles(m):
    return perm_cycles_text(matrix_to_perm(m))


def _psl2_involution_class(q):
    """Class of the nontrivial involutions in the central quotient of SL_2(q)."""
    ctx = field_from_order(q)
    G = sl_group(2, q)
    Q = central_quotient(G, 2)
    return conj_class(Q, companion_matrix(ctx, (1, 0, 1)))


# ---------------------------------------------------------------------------
# verify presets
# ---------------------------------------------------------------------------

def _preset_sl3_2_transvection(caps):
    c, w, parts = sl3_2_transvection_witness()
    expected_small = sorted([
        "1,0,1;0,1,0;0,0,1",
        "1,1,0;0,1,0;0,0,1",
        "1,1,1;0,1,0;0,0,1",
    ])
    return [
        _claim("class size", 21, len(c)),
        _claim("orbit piece sizes", [3, 6], list(w.orbit_sizes)),
        _claim("small piece elements", expected_small,
               sorted(mat_text(m) for m in w.orbit_r)),
        _claim("both pinned conjugates sit in the large piece", True,
               parts["y"] in set(w.orbit_s) and parts["z"] in set(w.orbit_s)),
        _claim("witness re-verifies (two-piece)", True, verify_witness(w, c)),
    ]


def _preset_s6_double_transpositions(caps):
    c, w = s6_double_transposition_witness()
    expected_small = sorted(["(1 2)(3 4)", "(1 2)(5 6)", "(3 4)(5 6)"])
    expected_large = sorted(["(3 6)(4 5)", "(1 6)(2 5)", "(1 3)(2 4)",
                             "(3 5)(4 6)", "(1 5)(2 6)", "(1 4)(2 3)"])
    return [
        _claim("class size", 45, len(c)),
        _claim("orbit piece sizes", [3, 6], list(w.orbit_sizes)),
        _claim("small piece elements", expected_small,
               sorted(_cycles(m) for m in w.orbit_r)),
        _claim("large piece elements", expected_large,
               sorted(_cycles(m) for m in w.orbit_s)),
        _claim("witness re-verifies (two-piece)", True, verify_witness(w, c)),
    ]


def _preset_sp4_2_involutions(caps):
    c, w = sp4_2_rank2_involution_witness()
    return [
        _claim("class size", 45, len(c)),
        _claim("orbit piece sizes (sorted)", [3, 6], sorted(w.orbit_sizes)),
        _claim("witness re-verifies (two-piece)", True, verify_witness(w, c)),
    ]


def _preset_sp4_3_bireflections(caps):
    zc, wc = sp4_3_classes()
    z, y, v = sp4_3_conjugation_data()
    claims = [
        _claim("class sizes", [240, 480], [len(zc), len(wc)]),
        _claim("pinned conjugate lies in the 240-element class", True, y in zc),
        _claim("base point order", 3, element_order(z)),
    ]
    rk_z = from_class(zc)
    iz = rk_z.index[zc.ops.canon(z)]
    iy = rk_z.index[zc.ops.canon(y)]
    orb_z = _rack_orbit(rk_z, (iz, iy), iz)
    claims.append(_claim("pinned pair has distinct two-generated orbits",
                         True, iy not in orb_z))
    if iy not in orb_z:
        orb_y = _rack_orbit(rk_z, (iz, iy), iy)
        w_pair = WitnessC(
            r=rk_z.carrier[iz], s=rk_z.carrier[iy],
            subgroup_gens=(rk_z.carrier[iz], rk_z.carrier[iy]),
            orbit_r=tuple(sorted(rk_z.carrier[i] for i in orb_z)),
            orbit_s=tuple(sorted(rk_z.carrier[i] for i in orb_y)),
            odd_shortcut=True)
        claims.append(_claim("pinned odd-order pair re-verifies (two-piece)",
                             True, verify_witness(w_pair, zc)))
    d_stats = {}
    wd = check_type_d(from_class(wc), group_cap=caps["group"], stats=d_stats)
    claims.append(_claim("480-element class: dihedral witness found", True,
                         wd is not None))
    claims.append(_claim("dihedral witness re-verifies", True,
                         wd is not None and verify_witness(wd, wc)))
    return claims


def _preset_sp6_2_embedded(caps):
    c, w = sp6_2_embedded_witness()
    return [
        _claim("class size", 315, len(c)),
        _claim("orbit piece sizes", [3, 6], list(w.orbit_sizes)),
        _claim("witness re-verifies (two-piece)", True, verify_witness(w, c)),
    ]


def _preset_cube_rack(caps):
    c, w = cube_rack_class()
    rk = from_class(c)
    d_stats = {}
    wd = check_type_d(rk, group_cap=caps["group"], stats=d_stats)
    aust = austere_check(rk, pair_budget=caps["pairs"])
    return [
        _claim("class size", 8, len(c)),
        _claim("orbit piece sizes", [4, 4], list(w.orbit_sizes)),
        _claim("witness re-verifies (two-piece)", True, verify_witness(w, c)),
        _claim("dihedral scan is complete", True, bool(d_stats["complete"])),
        _claim("dihedral scan finds nothing", True, wd is None),
        _claim("austere check fails conclusively", [False, True],
               [aust["passed"], aust["complete"]]),
    ]


def _preset_sl4_7_equal_blocks(caps):
    ctx = field_from_order(7)
    A = companion_matrix(ctx, (1, 0, 1))
    T = block_diag(ctx, [A, A])
    tag, family, w = reduction_witness(T)
    oracle = ProjectedClassOracle(family["canonical_form"])
    ops = oracle.ops
    sq = ops.canon(mat_pow(mat_mul(w.r, w.s), 2))
    want = ops.canon(matrix(ctx, [[3, 0, 0, 0], [0, 5, 0, 0],
                                  [0, 0, 3, 0], [0, 0, 0, 5]]))
    checks = family["checks"]
    return [
        _claim("reduction case", "two-equal-blocks-quartic", tag),
        _claim("projected verdict", "TypeD", family["verdict"]),
        _claim("least multiplicative generator", 3, checks.get("generator")),
        _claim("squared product is the pinned split-torus element",
               mat_text(want), mat_text(sq)),
        _claim("projected product order", 6,
               checks.get("product_order_projective")),
        _claim("witness re-verifies against the membership oracle", True,
               verify_witness(w, oracle)),
    ]


def _preset_sl4_3_equal_blocks(caps):
    ctx = field_from_order(3)
    A = companion_matrix(ctx, (1, 0, 1))
    T = block_diag(ctx, [A, A])
    tag, family, w = reduction_witness(T)
    oracle = ProjectedClassOracle(family["canonical_form"])
    prod = oracle.ops.mul(w.r, w.s)
    checks = family["checks"]
    return [
        _claim("reduction case", "two-equal-blocks-ternary", tag),
        _claim("projected verdict", "TypeD", family["verdict"]),
        _claim("product order upstairs", 12, checks.get("product_order_sl")),
        _claim("projected product order", 6,
               checks.get("product_order_projective")),
        _claim("recomputed projected product order", 6,
               _ops_order(oracle.ops, prod)),
        _claim("witness re-verifies against the membership oracle", True,
               verify_witness(w, oracle)),
    ]


def _preset_psl2_7_involutions(caps):
    c = _psl2_involution_class(7)
    rk = from_class(c)
    d_stats, f_stats, c_stats = {}, {}, {}
    wd = check_type_d(rk, group_cap=caps["group"], stats=d_stats)
    wf = check_type_f(rk, bound=caps["fbound"], stats=f_stats)
    wcc = check_type_c(rk, lattice_cap=caps["lattice"],
                       group_cap=caps["group"], stats=c_stats)
    return [
        _claim("class size", 21, len(c)),
        _claim("dihedral pair scan is complete", True,
               bool(d_stats["complete"])),
        _claim("no dihedral witness", True, wd is None),
        _claim("noncommuting-quadruple scan is complete", True,
               bool(f_stats["complete"])),
        _claim("no quadruple witness", True, wf is None),
        _claim("two-piece lattice scan is complete", True,
               bool(c_stats["complete"])),
        _claim("no two-piece witness", True, wcc is None),
    ]


def _make_psl2_d_preset(q, size):
    def run(caps):
        c = _psl2_involution_class(q)
        rk = from_class(c)
        stats = {}
        wd = check_type_d(rk, group_cap=caps["group"], stats=stats)
        return [
            _claim("class size", size, len(c)),
            _claim("dihedral witness found", True, wd is not None),
            _claim("dihedral witness re-verifies", True,
                   wd is not None and verify_witness(wd, c)),
        ]

    return run


def _preset_psl2_7_involution_screen(caps):
    c = _psl2_involution_class(7)
    data = quasi_real_data(c)
    branch = abelian_screen(data, data["order"], torus_order=4)
    return [
        _claim("class size", 21, len(c)),
        _claim("projective order", 2, data["order"]),
        _claim("class is real", True, data["real"]),
        _claim("quasi-real power witnesses", [], list(data["j_witnesses"])),
        _claim("abelian screen branch", "NeedsRhoMinusOne", branch),
    ]


_PRESETS = {
    "cube-rack": (
        _preset_cube_rack,
        "8-element 3-cycle rack: two-piece witness, empty dihedral scan,"
        " austere failure"),
    "psl2-7-involutions": (
        _preset_psl2_7_involutions,
        "PSL(2,7) involutions: the three bounded scans, each claimed empty"),
    "psl2-7-involution-screen": (
        _preset_psl2_7_involution_screen,
        "PSL(2,7) involutions: realness and abelian-screen precondition data"),
    "psl2-11-involutions": (
        _make_psl2_d_preset(11, 55),
        "PSL(2,11) involutions: dihedral witness search"),
    "psl2-13-involutions": (
        _make_psl2_d_preset(13, 91),
        "PSL(2,13) involutions: dihedral witness search"),
    "s6-double-transpositions": (
        _preset_s6_double_transpositions,
        "Sym(6) double transpositions: pinned (3,6) two-piece witness"),
    "sl3-2-transvection": (
        _preset_sl3_2_transvection,
        "SL(3,2) transvections: pinned (3,6) two-piece witness"),
    "sl4-3-equal-blocks": (
        _preset_sl4_3_equal_blocks,
        "SL(4,3) equal 2x2 blocks: order-12 product pair, projected dihedral"
        " witness"),
    "sl4-7-equal-blocks": (
        _preset_sl4_7_equal_blocks,
        "SL(4,7) equal 2x2 blocks: split-torus square, projected dihedral"
        " witness"),
    "sp4-2-involutions": (
        _preset_sp4_2_involutions,
        "Sp(4,2) rank-2 involutions: pinned (3,6) two-piece witness"),
    "sp4-3-bireflections": (
        _preset_sp4_3_bireflections,
        "Sp(4,3) order-3 bireflections: pinned odd-order pair and dihedral"
        " search"),
    "sp6-2-embedded": (
        _preset_sp6_2_embedded,
        "Sp(6,2) 315-element class: embedded (3,6) two-piece witness"),
}


def _run_verify(args, caps):
    fn, _ = _PRESETS[args.preset]
    try:
        claims = fn(caps)
    except (AssertionError, ValueError) as exc:
        claims = [_claim("preset executes without drift", "no error",
                         "error: %s" % exc)]
    all_pass = all(cl["pass"] for cl in claims)
    report = {
        "command": "verify",
        "preset": args.preset,
        "claims": claims,
        "all_pass": all_pass,
    }
    _emit(report, args.format, _verify_text, _verify_csv)
    return 0 if all_pass else 2


def _disp(value):
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


def _verify_text(report):
    lines = ["preset: %s" % report["preset"]]
    for cl in report["claims"]:
        if cl["pass"]:
            lines.append("PASS %s: %s" % (cl["claim"], _disp(cl["computed"])))
        else:
            lines.append("FAIL %s: expected %s, computed %s"
                         % (cl["claim"], _disp(cl["expected"]),
                            _disp(cl["computed"])))
    good = sum(1 for cl in report["claims"] if cl["pass"])
    verdict = "PASS" if report["all_pass"] else "MISMATCH"
    lines.append("result: %s (%d/%d claims)"
                 % (verdict, good, len(report["claims"])))
    return "\n".join(lines)


def _verify_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "expected", "computed", "pass"])
    for cl in report["claims"]:
        w.writerow([cl["claim"], _disp(cl["expected"]), _disp(cl["computed"]),
                    "yes" if cl["pass"] else "no"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# class command
# ---------------------------------------------------------------------------

_GROUP_NAMES = {"sl": "SL", "sp": "Sp", "psl": "PSL"}


def _build_class_element(args, ctx):
    if (args.poly is None) == (args.matrix is None):
        raise ValueError("exactly one of --poly or --matrix is required")
    if args.poly is not None:
        try:
            coeffs = poly_parse(args.poly)
        except ValueError as exc:
            raise ValueError("bad --poly %r: %s" % (args.poly, exc))
        if len(coeffs) - 1 != args.n:
            raise ValueError("polynomial degree %d does not match --n %d"
                             % (len(coeffs) - 1, args.n))
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        if any(c >= ctx.q for c in coeffs):
            raise ValueError("coefficient out of range for GF(%s)"
                             % field_display(ctx))
        return companion_matrix(ctx, coeffs), poly_text(coeffs)
    M = mat_parse(ctx, args.matrix)
    if M.n != args.n:
        raise ValueError("matrix size %d does not match --n %d"
                         % (M.n, args.n))
    return M, mat_text(M)


def _run_class(args, caps):
    kind = args.group or "sl"
    ctx = field_from_order(args.q)
    M, label = _build_class_element(args, ctx)
    if kind == "sp":
        if args.n % 2:
            raise ValueError("symplectic dimension must be even")
        G = sp_group(args.n, args.q)
        if not sp_form_check(M, G.form):
            raise ValueError("matrix does not preserve the bundled"
                             " alternating form")
        ambient = G
    else:
        if det(M) != 1:
            raise ValueError("determinant is not 1: the element must sit"
                             " in SL(%d,%s)" % (args.n, field_display(ctx)))
        G = sl_group(args.n, args.q)
        ambient = central_quotient(G, args.n) if kind == "psl" else G
    c = conj_class(ambient, M)
    rack = [None]

    def need_rack():
        if rack[0] is None:
            rack[0] = from_class(c)
        return rack[0]

    checks = {}
    truncated = False
    which = args.check

    if which in ("d", "all"):
        stats = {}
        if which == "all":
            verdict = run_all_checks(need_rack(), f_bound=caps["fbound"],
                                     lattice_cap=caps["lattice"],
                                     group_cap=caps["group"])
            checks["scan"] = {
                "verdict": verdict.tag,
                "witness": (witness_to_json(verdict.witness, class_id=label)
                            if verdict.witness is not None else None),
                "bounds": verdict.bounds,
            }
            truncated |= any(not b.get("complete", True)
                             for b in verdict.bounds.values())
        else:
            w = check_type_d(need_rack(), group_cap=caps["group"], stats=stats)
            checks["d"] = {
                "found": w is not None,
                "witness": (witness_to_json(w, class_id=label)
                            if w is not None else None),
                "stats": stats,
            }
            truncated |= not stats.get("complete", True)
    if which == "c":
        stats = {}
        w = check_type_c(need_rack(), lattice_cap=caps["lattice"],
                         group_cap=caps["group"], stats=stats)
        checks["c"] = {
            "found": w is not None,
            "witness": (witness_to_json(w, class_id=label)
                        if w is not None else None),
            "stats": stats,
        }
        truncated |= not stats.get("complete", True)
    if which == "f":
        stats = {}
        w = check_type_f(need_rack(), bound=caps["fbound"], stats=stats)
        checks["f"] = {
            "found": w is not None,
            "witness": (witness_to_json(w, class_id=label)
                        if w is not None else None),
            "stats": stats,
        }
        truncated |= not stats.get("complete", True)
    if which in ("austere", "all"):
        rep = austere_check(need_rack(), pair_budget=caps["pairs"])
        checks["austere"] = {
            "passed": rep["passed"],
            "complete": rep["complete"],
            "pairs_checked": rep["pairs_checked"],
            "total_pairs": rep["total_pairs"],
            "counterexample": ([mat_text(x) for x in rep["counterexample"]]
                               if rep["counterexample"] else None),
        }
        truncated |= not rep["complete"]
    if which in ("screen", "all"):
        data = quasi_real_data(c)
        branch = abelian_screen(data, data["order"])
        checks["screen"] = {
            "real": data["real"],
            "quasi_real_witnesses": list(data["j_witnesses"]),
            "j_squared_escapes": data["j_squared_escapes"],
            "order": data["order"],
            "branch": branch,
        }

    report = {
        "command": "class",
        "group": "%s(%d,%s)" % (_GROUP_NAMES[kind], args.n,
                                field_display(ctx)),
        "n": args.n,
        "q": args.q,
        "label": label,
        "class_size": len(c),
        "base_order": _ops_order(c.ops, c.base),
        "checks": checks,
        "complete": not truncated,
        "caps": dict(sorted(caps.items())),
    }
    _emit(report, args.format, _class_text, _class_csv)
    if truncated and args.require_complete:
        return 3
    return 0


def _class_text(report):
    lines = [
        "class: %s, %s" % (report["group"], report["label"]),
        "class size: %d   base order: %d"
        % (report["class_size"], report["base_order"]),
    ]
    for name in sorted(report["checks"]):
        entry = report["checks"][name]
        if name == "scan":
            lines.append("scan verdict: %s" % entry["verdict"])
            if entry["witness"]:
                lines.append("  witness orbit sizes: %s"
                             % _disp(entry["witness"]["orbit_sizes"]))
        elif name == "austere":
            state = "passed" if entry["passed"] else "failed"
            suffix = "complete" if entry["complete"] else "truncated"
            lines.append("austere: %s (%s, %d/%d pairs)"
                         % (state, suffix, entry["pairs_checked"],
                            entry["total_pairs"]))
        elif name == "screen":
            lines.append("screen: %s (real=%s, quasi-real witnesses=%s)"
                         % (entry["branch"], entry["real"],
                            _disp(entry["quasi_real_witnesses"])))
        else:
            state = "witness found" if entry["found"] else "no witness"
            suffix = ("complete" if entry["stats"].get("complete", True)
                      else "truncated")
            extra = ""
            if entry["witness"]:
                extra = ", orbit sizes %s" % _disp(
                    entry["witness"]["orbit_sizes"])
            lines.append("check %s: %s (%s%s)" % (name, state, suffix, extra))
    lines.append("complete: %s" % ("yes" if report["complete"] else "no"))
    return "\n".join(lines)


def _class_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "outcome", "complete", "detail"])
    for name in sorted(report["checks"]):
        entry = report["checks"][name]
        if name == "scan":
            done = all(b.get("complete", True)
                       for b in entry["bounds"].values())
            detail = (_disp(entry["witness"]["orbit_sizes"])
                      if entry["witness"] else "")
            w.writerow([name, entry["verdict"], "yes" if done else "no",
                        detail])
        elif name == "austere":
            w.writerow([name, "passed" if entry["passed"] else "failed",
                        "yes" if entry["complete"] else "no",
                        "%d/%d pairs" % (entry["pairs_checked"],
                                         entry["total_pairs"])])
        elif name == "screen":
            w.writerow([name, entry["branch"], "yes",
                        "real=%s" % entry["real"]])
        else:
            detail = (_disp(entry["witness"]["orbit_sizes"])
                      if entry["witness"] else "")
            w.writerow([name, "found" if entry["found"] else "none",
                        "yes" if entry["stats"].get("complete", True)
                        else "no", detail])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# inventory and tables commands
# ---------------------------------------------------------------------------

def _run_inventory(args, caps):
    if args.n != 2:
        raise ValueError("only the degree-2 projective inventory is"
                         " implemented; use --n 2")
    inv = psl2_semisimple_inventory(args.q)
    report = inventory_to_json(inv)
    if args.format == "csv":
        sys.stdout.write(inventory_to_csv(inv))
    elif args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["inventory: PSL(2,%d), group order %d"
                 % (inv.q, inv.group_order)]
        for r in inv.rows:
            lines.append(
                "poly=%s kind=%s order=%d size=%d verdict=%s"
                % (r.label.poly, r.kind, r.order, r.size, r.verdict))
        lines.append("structural checks: all pass")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _load_expected_rows():
    path = resources.files("collapse_lab").joinpath("data/expected_rows.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    return {r["row_id"]: r for r in data["rows"]}


def _run_tables(args, caps):
    q_range = _parse_int_list(args.q) if args.q else None
    n_range = _parse_int_list(args.n) if args.n else None
    rep = count_vs_verdict_tables(q_range=q_range, n_range=n_range)
    fixture = _load_expected_rows()
    diffs = []
    for row in rep["rows"]:
        pinned = fixture.get(row["row_id"])
        if pinned is None:
            diffs.append({"row_id": row["row_id"], "kind": "missing-fixture"})
            continue
        if pinned["expected"] != row["expected"]:
            diffs.append({"row_id": row["row_id"], "kind": "fixture-drift",
                          "fixture": pinned["expected"],
                          "embedded": row["expected"]})
        if not row["match"]:
            diffs.append({"row_id": row["row_id"], "kind": "verdict-mismatch",
                          "expected": row["expected"],
                          "computed": row["computed"]})
    if q_range is None and n_range is None:
        covered = {row["row_id"] for row in rep["rows"]}
        for row_id in sorted(fixture):
            if row_id not in covered:
                diffs.append({"row_id": row_id, "kind": "row-not-recomputed"})
    ok = not diffs
    report = dict(tables_to_json(rep))
    report["command"] = "tables"
    report["preset"] = args.preset
    report["diffs"] = diffs
    report["all_match"] = ok
    _emit(report, args.format, _tables_text, _tables_csv)
    return 0 if ok else 2


def _tables_text(report):
    lines = []
    for row in report["rows"]:
        lines.append("%-14s %-8s %-40s expected=%-10s computed=%-22s %s"
                     % (row["row_id"], row["group"], row["class"],
                        row["expected"], row["computed"],
                        "match" if row["match"] else "MISMATCH"))
    for d in report["diffs"]:
        lines.append("diff: %s" % _disp(d))
    lines.append("result: %s (%d/%d rows)"
                 % ("PASS" if report["all_match"] else "MISMATCH",
                    report["matches"], report["total"]))
    return "\n".join(lines)


def _tables_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row-id", "group", "class", "n", "q", "expected", "computed",
                "match"])
    for row in report["rows"]:
        w.writerow([row["row_id"], row["group"], row["class"], row["n"],
                    row["q"], row["expected"], row["computed"],
                    "yes" if row["match"] else "no"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _emit(report, fmt, text_fn, csv_fn):
    if fmt == "json":
        out = json.dumps(report, indent=2, sort_keys=True)
    elif fmt == "csv":
        out = csv_fn(report)
    else:
        out = text_fn(report)
    if not out.endswith("\n"):
        out += "\n"
    sys.stdout.write(out)


def _parse_int_list(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if part:
            out.append(int(part))
    if not out:
        raise ValueError("empty integer list")
    return tuple(out)


def _resolve_caps(args):
    caps = dict(_CAP_DEFAULTS)
    raw = os.environ.get("COLLAPSE_LAB_CAPS", "")
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or key not in caps or not value.isdigit() or int(value) <= 0:
            raise ValueError(
                "bad COLLAPSE_LAB_CAPS entry %r (want key=positive-int with"
                " keys group, lattice, fbound, pairs)" % part)
        caps[key] = int(value)
    if getattr(args, "cap_group", None) is not None:
        if args.cap_group <= 0:
            raise ValueError("--cap-group must be positive")
        caps["group"] = args.cap_group
    if getattr(args, "cap_lattice", None) is not None:
        if args.cap_lattice <= 0:
            raise ValueError("--cap-lattice must be positive")
        caps["lattice"] = args.cap_lattice
    return caps


def _add_common_flags(p, formats=True):
    if formats:
        p.add_argument("--format", choices=["json", "csv", "text"],
                       default="text", help="output format (default: text)")
    p.add_argument("--cap-group", type=int, default=None,
                   help="subgroup-closure size cap")
    p.add_argument("--cap-lattice", type=int, default=None,
                   help="subgroup-lattice size cap")


def _build_parser():
    parser = _Parser(
        prog="collapse-lab",
        description="Deterministic witness searches and class inventories"
                    " for conjugation racks of finite matrix groups.")
    sub = parser.add_subparsers(dest="cmd", required=True,
                                parser_class=_Parser)

    p_verify = sub.add_parser(
        "verify", help="run a named verification preset",
        description="Rebuild a pinned configuration, re-check every claim,"
                    " and report pass/fail per claim (exit 2 on mismatch).")
    p_verify.add_argument("preset", choices=sorted(_PRESETS),
                          help="preset name")
    _add_common_flags(p_verify)

    p_class = sub.add_parser(
        "class", help="build one conjugacy class and run checks",
        description="Build the conjugacy class of an explicit element and"
                    " run the requested bounded checks.")
    p_class.add_argument("--n", type=int, required=True,
                         help="matrix dimension")
    p_class.add_argument("--q", type=int, required=True, help="field order")
    grp = p_class.add_mutually_exclusive_group()
    grp.add_argument("--group", choices=["sl", "sp", "psl"], default=None,
                     help="ambient group kind (default: sl)")
    grp.add_argument("--sl", dest="group", action="store_const", const="sl",
                     help="shorthand for --group sl")
    grp.add_argument("--sp", dest="group", action="store_const", const="sp",
                     help="shorthand for --group sp")
    grp.add_argument("--psl", dest="group", action="store_const", const="psl",
                     help="shorthand for --group psl")
    p_class.add_argument("--poly", default=None,
                         help="characteristic polynomial, e.g. \"X^2+3X+1\""
                              " (companion-matrix representative)")
    p_class.add_argument("--matrix", default=None,
                         help="explicit matrix, rows ';'-separated, entries"
                              " ','-separated, e.g. \"0,2;1,0\"")
    p_class.add_argument("--check",
                         choices=["c", "d", "f", "austere", "screen", "all"],
                         default="all", help="which check to run")
    p_class.add_argument("--require-complete", action="store_true",
                         help="exit 3 if any bounded search was truncated")
    _add_common_flags(p_class)

    p_inv = sub.add_parser(
        "inventory", help="semisimple class inventory for one (n, q)",
        description="Emit one row per semisimple class of the central"
                    " quotient, with verdicts and witness references.")
    p_inv.add_argument("--n", type=int, required=True)
    p_inv.add_argument("--q", type=int, required=True)
    _add_common_flags(p_inv)

    p_tab = sub.add_parser(
        "tables", help="recompute the desk-scale reference rows",
        description="Re-derive every desk-scale reference verdict from"
                    " scratch and diff against the bundled expected rows.")
    p_tab.add_argument("--preset", choices=["reference"], default="reference",
                       help="expected-row set to diff against")
    p_tab.add_argument("--n", default=None,
                       help="comma-separated dimension filter, e.g. \"3,4\"")
    p_tab.add_argument("--q", default=None,
                       help="comma-separated field-order filter, e.g. \"2,3\"")
    _add_common_flags(p_tab)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        caps = _resolve_caps(args)
        if args.cmd == "verify":
            return _run_verify(args, caps)
        if args.cmd == "class":
            return _run_class(args, caps)
        if args.cmd == "inventory":
            return _run_inventory(args, caps)
        return _run_tables(args, caps)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
