"""Unit tests for semisimple class labels, membership oracles, block
reductions, the degree-2 projective inventory, and the reference tables."""

import pytest

from collapse_lab.criteria import verify_witness
from collapse_lab.gf import field_from_order
from collapse_lab.matgrp import (
    block_diag,
    central_quotient,
    companion_matrix,
    conj_class,
    identity,
    mat_mul,
    mat_pow,
    matrix,
    n_bracket,
    scalar_matrix,
    sl_group,
)
from collapse_lab.rack import project_rack
from collapse_lab.ssclass import (
    ClassLabel,
    OPEN_VERDICT,
    ProjectedClassOracle,
    class_membership_oracle,
    count_vs_verdict_tables,
    enum_irreducible_labels,
    frobenius_powers_distinct,
    inventory_to_csv,
    inventory_to_json,
    psl2_semisimple_inventory,
    reduction_witness,
    tables_to_json,
)


def _diag(ctx, entries):
    n = len(entries)
    return matrix(ctx, [[entries[i] if i == j else 0 for j in range(n)]
                        for i in range(n)])


# --- labels ------------------------------------------------------------------

def test_class_label_validation():
    ctx = field_from_order(7)
    rep = companion_matrix(ctx, (1, 0, 1))
    lab = ClassLabel(2, 7, (1, 0, 1), True, rep)
    assert lab.poly == "X^2+1"
    # Constant term must be (-1)^n: X^2+2X+2 has determinant 2.
    with pytest.raises(ValueError):
        ClassLabel(2, 7, (2, 2, 1), True, companion_matrix(ctx, (2, 2, 1)))
    # Representative must match the polynomial.
    with pytest.raises(ValueError):
        ClassLabel(2, 7, (1, 0, 1), True, companion_matrix(ctx, (1, 3, 1)))


def test_enum_irreducible_labels_counts():
    assert len(enum_irreducible_labels(2, 7)) == 3
    assert len(enum_irreducible_labels(2, 3)) == 1   # X^2+1 only
    assert len(enum_irreducible_labels(2, 5)) == 2
    assert len(enum_irreducible_labels(3, 2)) == 2   # X^3+X+1, X^3+X^2+1
    for lab in enum_irreducible_labels(2, 7):
        assert lab.irreducible
        assert lab.coeffs[0] == 1 and lab.coeffs[-1] == 1


# --- membership oracle vs conjugacy class (dual route) -----------------------

def test_oracle_fiber_equals_class_exhaustive():
    # For every irreducible label of four desk groups, the characteristic
    # polynomial fiber coincides elementwise with the conjugacy class of the
    # label representative.
    for n, q in ((2, 3), (2, 5), (2, 7), (3, 2)):
        G = sl_group(n, q)
        for lab in enum_irreducible_labels(n, q):
            fiber = class_membership_oracle(G, lab)
            cls = conj_class(G, lab.representative)
            assert fiber == cls.element_set, (n, q, lab.poly)


def test_oracle_reducible_semisimple_restriction():
    # chi = (X - 1)^2 over GF(7): the only semisimple element in the fiber is
    # the identity, even though the fiber itself contains all transvections.
    ctx = field_from_order(7)
    G = sl_group(2, 7)
    I = identity(ctx, 2)
    lab = ClassLabel(2, 7, (1, 5, 1), False, I)
    fiber = class_membership_oracle(G, lab)
    assert fiber == frozenset([I])


def test_projection_fiber_equals_scalar_bracket_sl2_7():
    # For each semisimple class the size of the projection fiber onto the
    # central quotient equals the number of determinant-1 scalars c with
    # c * x conjugate to x.
    ctx = field_from_order(7)
    G = sl_group(2, 7)
    Q = central_quotient(G, 2)
    for coeffs in ((1, 0, 1), (1, 1, 1), (1, 4, 1), (1, 6, 1), (1, 3, 1)):
        x = companion_matrix(ctx, coeffs)
        c = conj_class(G, x)
        _, fiber = project_rack(c, Q)
        assert fiber == len(n_bracket(x, G)), coeffs


def test_projection_fiber_two_only_for_order_four_lift():
    ctx = field_from_order(7)
    G = sl_group(2, 7)
    Q = central_quotient(G, 2)
    c = conj_class(G, companion_matrix(ctx, (1, 0, 1)))
    image, fiber = project_rack(c, Q)
    assert (len(c), fiber, len(image)) == (42, 2, 21)


# --- Frobenius-power distinctness ---------------------------------------------

def test_frobenius_powers_distinct_all_irreducible_classes():
    for n, q in ((3, 2), (3, 3)):
        labels = enum_irreducible_labels(n, q)
        assert labels, (n, q)
        for lab in labels:
            assert frobenius_powers_distinct(lab.representative, n, q), lab.poly


def test_frobenius_powers_distinct_hypotheses():
    ctx = field_from_order(2)
    with pytest.raises(ValueError):
        frobenius_powers_distinct(companion_matrix(ctx, (1, 1, 1)), 2, 2)
    ctx3 = field_from_order(3)
    split = _diag(ctx3, [1, 1, 1])
    with pytest.raises(ValueError):
        frobenius_powers_distinct(split, 3, 3)


# --- projected class oracle ----------------------------------------------------

def test_projected_class_oracle_membership():
    ctx = field_from_order(7)
    T = block_diag(ctx, [companion_matrix(ctx, (1, 0, 1))] * 2)
    oracle = ProjectedClassOracle(T)
    assert T in oracle
    # Scalar multiples by determinant-1 central elements stay inside.
    assert scalar_matrix(ctx, 4, 6) not in oracle  # central: wrong char poly
    minus_T = mat_mul(scalar_matrix(ctx, 4, 6), T)
    assert minus_T in oracle
    assert identity(ctx, 4) not in oracle
    # Non-semisimple matrices are rejected even with the right polynomial.
    assert matrix(ctx, [[1, 1], [0, 1]]) not in oracle
    # Canonicalization is idempotent and scalar-invariant.
    assert oracle.rep(T) == oracle.rep(minus_T)
    assert oracle.rep(oracle.rep(T)) == oracle.rep(T)


def test_projected_class_oracle_ops_consistency():
    ctx = field_from_order(7)
    T = block_diag(ctx, [companion_matrix(ctx, (1, 0, 1))] * 2)
    oracle = ProjectedClassOracle(T)
    ops = oracle.ops
    a = ops.canon(T)
    assert ops.mul(a, ops.inv(a)) == ops.identity_of(a)


# --- reduction dispatch: one instance per case ---------------------------------

def _reduction_table():
    c3 = field_from_order(3)
    c4 = field_from_order(4)
    c5 = field_from_order(5)
    c7 = field_from_order(7)
    c8 = field_from_order(8)
    c13 = field_from_order(13)
    return [
        ("diagonal-pair-family", "TypeC", _diag(c5, [1, 2, 3]), (5, 5)),
        ("diagonal-pair-family", "TypeC", _diag(c8, [2, c8.inv_i(2)]), (8, 8)),
        ("split-torus-dihedral", "TypeD", _diag(c7, [2, 4]), (7, 7)),
        ("split-involution", "TypeD", _diag(c13, [5, 8]), (13, 13)),
        ("split-involution", "NoWitnessWithinBounds", _diag(c5, [2, 3]),
         (5, 5)),
        ("block-with-eigenvalue", "TypeC",
         block_diag(c3, [matrix(c3, [[1]]), companion_matrix(c3, (1, 0, 1))]),
         (9, 9)),
        ("three-plus-blocks", "TypeC",
         block_diag(c5, [companion_matrix(c5, (1, 1, 1))] * 3), (20, 20)),
        ("two-blocks-frobenius-separated", "TypeC",
         block_diag(c4, [companion_matrix(c4, (1, 2, 1)),
                         companion_matrix(c4, (1, 3, 1))]), (12, 12)),
        ("two-blocks-gcd", "TypeC",
         block_diag(c5, [companion_matrix(c5, (2, 0, 1)),
                         companion_matrix(c5, (3, 0, 0, 0, 1))]), (20, 20)),
        ("two-blocks-not-conjugate", "TypeC",
         block_diag(c7, [companion_matrix(c7, (4, 0, 1)),
                         companion_matrix(c7, (2, 0, 1))]), (42, 42)),
        ("two-equal-blocks-quartic", "TypeD",
         block_diag(c7, [companion_matrix(c7, (1, 0, 1))] * 2), (1, 1)),
        ("two-equal-blocks-ternary", "TypeD",
         block_diag(c3, [companion_matrix(c3, (1, 0, 1))] * 2), (1, 1)),
    ]


def test_reduction_witness_case_table():
    for want_tag, want_verdict, T, want_sizes in _reduction_table():
        tag, family, w = reduction_witness(T)
        assert tag == want_tag
        assert family["verdict"] == want_verdict
        assert family["sizes"] == want_sizes
        if want_verdict == "NoWitnessWithinBounds":
            assert w is None
        else:
            assert w is not None


def test_reduction_witnesses_verify_against_oracle():
    # Cheap instances re-verified end to end through the membership oracle.
    c3 = field_from_order(3)
    c5 = field_from_order(5)
    c7 = field_from_order(7)
    for T in (
        _diag(c5, [1, 2, 3]),
        _diag(c7, [2, 4]),
        block_diag(c7, [companion_matrix(c7, (1, 0, 1))] * 2),
        block_diag(c3, [companion_matrix(c3, (1, 0, 1))] * 2),
    ):
        tag, family, w = reduction_witness(T)
        assert w is not None, tag
        assert verify_witness(w, ProjectedClassOracle(family["canonical_form"]))


def test_reduction_quartic_checks():
    ctx = field_from_order(7)
    T = block_diag(ctx, [companion_matrix(ctx, (1, 0, 1))] * 2)
    tag, family, w = reduction_witness(T)
    checks = family["checks"]
    assert checks["generator"] == 3
    assert checks["product_order_projective"] == 6
    ops = ProjectedClassOracle(family["canonical_form"]).ops
    squared = ops.canon(mat_pow(mat_mul(w.r, w.s), 2))
    assert squared == ops.canon(_diag(ctx, [3, 5, 3, 5]))


def test_reduction_ternary_checks():
    ctx = field_from_order(3)
    T = block_diag(ctx, [companion_matrix(ctx, (1, 0, 1))] * 2)
    tag, family, w = reduction_witness(T)
    checks = family["checks"]
    assert checks["product_order_sl"] == 12
    assert checks["product_order_projective"] == 6


def test_reduction_degenerate_instances_raise():
    c3 = field_from_order(3)
    c5 = field_from_order(5)
    with pytest.raises(AssertionError,
                       match="first piece is not a single inner orbit"):
        reduction_witness(block_diag(c3, [companion_matrix(c3, (1, 0, 1))] * 3))
    with pytest.raises(AssertionError,
                       match="projection is not injective on the family"):
        reduction_witness(block_diag(c5, [companion_matrix(c5, (3, 0, 1)),
                                          companion_matrix(c5, (2, 0, 1))]))


def test_reduction_rejects_out_of_scope_inputs():
    c5 = field_from_order(5)
    c7 = field_from_order(7)
    with pytest.raises(ValueError, match="central input"):
        reduction_witness(scalar_matrix(c5, 4, 2))
    with pytest.raises(ValueError, match="irreducible class"):
        reduction_witness(companion_matrix(c7, (1, 0, 1)))
    with pytest.raises(ValueError, match="not semisimple"):
        reduction_witness(matrix(c7, [[1, 1], [0, 1]]))
    with pytest.raises(ValueError, match="not in SL"):
        reduction_witness(matrix(c7, [[1, 0], [0, 2]]))


# --- degree-2 projective inventory ----------------------------------------------

def test_inventory_q7_rows():
    inv = psl2_semisimple_inventory(7)
    assert inv.group_order == 168
    rows = [(r.kind, r.order, r.size) for r in inv.rows]
    assert rows == [("identity", 1, 1), ("involution", 2, 21),
                    ("split", 3, 56), ("irreducible", 4, 42)]
    assert all(inv.checks.values())
    by_kind = {r.kind: r for r in inv.rows}
    assert by_kind["irreducible"].verdict == OPEN_VERDICT
    assert by_kind["split"].verdict == "collapses (type D)"
    assert by_kind["involution"].verdict == "kthulhu-table-reference"


def test_inventory_q8_rows():
    inv = psl2_semisimple_inventory(8)
    assert inv.group_order == 504
    kinds = [(r.kind, r.order, r.size) for r in inv.rows]
    assert kinds.count(("split", 7, 72)) == 3
    assert kinds.count(("irreducible", 3, 56)) == 1
    assert kinds.count(("irreducible", 9, 56)) == 3
    assert all(inv.checks.values())


def test_inventory_q11_rows():
    inv = psl2_semisimple_inventory(11)
    assert inv.group_order == 660
    irr = [r for r in inv.rows if r.kind == "irreducible"]
    assert len(irr) == 2
    assert all(r.size == 110 for r in irr)
    inv_row = next(r for r in inv.rows if r.kind == "involution")
    assert inv_row.size == 55
    assert inv_row.verdict == "collapses (type D)"


def test_inventory_excluded_fields():
    for q in (2, 3, 4, 5, 9):
        with pytest.raises(ValueError, match="excluded"):
            psl2_semisimple_inventory(q)
    with pytest.raises(ValueError):
        psl2_semisimple_inventory(6)  # not a prime power


def test_inventory_serializations():
    inv = psl2_semisimple_inventory(7)
    blob = inventory_to_json(inv)
    assert blob["q"] == 7
    assert blob["group_order"] == 168
    assert len(blob["rows"]) == 4
    text = inventory_to_csv(inv)
    lines = text.strip().split("\n")
    assert lines[0] == "n,q,char-poly,irreducible,class-size,verdict,witness-ref,lemma-tag"
    assert len(lines) == 5


# --- reference tables -------------------------------------------------------------

def test_count_vs_verdict_filtered_q3():
    report = count_vs_verdict_tables(q_range=(3,))
    ids = [row["row_id"] for row in report["rows"]]
    assert ids == ["sp4-3-z", "sp4-3-w"]
    assert all(row["match"] for row in report["rows"])
    blob = tables_to_json(report)
    assert blob["total"] == 2
    assert blob["matches"] == 2
    for row in blob["rows"]:
        assert set(row) >= {"row_id", "group", "class", "n", "q", "expected",
                            "computed", "match", "strategy"}
        assert "stats" not in row
