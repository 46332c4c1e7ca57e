"""Unit tests for the pinned small-group witness constructors.

The constructors re-assert their own pinned data on every call; these tests
exercise each one and independently recheck the headline facts.
"""

from collapse_lab.criteria import check_type_d, verify_witness
from collapse_lab.gf import field_from_order
from collapse_lab.matgrp import (
    element_order,
    mat_inv,
    matrix_to_perm,
    perm_cycles_text,
    sp_form_check,
    sp_preset_form,
)
from collapse_lab.rack import from_class
from collapse_lab.witnesses import (
    cube_rack_class,
    s6_double_transposition_witness,
    sl3_2_classes,
    sl3_2_transvection_witness,
    sp4_2_rank2_involution_witness,
    sp4_3_classes,
    sp4_3_conjugation_data,
    sp6_2_embedded_witness,
    sym_group,
)


def test_sym_group_order():
    assert len(sym_group(3).elements()) == 6
    assert len(sym_group(4).elements()) == 24


def test_sl3_2_classes_sizes():
    reg, trans = sl3_2_classes()
    assert len(reg) == 42
    assert len(trans) == 21
    assert reg.base not in trans


def test_sl3_2_transvection_witness():
    c, w, parts = sl3_2_transvection_witness()
    assert len(c) == 21
    assert w.orbit_sizes == (3, 6)
    assert verify_witness(w, c)
    assert parts["y"] == mat_inv(parts["cv"]) == parts["cv"]  # cv is an involution
    for key in ("x", "y", "z"):
        assert parts[key] in c
    # The two conjugators act as pinned: y and z land in the larger piece.
    assert parts["y"] in set(w.orbit_s)
    assert parts["z"] in set(w.orbit_s)
    assert parts["x"] in set(w.orbit_r)


def test_s6_double_transposition_witness():
    c, w = s6_double_transposition_witness()
    assert len(c) == 45
    assert w.orbit_sizes == (3, 6)
    assert verify_witness(w, c)
    small = sorted(perm_cycles_text(matrix_to_perm(m)) for m in w.orbit_r)
    assert small == ["(1 2)(3 4)", "(1 2)(5 6)", "(3 4)(5 6)"]
    large = sorted(perm_cycles_text(matrix_to_perm(m)) for m in w.orbit_s)
    assert large == ["(1 3)(2 4)", "(1 4)(2 3)", "(1 5)(2 6)",
                     "(1 6)(2 5)", "(3 5)(4 6)", "(3 6)(4 5)"]


def test_sp4_2_pinned_witness():
    c, w = sp4_2_rank2_involution_witness()
    assert len(c) == 45
    assert sorted(w.orbit_sizes) == [3, 6]
    assert verify_witness(w, c)
    form = sp_preset_form(4, 2)
    assert sp_form_check(w.r, form)
    assert sp_form_check(w.s, form)
    assert element_order(w.r) == 2


def test_sp4_3_classes_and_conjugation():
    zc, wc = sp4_3_classes()
    assert (len(zc), len(wc)) == (240, 480)
    z, y, v = sp4_3_conjugation_data()
    assert y in zc
    assert element_order(z) == 3
    form = sp_preset_form(4, 3)
    assert sp_form_check(v, form)


def test_sp4_3_dihedral_on_large_class():
    _, wc = sp4_3_classes()
    stats = {}
    wd = check_type_d(from_class(wc), stats=stats)
    assert wd is not None
    assert verify_witness(wd, wc)


def test_sp6_2_embedded_witness():
    c, w = sp6_2_embedded_witness()
    assert len(c) == 315
    assert w.orbit_sizes == (3, 6)
    assert verify_witness(w, c)
    form = sp_preset_form(6, 2)
    assert sp_form_check(w.r, form)


def test_cube_rack_class():
    c, w = cube_rack_class()
    assert len(c) == 8
    assert w.orbit_sizes == (4, 4)
    assert w.odd_shortcut
    assert verify_witness(w, c)
    # The two pieces are the two rotation families, swapped by inversion.
    assert mat_inv(w.r) in set(w.orbit_s)
    small = {perm_cycles_text(matrix_to_perm(m)) for m in w.orbit_r}
    assert small == {"(1 2 3)", "(1 3 4)", "(1 4 2)", "(2 4 3)"}
