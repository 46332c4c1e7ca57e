"""Pinned small-group witnesses behind the desk-scale reference rows.

Every constructor returns explicit matrices over a small field together with
the materialized conjugacy class they live in, so callers can re-verify all
witness invariants from scratch with ``criteria.verify_witness``.  Orbits
attached to pinned witnesses are recomputed fresh on every call, never stored
blind, and each constructor asserts the frozen class sizes and orbit shapes
it was built against; any drift raises immediately instead of returning a
stale certificate.
"""

from .criteria import WitnessC, _conj_orbit
from .matgrp import (
    basis_elem_matrix,
    block_diag,
    closure,
    conj_class,
    element_order,
    field_from_order,
    mat_add,
    mat_inv,
    mat_mul,
    matrix,
    perm_from_cycles,
    perm_matrix,
    scalar_matrix,
    sl_group,
    sp_form_check,
    sp_group,
    transpose,
)

__all__ = [
    "sym_group",
    "sl3_2_classes",
    "sl3_2_transvection_witness",
    "s6_double_transposition_witness",
    "sp4_2_rank2_involution_witness",
    "sp4_3_classes",
    "sp4_3_conjugation_data",
    "sp6_2_embedded_witness",
    "cube_rack_class",
]


def sym_group(n, q=2):
    """Symmetric group of degree n as permutation matrices over GF(q)."""
    ctx = field_from_order(q)
    gens = [
        perm_matrix(ctx, perm_from_cycles(n, [(1, 2)])),
        perm_matrix(ctx, perm_from_cycles(n, [tuple(range(1, n + 1))])),
    ]
    return closure(gens)


def _perm(ctx, n, cycles):
    return perm_matrix(ctx, perm_from_cycles(n, cycles))


def _mat_rank(M):
    """Row rank by Gaussian elimination over the matrix's own field."""
    ctx = M.ctx
    n = M.n
    rows = [list(r) for r in M.rows()]
    rank = 0
    for col in range(n):
        pivot = None
        for i in range(rank, n):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.inv_i(rows[rank][col])
        rows[rank] = [ctx.mul_i(inv, v) for v in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [ctx.add_i(a, ctx.neg_i(ctx.mul_i(f, b)))
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _fixed_space_corank(M):
    """rank(M - 1), the codimension of the fixed space."""
    neg_one = scalar_matrix(M.ctx, M.n, M.ctx.neg_i(1))
    return _mat_rank(mat_add(M, neg_one))


def _require(cond, what):
    if not cond:
        raise AssertionError("pinned data drifted: %s" % what)


# ---------------------------------------------------------------------------
# SL(3,2): the two nontrivial unipotent classes, and the pinned two-piece
# witness inside the transvection class
# ---------------------------------------------------------------------------

def sl3_2_classes():
    """(regular, transvections): the 42- and 21-element classes of SL(3,2)."""
    G = sl_group(3, 2)
    ctx = G.ctx
    reg = conj_class(G, matrix(ctx, [[1, 1, 0], [0, 1, 1], [0, 0, 1]]))
    trans = conj_class(G, basis_elem_matrix(ctx, 3, 0, 2))
    _require(len(reg) == 42, "regular class size 42 (got %d)" % len(reg))
    _require(len(trans) == 21, "transvection class size 21 (got %d)" % len(trans))
    return reg, trans


def sl3_2_transvection_witness():
    """Pinned two-piece witness inside the 21-element transvection class.

    Returns (c, w, parts).  parts maps names to the auxiliary matrices: the
    base transvection x, its conjugates y = cv x cv^-1 and z = cw x cw^-1,
    and the conjugators cv, cw themselves.  The two orbit pieces under the
    subgroup generated by (x, y, z) have sizes 3 and 6; the size-3 piece is
    pinned element by element, and the size-6 piece must contain y, z and
    the transpose of z.
    """
    G = sl_group(3, 2)
    ctx = G.ctx
    x = basis_elem_matrix(ctx, 3, 0, 2)
    cv = matrix(ctx, [[0, 1, 0], [1, 0, 1], [1, 0, 0]])
    cw = matrix(ctx, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    y = mat_mul(mat_mul(cv, x), mat_inv(cv))
    z = mat_mul(mat_mul(cw, x), mat_inv(cw))
    _require(y == matrix(ctx, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
             "conjugate y of the base transvection")
    _require(z == basis_elem_matrix(ctx, 3, 2, 1),
             "conjugate z of the base transvection")
    c = conj_class(G, x)
    _require(len(c) == 21, "class size 21")
    gens = (x, y, z)
    orbit_r = _conj_orbit(c.ops, gens, x)
    orbit_s = _conj_orbit(c.ops, gens, y)
    expected_r = {
        x,
        basis_elem_matrix(ctx, 3, 0, 1),
        matrix(ctx, [[1, 1, 1], [0, 1, 0], [0, 0, 1]]),
    }
    _require(set(orbit_r) == expected_r, "size-3 orbit piece elements")
    _require(len(orbit_s) == 6, "size-6 orbit piece")
    _require({y, z, transpose(z)} <= set(orbit_s),
             "membership of y, z, z^T in the size-6 piece")
    _require(orbit_s == _conj_orbit(c.ops, gens, z),
             "y and z share one orbit piece")
    w = WitnessC(r=x, s=y, subgroup_gens=gens,
                 orbit_r=tuple(sorted(orbit_r)),
                 orbit_s=tuple(sorted(orbit_s)))
    return c, w, {"x": x, "y": y, "z": z, "cv": cv, "cw": cw}


# ---------------------------------------------------------------------------
# Sym(6): double transpositions, with the pinned (3, 6) witness
# ---------------------------------------------------------------------------

def s6_double_transposition_witness():
    """Pinned witness for the 45-element double-transposition class of Sym(6).

    The subgroup generators are (1 2)(3 4), (3 6)(4 5) and (1 6)(2 5) as
    permutation matrices over GF(2); both orbit pieces are pinned element by
    element (sizes 3 and 6).
    """
    S6 = sym_group(6)
    ctx = S6.ctx
    x = _perm(ctx, 6, [(1, 2), (3, 4)])
    y = _perm(ctx, 6, [(3, 6), (4, 5)])
    z = _perm(ctx, 6, [(1, 6), (2, 5)])
    c = conj_class(S6, x)
    _require(len(c) == 45, "class size 45 (got %d)" % len(c))
    _require(y in c and z in c, "generators inside the class")
    gens = (x, y, z)
    orbit_r = _conj_orbit(c.ops, gens, x)
    orbit_s = _conj_orbit(c.ops, gens, y)
    expected_r = {
        x,
        _perm(ctx, 6, [(1, 2), (5, 6)]),
        _perm(ctx, 6, [(3, 4), (5, 6)]),
    }
    expected_s = {
        y,
        z,
        _perm(ctx, 6, [(1, 3), (2, 4)]),
        _perm(ctx, 6, [(3, 5), (4, 6)]),
        _perm(ctx, 6, [(1, 5), (2, 6)]),
        _perm(ctx, 6, [(1, 4), (2, 3)]),
    }
    _require(set(orbit_r) == expected_r, "size-3 orbit piece elements")
    _require(set(orbit_s) == expected_s, "size-6 orbit piece elements")
    _require(orbit_s == _conj_orbit(c.ops, gens, z),
             "second and third generator share one orbit piece")
    w = WitnessC(r=x, s=y, subgroup_gens=gens,
                 orbit_r=tuple(sorted(orbit_r)),
                 orbit_s=tuple(sorted(orbit_s)))
    return c, w


# ---------------------------------------------------------------------------
# Sp(4,2): rank-2 involutions, witness frozen from a one-off lattice search
# ---------------------------------------------------------------------------

_SP4_2_PIN = {
    "r": ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
    "s": ((0, 0, 1, 1), (1, 1, 0, 1), (0, 0, 1, 0), (1, 0, 1, 0)),
    "gens": (
        ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
        ((0, 0, 0, 1), (0, 1, 0, 0), (0, 1, 1, 0), (1, 0, 0, 0)),
        ((0, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 0), (1, 0, 0, 0)),
        ((0, 0, 1, 1), (1, 1, 0, 1), (0, 0, 1, 0), (1, 0, 1, 0)),
        ((0, 1, 0, 1), (0, 1, 0, 0), (1, 0, 1, 1), (1, 1, 0, 0)),
        ((0, 1, 1, 1), (1, 1, 0, 1), (1, 0, 1, 1), (1, 1, 1, 0)),
        ((1, 0, 1, 0), (1, 1, 1, 1), (0, 0, 1, 0), (0, 0, 1, 1)),
        ((1, 1, 0, 0), (0, 1, 0, 0), (1, 1, 1, 1), (0, 1, 0, 1)),
        ((1, 1, 1, 0), (1, 0, 1, 1), (1, 1, 0, 1), (0, 1, 1, 1)),
    ),
}


def sp4_2_rank2_involution_witness():
    """Pinned witness for the 45-element rank-2 involution class of Sp(4,2).

    The nine subgroup generators are the union of the two orbit pieces found
    by a one-off subgroup-lattice search (frozen here because that search
    takes minutes); the pieces themselves are recomputed fresh.
    """
    G = sp_group(4, 2)
    ctx = G.ctx
    r = matrix(ctx, _SP4_2_PIN["r"])
    s = matrix(ctx, _SP4_2_PIN["s"])
    gens = tuple(matrix(ctx, rows) for rows in _SP4_2_PIN["gens"])
    _require(element_order(r) == 2 and _fixed_space_corank(r) == 2,
             "base point is a rank-2 involution")
    for g in gens:
        _require(sp_form_check(g, G.form), "generator preserves the form")
    c = conj_class(G, r)
    _require(len(c) == 45, "class size 45 (got %d)" % len(c))
    _require(s in c and all(g in c for g in gens),
             "generators inside the class")
    orbit_r = _conj_orbit(c.ops, gens, r)
    orbit_s = _conj_orbit(c.ops, gens, s)
    _require(sorted((len(orbit_r), len(orbit_s))) == [3, 6],
             "orbit piece sizes 3 and 6")
    _require(set(gens) == set(orbit_r) | set(orbit_s),
             "generators equal the union of the pieces")
    w = WitnessC(r=r, s=s, subgroup_gens=gens,
                 orbit_r=tuple(sorted(orbit_r)),
                 orbit_s=tuple(sorted(orbit_s)))
    return c, w


# ---------------------------------------------------------------------------
# Sp(4,3): the two order-3 bireflection classes and pinned conjugation data
# ---------------------------------------------------------------------------

def _sp4_3_z(ctx):
    return matrix(ctx, [[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def sp4_3_classes():
    """(zc, wc): the 240- and 480-element order-3 bireflection classes of Sp(4,3)."""
    G = sp_group(4, 3)
    ctx = G.ctx
    z = _sp4_3_z(ctx)
    wm = matrix(ctx, [[1, 0, 0, 2], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    for M in (z, wm):
        _require(sp_form_check(M, G.form), "base point preserves the form")
        _require(element_order(M) == 3, "base point has order 3")
        _require(_fixed_space_corank(M) == 2, "base point is a bireflection")
    zc = conj_class(G, z)
    wc = conj_class(G, wm)
    _require(len(zc) == 240, "first class size 240 (got %d)" % len(zc))
    _require(len(wc) == 480, "second class size 480 (got %d)" % len(wc))
    return zc, wc


def sp4_3_conjugation_data():
    """(z, y, v): pinned matrices with y = v z v^{-1}, all inside Sp(4,3).

    z is the base point of the 240-element class; v is a pinned conjugator
    and y its image, so y is a class member exhibited without any search.
    """
    G = sp_group(4, 3)
    ctx = G.ctx
    z = _sp4_3_z(ctx)
    v = matrix(ctx, [[1, 1, 1, 1], [0, 0, 2, 1], [1, 2, 0, 0], [1, 1, 0, 0]])
    _require(sp_form_check(v, G.form), "conjugator preserves the form")
    y = mat_mul(mat_mul(v, z), mat_inv(v))
    _require(y == matrix(ctx, [[2, 0, 0, 2], [0, 1, 0, 0], [0, 1, 1, 0],
                               [1, 0, 0, 0]]),
             "pinned conjugate y of z")
    return z, y, v


# ---------------------------------------------------------------------------
# Sp(6,2): the 315-element class reached through the block embedding
# diag(A, J (A^T)^{-1} J) of the degree-3 linear group
# ---------------------------------------------------------------------------

def _sp6_double_embed(A):
    """diag(A, J (A^T)^{-1} J) with J the degree-3 flip; lands in Sp(6, q)."""
    ctx = A.ctx
    J = matrix(ctx, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    B = mat_mul(mat_mul(J, transpose(mat_inv(A))), J)
    return block_diag(ctx, [A, B])


def sp6_2_embedded_witness():
    """Pinned witness for the 315-element class of Sp(6,2).

    The witness is the image of the pinned SL(3,2) transvection witness under
    the block embedding; conjugation happens inside the embedded subgroup, so
    the orbit pieces keep their sizes 3 and 6.  All class memberships and both
    orbit pieces are recomputed downstairs.
    """
    G = sp_group(6, 2)
    ctx = G.ctx
    x3 = basis_elem_matrix(ctx, 3, 0, 2)
    y3 = matrix(ctx, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    z3 = basis_elem_matrix(ctx, 3, 2, 1)
    r = _sp6_double_embed(x3)
    s = _sp6_double_embed(y3)
    t = _sp6_double_embed(z3)
    for M in (r, s, t):
        _require(sp_form_check(M, G.form), "embedded image preserves the form")
    c = conj_class(G, r)
    _require(len(c) == 315, "class size 315 (got %d)" % len(c))
    _require(s in c and t in c, "embedded generators inside the class")
    gens = (r, s, t)
    orbit_r = _conj_orbit(c.ops, gens, r)
    orbit_s = _conj_orbit(c.ops, gens, s)
    _require(len(orbit_r) == 3 and len(orbit_s) == 6,
             "orbit piece sizes 3 and 6")
    _require(orbit_s == _conj_orbit(c.ops, gens, t),
             "second and third generator share one orbit piece")
    w = WitnessC(r=r, s=s, subgroup_gens=gens,
                 orbit_r=tuple(sorted(orbit_r)),
                 orbit_s=tuple(sorted(orbit_s)))
    return c, w


# ---------------------------------------------------------------------------
# the 8-element rack of 3-cycles in Sym(4): the conjugation rack carried by
# the eight order-3 rotations of the cube, one per vertex
# ---------------------------------------------------------------------------

def cube_rack_class():
    """(c, w): the 8-element 3-cycle class of Sym(4) and its two-piece witness.

    The pieces are the two Alt(4)-orbits of 3-cycles (sizes 4 and 4); the
    subgroup generated by the two base points is all of Alt(4).
    """
    S4 = sym_group(4)
    ctx = S4.ctx
    r = _perm(ctx, 4, [(1, 2, 3)])
    s = _perm(ctx, 4, [(1, 2, 4)])
    c = conj_class(S4, r)
    _require(len(c) == 8, "class size 8 (got %d)" % len(c))
    _require(element_order(r) == 3, "base point has order 3")
    gens = (r, s)
    orbit_r = _conj_orbit(c.ops, gens, r)
    orbit_s = _conj_orbit(c.ops, gens, s)
    _require(s not in orbit_r, "pieces are distinct")
    _require(len(orbit_r) == 4 and len(orbit_s) == 4,
             "orbit piece sizes 4 and 4")
    _require(mat_inv(r) in orbit_s, "inverse base point sits in the other piece")
    w = WitnessC(r=r, s=s, subgroup_gens=gens,
                 orbit_r=tuple(sorted(orbit_r)),
                 orbit_s=tuple(sorted(orbit_s)),
                 odd_shortcut=True)
    return c, w
