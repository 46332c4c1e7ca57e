"""Unit tests for the finite-field layer: axioms, orders, polynomials."""

import pytest

from collapse_lab import gf
from collapse_lab.gf import (
    add,
    elem,
    elem_order,
    field_create,
    field_from_order,
    frobenius,
    inv,
    is_irreducible_poly,
    is_square,
    mul,
    multiplicative_generator,
    neg,
    poly_divmod_q,
    poly_mul_q,
    poly_parse,
    poly_text,
)


def _all_elems(ctx):
    return [elem(ctx, i) for i in range(ctx.q)]


def test_context_cache_is_identity_stable():
    assert field_from_order(7) is field_from_order(7)
    assert field_from_order(4) is field_from_order(4)
    assert field_create(3, 2) is field_from_order(9)


def test_field_axioms_exhaustive_small_fields():
    # Full ring/field axioms on every element triple of GF(7), GF(8), GF(9).
    for q in (7, 8, 9):
        ctx = field_from_order(q)
        xs = _all_elems(ctx)
        zero, one = xs[0], xs[1]
        for x in xs:
            assert add(x, zero) == x
            assert mul(x, one) == x
            assert add(x, neg(x)) == zero
            assert mul(x, zero) == zero
            if x != zero:
                assert mul(x, inv(x)) == one
        for x in xs:
            for y in xs:
                assert add(x, y) == add(y, x)
                assert mul(x, y) == mul(y, x)
        for x in xs:
            for y in xs:
                for z in xs:
                    assert add(add(x, y), z) == add(x, add(y, z))
                    assert mul(mul(x, y), z) == mul(x, mul(y, z))
                    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))


def test_prime_field_matches_modular_arithmetic():
    ctx = field_from_order(11)
    for a in range(11):
        for b in range(11):
            assert add(elem(ctx, a), elem(ctx, b)).index == (a + b) % 11
            assert mul(elem(ctx, a), elem(ctx, b)).index == (a * b) % 11


def test_coeff_index_roundtrip():
    for q in (4, 8, 9, 25, 27):
        ctx = field_from_order(q)
        for i in range(q):
            assert ctx.index_of(ctx.coeffs_of(i)) == i


def test_pow_matches_repeated_multiplication():
    for q in (5, 8, 9):
        ctx = field_from_order(q)
        for i in range(1, q):
            x = elem(ctx, i)
            acc = elem(ctx, 1)
            for e in range(1, 2 * q):
                acc = mul(acc, x)
                assert gf.pow(x, e) == acc
            assert gf.pow(x, -1) == inv(x)


def test_frobenius_is_additive_and_fixes_prime_field():
    for q in (8, 9, 27):
        ctx = field_from_order(q)
        xs = _all_elems(ctx)
        for x in xs:
            for y in xs:
                assert frobenius(add(x, y)) == add(frobenius(x), frobenius(y))
        # Frobenius fixes exactly the prime subfield.
        fixed = [x for x in xs if frobenius(x) == x]
        assert len(fixed) == ctx.p
        # Iterating m times is the identity.
        for x in xs:
            y = x
            for _ in range(ctx.m):
                y = frobenius(y)
            assert y == x


def test_elem_order_divides_group_order_and_counts():
    for q in (7, 8, 9, 13):
        ctx = field_from_order(q)
        orders = [elem_order(elem(ctx, i)) for i in range(1, q)]
        assert all((q - 1) % d == 0 for d in orders)
        # Cyclic group: number of elements of maximal order is phi(q - 1) >= 1.
        assert (q - 1) in orders


def test_multiplicative_generator_least_index():
    # Least primitive root mod 7 is 3; the returned element carries .index.
    g7 = multiplicative_generator(field_from_order(7))
    assert g7.index == 3
    assert elem_order(g7) == 6
    for q in (4, 5, 8, 9, 11, 13):
        ctx = field_from_order(q)
        g = multiplicative_generator(ctx)
        assert elem_order(g) == q - 1
        for i in range(1, g.index):
            assert elem_order(elem(ctx, i)) < q - 1


def test_is_square_counts():
    for q in (5, 7, 9, 13):
        ctx = field_from_order(q)
        squares = sum(1 for i in range(1, q) if is_square(elem(ctx, i)))
        assert squares == (q - 1) // 2
    ctx = field_from_order(8)
    assert all(is_square(elem(ctx, i)) for i in range(1, 8))
    with pytest.raises(ValueError):
        is_square(elem(ctx, 0))


def test_poly_divmod_roundtrip_exhaustive_gf2():
    ctx = field_from_order(2)
    cubics = [(a, b, c, 1) for a in range(2) for b in range(2)
              for c in range(2)]
    monic_quads = [(a, b, 1) for a in range(2) for b in range(2)]
    for f in cubics:
        for g in monic_quads:
            quot, rem = poly_divmod_q(ctx, f, g)
            recomposed = list(poly_mul_q(ctx, quot, g))
            rem_p = list(rem) + [0] * (len(recomposed) - len(rem))
            summed = [ctx.add_i(a, b) for a, b in zip(recomposed, rem_p)]
            want = list(f) + [0] * (len(summed) - len(f))
            assert summed == want, (f, g)


def test_irreducible_quadratic_counts():
    # Over GF(q) there are exactly (q^2 - q) / 2 monic irreducible quadratics.
    for q in (2, 3, 5, 7):
        ctx = field_from_order(q)
        count = sum(
            1
            for b in range(q)
            for a in range(q)
            if is_irreducible_poly(ctx, (a, b, 1))
        )
        assert count == (q * q - q) // 2, q


def test_irreducibility_known_cases():
    assert is_irreducible_poly(field_from_order(7), (1, 0, 1))  # X^2+1, 7=3 mod 4
    assert not is_irreducible_poly(field_from_order(5), (1, 0, 1))  # (X+2)(X+3)
    assert is_irreducible_poly(field_from_order(2), (1, 1, 0, 1))  # X^3+X+1
    # X^3+1 = (X+1)(X^2+X+1) over GF(2).
    assert not is_irreducible_poly(field_from_order(2), (1, 0, 0, 1))


def test_poly_text_examples():
    assert poly_text((1, 3, 1)) == "X^2+3X+1"
    assert poly_text((1, 0, 1)) == "X^2+1"
    assert poly_text((0, 1)) == "X"
    assert poly_text((5,)) == "5"
    assert poly_text((0,)) == "0"


def test_poly_parse_examples_and_whitespace():
    assert poly_parse("X^2+3X+1") == (1, 3, 1)
    assert poly_parse(" X^2 + 3X + 1 ") == (1, 3, 1)
    assert poly_parse("X^2+1") == (1, 0, 1)
    assert poly_parse("X") == (0, 1)
    assert poly_parse("7") == (7,)
    assert poly_parse("X^2+1", n=3) == (1, 0, 1, 0)


def test_poly_parse_text_roundtrip_exhaustive():
    for c0 in range(4):
        for c1 in range(4):
            for c2 in range(4):
                coeffs = (c0, c1, c2)
                if all(c == 0 for c in coeffs):
                    continue
                trimmed = list(coeffs)
                while len(trimmed) > 1 and trimmed[-1] == 0:
                    trimmed.pop()
                assert poly_parse(poly_text(coeffs)) == tuple(trimmed)


def test_poly_parse_rejects():
    for bad in ("", "X^2++1", "X^-1", "2X^", "X^2+Z"):
        with pytest.raises(ValueError):
            poly_parse(bad)
