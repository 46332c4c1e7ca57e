"""Deterministic GF(p^m) arithmetic with index-coded elements.

The modulus is the lexicographically smallest monic irreducible of degree m
(coefficients compared low-degree-first as base-p digits).  Every element is
identified by its canonical integer index sum(coeffs[i] * p^i); the index
order is the total order used for canonical tie-breaking everywhere else.
"""

import builtins
from dataclasses import dataclass

_intpow = builtins.pow  # the module defines its own `pow` for field elements

_DEFAULT_CAP = 2**20
_TABLE_CAP = 2**16


# ---------------------------------------------------------------------------
# integer-coefficient polynomial helpers over GF(p), little-endian lists
# ---------------------------------------------------------------------------

def _ptrim(f):
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, mod, p):
    f = list(f)
    dm = len(mod) - 1
    inv_lead = _intpow(mod[-1], p - 2, p)
    while len(f) - 1 >= dm and any(f):
        shift = len(f) - 1 - dm
        factor = (f[-1] * inv_lead) % p
        if factor:
            for i, c in enumerate(mod):
                f[shift + i] = (f[shift + i] - factor * c) % p
        _ptrim(f)
        if len(f) == 1 and f[0] == 0:
            break
    return _ptrim(f)


def _pmulmod(f, g, mod, p):
    return _pmod(_pmul(f, g, p), mod, p)


def _ppowmod(f, e, mod, p):
    result = [1]
    base = _pmod(f, mod, p)
    while e > 0:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g != [0]:
        f, g = g, _pmod(f, g, p)
    return f


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible_mod_p(f, p):
    """Irreducibility of a monic polynomial over GF(p) via Frobenius powers."""
    m = len(f) - 1
    if m == 0:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # X^(p^m) must reduce to X mod f
    xp = _ppowmod(x, p**m, f, p)
    if xp != x:
        return False
    for ell in _prime_factors(m):
        xk = _ppowmod(x, p ** (m // ell), f, p)
        diff = [(a - b) % p for a, b in zip(xk + [0] * len(x), x + [0] * len(xk))]
        _ptrim(diff)
        g = _pgcd(f, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _least_irreducible(p, m):
    """Lex-smallest monic irreducible of degree m, low-degree digits first."""
    for low_index in range(p**m):
        digits = []
        t = low_index
        for _ in range(m):
            digits.append(t % p)
            t //= p
        f = digits + [1]
        if _is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible of degree %d over GF(%d)" % (m, p))


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """Immutable context for GF(p^m); construct via field_create."""

    __slots__ = (
        "p", "m", "q", "modulus", "name",
        "_log", "_antilog", "_gen_index", "_digit_cache",
    )

    def __init__(self, p, m, cap):
        if not _is_prime(p):
            raise ValueError("p=%r is not prime" % (p,))
        if m < 1:
            raise ValueError("m must be >= 1")
        q = p**m
        if q > cap:
            raise ValueError("p^m = %d exceeds cap %d" % (q, cap))
        self.p = p
        self.m = m
        self.q = q
        self.name = "%d^%d" % (p, m)
        if m == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = _least_irreducible(p, m)
        self._digit_cache = None
        self._log = None
        self._antilog = None
        self._gen_index = None
        if m > 1 and q <= _TABLE_CAP:
            self._build_tables()

    # --- index <-> coefficient helpers ------------------------------------

    def coeffs_of(self, index):
        """Little-endian coefficient tuple of an element index."""
        digits = []
        t = index
        for _ in range(self.m):
            digits.append(t % self.p)
            t //= self.p
        return tuple(digits)

    def index_of(self, coeffs):
        """Element index of a little-endian coefficient sequence."""
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.p + (c % self.p)
        return idx

    # --- table construction ------------------------------------------------

    def _mul_poly(self, i, j):
        f = list(self.coeffs_of(i))
        g = list(self.coeffs_of(j))
        return self.index_of(_pmulmod(f, g, list(self.modulus), self.p) + [0] * self.m)

    def _order_via_poly(self, i, factored):
        n = self.q - 1
        order = n
        for ell in factored:
            while order % ell == 0:
                probe = self._pow_poly(i, order // ell)
                if probe != 1:
                    break
                order //= ell
        return order

    def _pow_poly(self, i, e):
        result = 1
        base = i
        e %= self.q - 1
        if e == 0:
            return 1
        while e > 0:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _build_tables(self):
        factored = _prime_factors(self.q - 1)
        gen = None
        for cand in range(1, self.q):
            ok = all(self._pow_poly(cand, (self.q - 1) // ell) != 1 for ell in factored)
            if ok:
                gen = cand
                break
        antilog = [1] * (self.q - 1)
        for k in range(1, self.q - 1):
            antilog[k] = self._mul_poly(antilog[k - 1], gen)
        log = [0] * self.q
        for k, idx in enumerate(antilog):
            log[idx] = k
        self._gen_index = gen
        self._antilog = antilog
        self._log = log

    # --- fast index arithmetic ----------------------------------------------

    def add_i(self, i, j):
        if self.m == 1:
            return (i + j) % self.p
        if self.p == 2:
            return i ^ j
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((i % self.p + j % self.p) % self.p) * mult
            i //= self.p
            j //= self.p
            mult *= self.p
        return out

    def neg_i(self, i):
        if self.m == 1:
            return (-i) % self.p
        if self.p == 2:
            return i
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((-(i % self.p)) % self.p) * mult
            i //= self.p
            mult *= self.p
        return out

    def sub_i(self, i, j):
        return self.add_i(i, self.neg_i(j))

    def mul_i(self, i, j):
        if i == 0 or j == 0:
            return 0
        if self.m == 1:
            return (i * j) % self.p
        if self._log is not None:
            return self._antilog[(self._log[i] + self._log[j]) % (self.q - 1)]
        return self._mul_poly(i, j)

    def inv_i(self, i):
        if i == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.m == 1:
            return _intpow(i, self.p - 2, self.p)
        if self._log is not None:
            return self._antilog[(-self._log[i]) % (self.q - 1)]
        return self._pow_poly(i, self.q - 2)

    def pow_i(self, i, e):
        if i == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        e %= self.q - 1
        if self.m == 1:
            return _intpow(i, e, self.p)
        if self._log is not None:
            return self._antilog[(self._log[i] * e) % (self.q - 1)]
        return self._pow_poly(i, e)

    def __repr__(self):
        return "FieldCtx(GF(%s))" % self.name


_CTX_CACHE = {}


def field_create(p, m, cap=_DEFAULT_CAP):
    """Deterministic GF(p^m) context; repeated calls return the same object."""
    key = (p, m)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, cap)
        _CTX_CACHE[key] = ctx
    elif ctx.q > cap:
        raise ValueError("p^m = %d exceeds cap %d" % (ctx.q, cap))
    return ctx


def field_from_order(q, cap=_DEFAULT_CAP):
    """GF(q) context from a prime power q."""
    from .qarith import prime_power_decomposition

    p, m = prime_power_decomposition(q)
    return field_create(p, m, cap)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """Element of a FieldCtx, identified by its canonical integer index."""

    ctx: FieldCtx
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ctx.q:
            raise ValueError("index out of range for GF(%s)" % self.ctx.name)

    @property
    def coeffs(self):
        return self.ctx.coeffs_of(self.index)

    def __str__(self):
        return str(self.index)

    def __repr__(self):
        return "FieldElement(GF(%s), %d)" % (self.ctx.name, self.index)


def elem(ctx, index):
    """FieldElement with the given index."""
    return FieldElement(ctx, index)


def _require_same_ctx(x, y):
    if x.ctx is not y.ctx:
        raise ValueError("elements from different field contexts")


def add(x, y):
    """x + y."""
    _require_same_ctx(x, y)
    return FieldElement(x.ctx, x.ctx.add_i(x.index, y.index))


def mul(x, y):
    """x * y."""
    _require_same_ctx(x, y)
    return FieldElement(x.ctx, x.ctx.mul_i(x.index, y.index))


def neg(x):
    """-x."""
    return FieldElement(x.ctx, x.ctx.neg_i(x.index))


def inv(x):
    """x^-1 (x nonzero)."""
    if x.index == 0:
        raise ZeroDivisionError("inverse of 0")
    return FieldElement(x.ctx, x.ctx.inv_i(x.index))


def pow(x, e):  # noqa: A001 - module-level field power, mirrors the other ops
    """x^e (e may be negative for nonzero x)."""
    if e < 0:
        return FieldElement(x.ctx, x.ctx.pow_i(x.ctx.inv_i(x.index), -e))
    return FieldElement(x.ctx, x.ctx.pow_i(x.index, e))


def frobenius(x):
    """x^p, the field's absolute Frobenius."""
    return FieldElement(x.ctx, x.ctx.pow_i(x.index, x.ctx.p))


def is_square(x):
    """True iff nonzero x is a square; errors on 0."""
    if x.index == 0:
        raise ValueError("is_square is defined for nonzero elements only")
    if x.ctx.p == 2:
        return True
    return x.ctx.pow_i(x.index, (x.ctx.q - 1) // 2) == 1


def elem_order(x):
    """Multiplicative order of nonzero x."""
    if x.index == 0:
        raise ValueError("order is defined for nonzero elements only")
    ctx = x.ctx
    n = ctx.q - 1
    order = n
    for ell in _prime_factors(n):
        while order % ell == 0 and ctx.pow_i(x.index, order // ell) == 1:
            order //= ell
    return order


def multiplicative_generator(ctx):
    """Least-index element of multiplicative order q - 1."""
    n = ctx.q - 1
    factors = _prime_factors(n)
    for cand in range(1, ctx.q):
        if all(ctx.pow_i(cand, n // ell) != 1 for ell in factors):
            return FieldElement(ctx, cand)
    raise AssertionError("no generator found")


# ---------------------------------------------------------------------------
# polynomials with GF(q) index coefficients (little-endian tuples)
# ---------------------------------------------------------------------------

def poly_mul_q(ctx, f, g):
    """Product of two index-coefficient polynomials over GF(q)."""
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = ctx.add_i(out[i + j], ctx.mul_i(a, b))
    return tuple(out)


def poly_divmod_q(ctx, f, g):
    """Quotient and remainder of f by g (g nonzero) over GF(q)."""
    f = list(f)
    g = list(g)
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    if g == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    inv_lead = ctx.inv_i(g[-1])
    quot = [0] * max(1, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        shift = len(f) - 1 - dg
        factor = ctx.mul_i(f[-1], inv_lead)
        if factor:
            quot[shift] = factor
            for i, c in enumerate(g):
                f[shift + i] = ctx.sub_i(f[shift + i], ctx.mul_i(factor, c))
        while len(f) > 1 and f[-1] == 0:
            f.pop()
        if f == [0]:
            break
    return tuple(quot), tuple(f)


def is_irreducible_poly(ctx, coeffs):
    """True iff a monic polynomial over GF(q) has no monic divisor of smaller degree.

    Trial division over all monic polynomials of degree <= deg/2; intended for
    desk-scale degrees only.
    """
    coeffs = tuple(coeffs)
    deg = len(coeffs) - 1
    if deg <= 0 or coeffs[-1] != 1:
        raise ValueError("need a monic polynomial of positive degree")
    if deg == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by X
    q = ctx.q
    for d in range(1, deg // 2 + 1):
        for low in range(q**d):
            g = []
            t = low
            for _ in range(d):
                g.append(t % q)
                t //= q
            g.append(1)
            _, rem = poly_divmod_q(ctx, coeffs, tuple(g))
            if rem == (0,) * len(rem):
                return False
    return True


def poly_text(coeffs):
    """Render an index-coefficient polynomial as e.g. 'X^2+3X+1'."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("X" if c == 1 else "%dX" % c)
        else:
            terms.append("X^%d" % i if c == 1 else "%dX^%d" % (c, i))
    if not terms:
        return "0"
    return "+".join(terms)


def poly_parse(text, n=None):
    """Parse 'X^2+3X+1' into a little-endian index-coefficient tuple.

    Coefficients are element indices (nonnegative integers); whitespace is
    ignored.  If n is given the result is padded/validated to degree n.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    coeff = {}
    for term in s.split("+"):
        if not term:
            raise ValueError("malformed polynomial %r" % (text,))
        if "X" in term:
            head, _, tail = term.partition("X")
            c = int(head) if head else 1
            if tail.startswith("^"):
                e = int(tail[1:])
            elif tail == "":
                e = 1
            else:
                raise ValueError("malformed term %r" % (term,))
        else:
            c = int(term)
            e = 0
        if c < 0 or e < 0:
            raise ValueError("malformed term %r" % (term,))
        coeff[e] = coeff.get(e, 0) + c
    deg = max(coeff)
    out = [0] * (deg + 1)
    for e, c in coeff.items():
        out[e] = c
    if n is not None:
        if deg > n:
            raise ValueError("degree %d exceeds n=%d" % (deg, n))
        out.extend([0] * (n - deg))
    return tuple(out)
