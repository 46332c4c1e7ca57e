"""Arbitrary-precision base-b repunit arithmetic and (n, q) admissibility screens."""

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class QNumber:
    """Repunit 1 + b + ... + b^(a-1) together with its defining pair."""

    a: int
    b: int
    value: int

    def __post_init__(self):
        if self.a < 1 or self.b < 2:
            raise ValueError("QNumber needs a >= 1 and b >= 2")
        if self.value != qnum(self.a, self.b):
            raise ValueError("QNumber value does not match (a, b)")


@dataclass(frozen=True)
class TwoAdicSplit:
    """n = 2^a * b with b odd."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 1 or self.b % 2 == 0 or (1 << self.a) * self.b != self.n:
            raise ValueError("inconsistent two-adic split")


def qnum(a, b):
    """Sum of b^i for i in 0..a-1, exact."""
    if a < 1 or b < 2:
        raise ValueError("qnum needs a >= 1 and b >= 2")
    return (b**a - 1) // (b - 1)


def make_qnumber(a, b):
    """QNumber record for (a, b)."""
    return QNumber(a, b, qnum(a, b))


def two_adic_split(n):
    """Split n as 2^a * b with b odd."""
    if n < 1:
        raise ValueError("two_adic_split needs n >= 1")
    a = 0
    b = n
    while b % 2 == 0:
        b //= 2
        a += 1
    return TwoAdicSplit(n, a, b)


def gcd_identities_check(a, b, c):
    """True iff the three repunit gcd/product identities hold for (a, b, c)."""
    if a < 1 or c < 1 or b < 2:
        raise ValueError("need a, c >= 1 and b >= 2")
    first = gcd(qnum(a, b), b - 1) == gcd(a, b - 1)
    second = gcd(qnum(a, b), qnum(c, b)) == qnum(gcd(a, c), b)
    third = qnum(a * c, b) == qnum(a, b) * qnum(c, b**a)
    return first and second and third


def prime_power_decomposition(q):
    """(p, m) with q = p^m, by trial factorization; error if q is not a prime power."""
    if q < 2:
        raise ValueError("%r is not a prime power" % (q,))
    p = None
    rest = q
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            p = d
            while rest % d == 0:
                rest //= d
            break
        d += 1
    if p is None:
        p = q  # q itself is prime
        rest = 1
    if rest != 1:
        raise ValueError("%r is not a prime power" % (q,))
    m = 0
    t = q
    while t > 1:
        t //= p
        m += 1
    if p**m != q:
        raise ValueError("%r is not a prime power" % (q,))
    return p, m


def in_G(n, q):
    """True iff (n, q) satisfies one of the six admissibility clauses.

    With n = 2^a * b (b odd) and q = 1 + 2^c * d (d odd): n > 3 odd; n > 3 with
    q even; n = 3 with q > 2; 0 < a < c with n > 2; a = c > 1; n = 2 with
    q = 1 mod 4.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    prime_power_decomposition(q)
    a = two_adic_split(n).a
    c = two_adic_split(q - 1).a
    if n > 3 and n % 2 == 1:
        return True
    if n > 3 and q % 2 == 0:
        return True
    if n == 3 and q > 2:
        return True
    if n > 2 and 0 < a < c:
        return True
    if a == c > 1:
        return True
    if n == 2 and q % 4 == 1:
        return True
    return False


def in_Gss(n, q):
    """True iff n odd, or q even, or 0 < a < c, or a = c > 1 (n > 2 required)."""
    if n <= 2:
        raise ValueError("need n > 2")
    prime_power_decomposition(q)
    a = two_adic_split(n).a
    c = two_adic_split(q - 1).a
    return n % 2 == 1 or q % 2 == 0 or 0 < a < c or a == c > 1


def torus_order_odd(n, q):
    """True iff qnum(n, q) / gcd(q - 1, n) is odd."""
    if n < 2:
        raise ValueError("need n >= 2")
    prime_power_decomposition(q)
    return (qnum(n, q) // gcd(q - 1, n)) % 2 == 1


def lemma_arithmetic_check(l, q):
    """True iff gcd(l^2, qnum(l, q)) = l, for odd l > 1 and q = 1 mod l."""
    if l <= 1 or l % 2 == 0:
        raise ValueError("need odd l > 1")
    if q % l != 1:
        raise ValueError("need q = 1 mod l; got q=%r, l=%r" % (q, l))
    return gcd(l * l, qnum(l, q)) == l
