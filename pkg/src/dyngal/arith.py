"""Exact arithmetic kernel.

Integers and rationals are Python ``int`` and ``fractions.Fraction``.  This
module adds the number-theoretic helpers, dense integer polynomials in one
variable (``IntPoly``: list of ints, lowest degree first), bivariate
polynomials in Z[t][x] (:class:`BiPoly`) and polynomials over prime fields
(:class:`ModPoly`) with distinct-degree factorization.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import flint

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover - gmpy2 is optional, only speeds up build(9)
    _bigint = int

from .errors import NonExactDivision, NotSquarefree

# ---------------------------------------------------------------------------
# elementary number theory


@lru_cache(maxsize=None)
def factorize(m):
    """Prime factorization of ``m >= 1`` as a sorted tuple of (prime, exponent)."""
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def mobius(m):
    fac = factorize(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(m):
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def divisors(m):
    """Positive divisors of ``m`` in increasing order."""
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_prime(m):
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def primes_from(start=2):
    """Primes ``>= start`` in increasing order (unbounded generator)."""
    p = max(start, 2)
    while True:
        if is_prime(p):
            yield p
        p += 1


# ---------------------------------------------------------------------------
# IntPoly: list of ints, lowest degree first, no trailing zeros


def ip_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def ip_degree(f):
    return len(f) - 1 if f else -1


def ip_derivative(f):
    return ip_trim(i * c for i, c in enumerate(f) if i > 0)


def ip_content(f):
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def ip_primitive(f):
    g = ip_content(f)
    if g == 0:
        return []
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def ip_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def ip_pseudo_rem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` over Z."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, bi in enumerate(b):
            a[i + shift] -= la * bi
        a = ip_trim(a)
    return a


def ip_gcd(a, b):
    """Primitive gcd over Z via the primitive polynomial remainder sequence."""
    a, b = ip_primitive(ip_trim(a)), ip_primitive(ip_trim(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = ip_pseudo_rem(a, b)
        a, b = b, ip_primitive(r)
    return a


def ip_mod(f, p):
    return ip_trim(c % p for c in f)


def squarefree_over_Q(f, tries=8):
    """True iff gcd(f, f') is constant.

    A modular shortcut settles the common case: if ``f mod p`` keeps its degree
    and is squarefree, so is ``f``.  Otherwise the primitive PRS decides.
    """
    f = ip_trim(f)
    if len(f) < 2:
        raise ValueError("squarefree_over_Q expects deg f >= 1")
    checked = 0
    for p in primes_from(max(3, len(f))):
        if f[-1] % p == 0:
            continue
        fp = flint.nmod_poly(ip_mod(f, p), p)
        if fp.gcd(fp.derivative()).degree() == 0:
            return True
        checked += 1
        if checked >= tries:
            break
    return ip_degree(ip_gcd(f, ip_derivative(f))) == 0


# ---------------------------------------------------------------------------
# BiPoly: polynomials in x with IntPoly coefficients in t


class BiPoly:
    """Element of Z[t][x]; ``coeffs[i]`` is the t-polynomial multiplying x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        rows = [tuple(ip_trim(c)) for c in coeffs]
        while rows and not rows[-1]:
            rows.pop()
        self.coeffs = tuple(rows)

    @classmethod
    def x(cls):
        return cls([[], [1]])

    @classmethod
    def t(cls):
        return cls([[0, 1]])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def t_degree(self):
        return max((len(c) - 1 for c in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BiPoly({[list(c) for c in self.coeffs]})"

    def _combine(self, other, sign):
        n = max(len(self.coeffs), len(other.coeffs))
        rows = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else ()
            b = other.coeffs[i] if i < len(other.coeffs) else ()
            m = max(len(a), len(b))
            rows.append([(a[j] if j < len(a) else 0) + sign * (b[j] if j < len(b) else 0)
                         for j in range(m)])
        return BiPoly(rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return BiPoly([])
        # Kronecker substitution: t -> 2^slot, x -> 2^(slot*width)
        width = self.t_degree + other.t_degree + 1
        bound = max(abs(c) for row in self.coeffs for c in row) * \
            max(abs(c) for row in other.coeffs for c in row) * \
            min(len(self.coeffs), len(other.coeffs)) * (min(self.t_degree, other.t_degree) + 1)
        slot = bound.bit_length() + 2
        slot += (-slot) % 8
        prod = _kronecker_pack(self.coeffs, slot, width) * _kronecker_pack(other.coeffs, slot, width)
        nrows = len(self.coeffs) + len(other.coeffs) - 1
        return BiPoly(_kronecker_unpack(prod, slot, width, nrows))

    def evaluate(self, c):
        """Φ(c, x) for rational ``c`` as an IntPoly with denominators cleared.

        With c = a/b and T the t-degree, the result is b^T·Φ(a/b, x).
        """
        c = Fraction(c)
        a, b = c.numerator, c.denominator
        T = max(self.t_degree, 0)
        apow = [1]
        bpow = [1]
        for _ in range(T):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        return ip_trim(sum(cj * apow[j] * bpow[T - j] for j, cj in enumerate(row))
                       for row in self.coeffs)

    def reduce_at(self, c_mod_p, p):
        """Coefficients of Φ(c, x) mod p for a residue ``c_mod_p``."""
        out = []
        for row in self.coeffs:
            acc = 0
            for cj in reversed(row):
                acc = (acc * c_mod_p + cj) % p
            out.append(acc)
        return out


def _kronecker_pack(rows, slot, width):
    """Signed coefficient grid -> integer, digit k of row i at slot i*width+k."""
    nbytes = slot // 8
    half = 1 << (slot - 1)
    buf = bytearray()
    for row in rows:
        for j in range(width):
            c = row[j] if j < len(row) else 0
            buf += (c + half).to_bytes(nbytes, "little")
    return _bigint(int.from_bytes(buf, "little")) - _bigint(_offset_constant(slot, len(rows) * width))


def _kronecker_unpack(value, slot, width, nrows):
    total = nrows * width
    half = 1 << (slot - 1)
    nbytes = slot // 8
    shifted = int(value + _bigint(_offset_constant(slot, total)))
    raw = shifted.to_bytes(total * nbytes + 1, "little")
    digits = [int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half
              for k in range(total)]
    return [digits[i * width:(i + 1) * width] for i in range(nrows)]


@lru_cache(maxsize=32)
def _offset_constant(slot, total):
    half = 1 << (slot - 1)
    return int.from_bytes(half.to_bytes(slot // 8, "little") * total, "little")


def exact_divide(num, den):
    """Quotient q in Z[t][x] with q·den = num; ``den`` must be monic in x."""
    if den.is_zero() or den.coeffs[-1] != (1,):
        raise ValueError("divisor must be monic in x")
    rem = [list(row) for row in num.coeffs]
    dd = den.degree
    if len(rem) - 1 < dd:
        if num.is_zero():
            return BiPoly([])
        raise NonExactDivision("dividend degree below divisor degree")
    quot = [None] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        lead = ip_trim(rem[k])
        quot[k - dd] = lead
        if not lead:
            continue
        for i, drow in enumerate(den.coeffs[:-1]):
            if not drow:
                continue
            target = rem[k - dd + i]
            prod = ip_mul(lead, drow)
            if len(target) < len(prod):
                target.extend([0] * (len(prod) - len(target)))
            for j, v in enumerate(prod):
                target[j] -= v
        rem[k] = []
    if any(ip_trim(row) for row in rem[:dd]):
        raise NonExactDivision("nonzero remainder")
    return BiPoly(quot)


# ---------------------------------------------------------------------------
# ModPoly


class ModPoly:
    """Dense polynomial over F_p; coefficients lowest degree first in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p):
        self.p = p
        self.coeffs = tuple(ip_trim(c % p for c in coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, ModPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"

    def to_flint(self):
        return flint.nmod_poly(list(self.coeffs), self.p)


def distinct_degree_pattern(f):
    """Sorted list of irreducible-factor degrees of a squarefree ModPoly.

    Distinct-degree splitting only: the stage-d factor of degree m contributes
    m/d copies of d.
    """
    p = f.p
    g = f.to_flint()
    if g.degree() < 1:
        return []
    if g.leading_coefficient() != 1:
        g = g * pow(int(g.leading_coefficient()), -1, p)
    if g.gcd(g.derivative()).degree() != 0:
        raise NotSquarefree(f"polynomial is not squarefree mod {p}")
    x = flint.nmod_poly([0, 1], p)
    pattern = []
    h = x
    d = 0
    while g.degree() >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(p, g)
        stage = g.gcd(h - x)
        m = stage.degree()
        if m > 0:
            pattern.extend([d] * (m // d))
            g = g // stage
            h = h % g
    if g.degree() > 0:
        pattern.append(g.degree())
    return sorted(pattern)


def pattern_counts(pattern):
    return Counter(pattern)
