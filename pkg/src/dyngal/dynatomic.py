"""Dynatomic polynomials of x^2 + t and their ramification bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (BiPoly, ModPoly, distinct_degree_pattern, divisors, euler_phi,
                    exact_divide, ip_mod, mobius, squarefree_over_Q)
from .errors import NonExactDivision, NotADivisor, NotSquarefree
from .wreath import WreathParams


def nu(s):
    """Half the number of points of exact period s, counted with the Möbius sum."""
    if s < 1:
        raise ValueError("nu expects s >= 1")
    total = sum(mobius(s // d) * 2**d for d in divisors(s))
    return total // 2


def delta_degree(n, d):
    """Number of parameters b where period-n cycles collide with period-d ones."""
    if d < 1 or n % d:
        raise NotADivisor(f"{d} does not divide {n}")
    if d < n:
        return nu(d) * euler_phi(n // d)
    return nu(n) - sum(nu(k) * euler_phi(n // k) for k in divisors(n) if k < n)


@dataclass(frozen=True)
class PlaceClass:
    tag: str            # "inf" or "d"
    d: int | None       # divisor for finite classes
    multiplicity: int

    @property
    def label(self):
        return "inf" if self.tag == "inf" else f"d={self.d}"


def place_classes(n):
    """Infinity (multiplicity 1) then Divisor(d) for d | n in decreasing order."""
    out = [PlaceClass("inf", None, 1)]
    for d in sorted(divisors(n), reverse=True):
        out.append(PlaceClass("d", d, delta_degree(n, d)))
    return out


@lru_cache(maxsize=None)
def iterate_phi(k):
    """phi^k(x) - x in Z[t][x] for phi = x^2 + t."""
    x = BiPoly.x()
    t = BiPoly.t()
    p = x
    for _ in range(k):
        p = p * p + t
    return p - x


@dataclass(frozen=True)
class DynatomicInstance:
    n: int
    bipoly: BiPoly

    @property
    def D(self):
        return self.bipoly.degree

    @property
    def r(self):
        return self.D // self.n

    @property
    def params(self):
        return WreathParams(self.n, self.r)

    def coefficients_json(self):
        """Coefficient grid as decimal strings, lowest degree first in x and t."""
        return [[str(c) for c in row] for row in self.bipoly.coeffs]


@lru_cache(maxsize=None)
def build(n):
    """Φ_n = prod_{d|n} (phi^d(x) - x)^{mu(n/d)} computed exactly over Z[t]."""
    if n < 1:
        raise ValueError("n must be positive")
    num = BiPoly([[1]])
    den = BiPoly([[1]])
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num = num * iterate_phi(d)
        elif mu == -1:
            den = den * iterate_phi(d)
    phi_n = exact_divide(num, den)
    if phi_n.degree != 2 * nu(n) or phi_n.coeffs[-1] != (1,):
        raise NonExactDivision(f"degree check failed for n={n}: got {phi_n.degree}")
    return DynatomicInstance(n, phi_n)


@dataclass(frozen=True)
class Specialization:
    c: Fraction
    poly: list          # IntPoly, denominators cleared
    squarefree: bool


def specialize(inst, c):
    c = Fraction(c)
    poly = inst.bipoly.evaluate(c)
    return Specialization(c, poly, squarefree_over_Q(poly))


class BadPrime:
    """Marker value: the prime is unusable for this specialization."""

    def __init__(self, p, reason):
        self.p = p
        self.reason = reason

    def __repr__(self):
        return f"BadPrime({self.p}, {self.reason!r})"

    def __eq__(self, other):
        return isinstance(other, BadPrime) and self.p == other.p

    def __hash__(self):
        return hash(("bad", self.p))


def frobenius_pattern(inst, c, p):
    """Factor-degree pattern (descending) of Φ_n(c, x) mod p, or BadPrime."""
    c = Fraction(c)
    if c.denominator % p == 0:
        return BadPrime(p, "denominator")
    cp = c.numerator * pow(c.denominator, -1, p) % p
    f = ModPoly(inst.bipoly.reduce_at(cp, p), p)
    try:
        pattern = distinct_degree_pattern(f)
    except NotSquarefree:
        return BadPrime(p, "not squarefree")
    return tuple(sorted(pattern, reverse=True))


def reduce_cleared(spec_poly, p):
    """Specialization reduced mod p (for the reduction-commutes check)."""
    return ModPoly(ip_mod(spec_poly, p), p)
