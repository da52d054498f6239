"""Exact prime densities via fixed-point-free element counts in W."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import BudgetExceeded
from .perm import iter_element_tuples
from .wreath import WreathParams


def derangement_like(r, i):
    """Permutations of r points with exactly i fixed points."""
    if not 0 <= i <= r:
        raise ValueError("need 0 <= i <= r")
    m = r - i
    # m! * sum_{k<=m} (-1)^k / k!  over the common denominator m!
    dm = sum((-1) ** k * (factorial(m) // factorial(k)) for k in range(m + 1))
    return comb(r, i) * dm


def fixed_point_free_count(n, r):
    return sum((n - 1) ** i * n ** (r - i) * derangement_like(r, i) for i in range(r + 1))


def _fixed(q, places):
    whole, frac = divmod(q, 10 ** places)
    return f"{whole}.{frac:0{places}d}"


def truncate_decimal(x, places=4):
    return _fixed((x.numerator * 10 ** places) // x.denominator, places)


def round_decimal(x, places=4):
    """Nearest, ties away from zero (x >= 0 here)."""
    return _fixed((2 * x.numerator * 10 ** places + x.denominator) // (2 * x.denominator), places)


@dataclass(frozen=True)
class DensityResult:
    n: int
    count: int
    group_order: int
    density: Fraction

    @property
    def decimal(self):
        """Rounded to 4 places; this is the form the published values use."""
        return round_decimal(self.density)

    @property
    def truncated(self):
        return truncate_decimal(self.density)

    def as_dict(self):
        return {
            "n": self.n,
            "count": str(self.count),
            "group_order": str(self.group_order),
            "density": f"{self.density.numerator}/{self.density.denominator}",
            "decimal": self.decimal,
            "truncated": self.truncated,
        }


def density_T(n):
    """Density of primes p for which x^2 + c has no point of period n in Q_p (generic c)."""
    params = WreathParams.for_period(n)
    count = fixed_point_free_count(params.n, params.r)
    order = params.order
    return DensityResult(n, count, order, Fraction(count, order))


def density_from_group(group, budget=10**6):
    """Fraction of elements with at least one fixed point, by enumeration."""
    order = group.order()
    if order > budget:
        raise BudgetExceeded(f"group order {order} exceeds budget {budget}")
    with_fixed = 0
    for img in iter_element_tuples(group):
        if any(p == q for p, q in enumerate(img)):
            with_fixed += 1
    return Fraction(with_fixed, order)
