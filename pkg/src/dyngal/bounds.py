"""Genus lower bounds from small witness sets of conjugates (no coset enumeration)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial, floor, gcd

from .arith import divisors
from .dynatomic import delta_degree
from .errors import NonIntegralCount, NotADivisor, UnsupportedN
from .wreath import centralizer_order, rho, tau, to_perm, type_of


def theta_set(params):
    """rho_i^s for every block i and 0 < s < n."""
    out = []
    for i in range(1, params.r + 1):
        base = rho(i, params)
        for s in range(1, params.n):
            out.append(base ** s)
    return list(dict.fromkeys(out))


def theta_subset(params, d):
    """Members of theta with cycle type (n/d, d), i.e. gcd(n, s) = d."""
    if params.n % d:
        raise NotADivisor(f"{d} does not divide {params.n}")
    return [w for w in theta_set(params) if gcd(params.n, max(w.f)) == d]


def lambda_set(params):
    """rho_i^-s tau_ij rho_i^s for i < j and 0 <= s < n."""
    out = []
    for i in range(1, params.r + 1):
        ri = rho(i, params)
        for j in range(i + 1, params.r + 1):
            t = tau(i, j, params)
            for s in range(params.n):
                out.append(ri ** (-s) * t * ri ** s)
    return list(dict.fromkeys(out))


def psi_set(params):
    """(rho_i rho_j)^(n/2) for i < j (even n only)."""
    half = params.n // 2
    return [(rho(i, params) * rho(j, params)) ** half
            for i in range(1, params.r + 1) for j in range(i + 1, params.r + 1)]


def count_in(group, elements):
    return sum(1 for w in elements if group.contains(to_perm(w)))


def unramified_count(H, gamma, params):
    """|C(gamma)| * #(conjugates of gamma in H) / |H|.

    Conjugates are taken from the witness family (theta or lambda) that holds
    the class of ``gamma``.
    """
    group = H.group if hasattr(H, "group") else H
    t = type_of(gamma)
    family = theta_set(params) + lambda_set(params)
    conj = [w for w in family if type_of(w) == t]
    if not conj:
        raise NonIntegralCount("gamma is not conjugate to a witness-set element")
    value = Fraction(centralizer_order(t, params) * count_in(group, conj), group.order())
    if value.denominator != 1:
        raise NonIntegralCount(f"unramified count {value} is not an integer")
    return int(value)


def _index(group, params):
    return params.order // group.order()


def u_nd(H, d, params, experimental_even=False):
    group = H.group if hasattr(H, "group") else H
    n, r = params.n, params.r
    if d < 1 or n % d:
        raise NotADivisor(f"{d} does not divide {n}")
    if d < n:
        hits = count_in(group, theta_subset(params, d))
        return Fraction(factorial(r - 1) * n ** r * hits, group.order())
    if n % 2 == 0 and not experimental_even:
        raise UnsupportedN("u_{n,n} for even n needs the experimental variant")
    hits = count_in(group, lambda_set(params))
    u = Fraction(2 * factorial(r - 2) * n ** (r - 1) * hits, group.order())
    if n % 2 == 0:
        u += Fraction(2 * factorial(r - 2) * n ** r * count_in(group, psi_set(params)), group.order())
    return u


def contribution_bound(a, u):
    """ceil(a - floor((u + a) / 2)) for an index a and a rational u."""
    return ceil(a - floor((Fraction(u) + a) / 2))


def g_prime(H, d, params, experimental_even=False):
    group = H.group if hasattr(H, "group") else H
    a = _index(group, params)
    u = u_nd(group, d, params, experimental_even)
    return delta_degree(params.n, d) * contribution_bound(a, u)


@dataclass
class BoundReport:
    subgroup_id: str
    index: int
    u: dict = field(default_factory=dict)          # d -> Fraction
    g_prime: dict = field(default_factory=dict)    # d -> int
    lower_bound: int = 0

    def as_dict(self):
        return {
            "subgroup": self.subgroup_id,
            "index": self.index,
            "u": {str(d): str(v) for d, v in self.u.items()},
            "g_prime": {str(d): v for d, v in self.g_prime.items()},
            "lower_bound": self.lower_bound,
        }


def genus_lower_bound(H, params=None, experimental_even=False):
    """ceil(1 - a + 1/2 sum_d max(g'_d, 0)); places over infinity are left out."""
    params = params or H.params
    group = H.group if hasattr(H, "group") else H
    a = _index(group, params)
    report = BoundReport(getattr(H, "id", "?"), a)
    total = 0
    for d in divisors(params.n):
        u = u_nd(group, d, params, experimental_even)
        g = delta_degree(params.n, d) * contribution_bound(a, u)
        report.u[d] = u
        report.g_prime[d] = g
        total += max(g, 0)
    report.lower_bound = ceil(Fraction(2 - 2 * a + total, 2))
    return report


def minimum_bound(catalog, experimental_even=False):
    reports = [genus_lower_bound(s, s.params, experimental_even) for s in catalog]
    return min(rep.lower_bound for rep in reports), reports


__all__ = ["theta_set", "theta_subset", "lambda_set", "psi_set", "unramified_count", "u_nd",
           "g_prime", "contribution_bound", "BoundReport", "genus_lower_bound", "minimum_bound"]
