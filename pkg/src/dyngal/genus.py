"""Inertia generators per ramified place class and exact genera of fixed fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .arith import divisors, euler_phi, mobius
from .dynatomic import PlaceClass, place_classes
from .errors import AmbiguousInertia, NonIntegralGenus, UnsupportedN
from .perm import Permutation, coset_action, cycle_pattern, induced_permutation
from .wreath import WreathParams, as_group, gamma_j, lift, rho, tau, to_perm, wreath_group

SUPPORTED_N = range(1, 10)
COSET_LIMIT = 10_000


def compute_e_n(n):
    total = 0
    for d in divisors(gcd(n, 2)):
        inner = 0
        for k in divisors(n):
            if k % d == 0 and gcd(n // k, d) == 1:
                inner += mobius(n // k) * 2 ** (k // d)
        total += euler_phi(d) ** 2 * inner
    if total % (2 * n):
        raise ArithmeticError(f"e_n sum {total} not divisible by {2 * n}")
    return total // (2 * n)


def f0_stabilizer(params):
    """Setwise stabilizer of the first block."""
    r = params.r
    gens = [rho(i, params) for i in range(1, r + 1)] if params.n > 1 else []
    if r >= 3:
        gens.append(lift(Permutation.from_cycles([(2, 3)], r), params))
    if r >= 4:
        gens.append(lift(Permutation.from_cycles([tuple(range(2, r + 1))], r), params))
    return as_group(gens, params)


@lru_cache(maxsize=None)
def _wreath(params):
    return wreath_group(params)


@lru_cache(maxsize=None)
def _f0_action(params):
    return coset_action(_wreath(params), f0_stabilizer(params))


def ramification_sum(perm):
    """Sum over cycles of (length - 1)."""
    return sum(len(c) - 1 for c in perm.cycles())


def s_of_p(gamma, params):
    return ramification_sum(induced_permutation(_f0_action(params), to_perm(gamma)))


@dataclass(frozen=True)
class InertiaEntry:
    place: PlaceClass
    generator: object     # WreathElement
    name: str = ""

    @property
    def multiplicity(self):
        return self.place.multiplicity


@dataclass
class InertiaSystem:
    n: int
    entries: list

    @property
    def params(self):
        return self.entries[0].generator.params


def _select(candidates, target, what):
    hits = [(name, w) for name, w, s in candidates if s == target]
    if len(hits) != 1:
        raise AmbiguousInertia(f"{what}: {len(hits)} candidates match S(p)={target}")
    return hits[0]


def inertia_system(n):
    if n not in SUPPORTED_N:
        raise UnsupportedN(f"n={n} outside the supported range 1..9")
    params = WreathParams.for_period(n)
    r = params.r
    entries = []
    for pc in place_classes(n):
        if pc.multiplicity == 0:
            continue
        if pc.tag == "inf":
            if n % 2:
                if r % 2:
                    raise AmbiguousInertia(f"odd n={n} with odd r={r}")
                pairs = [(2 * k + 1, 2 * k + 2) for k in range(r // 2)]
                gen = lift(Permutation.from_cycles(pairs, r), params)
                name = "tau-product"
            else:
                target = r - compute_e_n(n)
                cands = [(f"gamma{j}", w, s_of_p(w, params))
                         for j, w in ((j, gamma_j(j, params)) for j in range(r // 2 + 1))]
                name, gen = _select(cands, target, f"n={n} infinity")
        elif pc.d == n:
            if n % 2:
                gen, name = tau(1, 2, params), "tau12"
            else:
                b0 = (rho(1, params) * rho(2, params)) ** (n // 2)
                b1 = tau(1, 2, params)
                cands = [(nm, w, s_of_p(w, params)) for nm, w in (("B0", b0), ("B1", b1))]
                name, gen = _select(cands, 1, f"n={n} d=n")
        else:
            gen, name = rho(1, params) ** pc.d, f"rho1^{pc.d}"
        entries.append(InertiaEntry(pc, gen, name))
    return InertiaSystem(n, entries)


@dataclass
class GenusReport:
    subgroup_id: str
    index: int
    labels: list
    q: list                 # unweighted sums per class
    contributions: list     # multiplicity times q
    genus: int
    cycle_lengths: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "subgroup": self.subgroup_id,
            "index": self.index,
            "classes": self.labels,
            "q": self.q,
            "contributions": self.contributions,
            "genus": self.genus,
        }


def genus_from_contributions(index, contributions, subgroup_id="?"):
    total = sum(contributions)
    if total % 2:
        raise NonIntegralGenus(f"{subgroup_id}: odd ramification sum {total}")
    return 1 - index + total // 2


def genus_of(spec, system, limit=COSET_LIMIT, method="key"):
    params = spec.params
    group = spec.group if hasattr(spec, "group") else spec
    action = coset_action(_wreath(params), group, limit=limit, method=method)
    labels, qs, contribs, lengths = [], [], [], {}
    for e in system.entries:
        ind = induced_permutation(action, to_perm(e.generator))
        cyc = list(cycle_pattern(ind))
        if sum(cyc) != action.size:
            raise NonIntegralGenus(f"{spec.id}: induced cycles do not cover the cosets")
        q = sum(c - 1 for c in cyc)
        labels.append(e.place.label)
        qs.append(q)
        contribs.append(e.multiplicity * q)
        lengths[e.place.label] = cyc
    genus = genus_from_contributions(action.size, contribs, spec.id)
    return GenusReport(spec.id, action.size, labels, qs, contribs, genus, lengths)


def genus_survey(catalog, system, limit=COSET_LIMIT, workers=1):
    specs = list(catalog)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(lambda s: genus_of(s, system, limit), specs))
    else:
        reports = [genus_of(s, system, limit) for s in specs]
    reports.sort(key=lambda rep: -rep.index)
    return reports


def render_table(reports, weighted=True):
    """Plain-text table: one column per subgroup, one row per place class."""
    if not reports:
        return ""
    ids = [rep.subgroup_id for rep in reports]
    rows = [["", *ids], ["index", *[str(rep.index) for rep in reports]]]
    for k, label in enumerate(reports[0].labels):
        vals = [rep.contributions[k] if weighted else rep.q[k] for rep in reports]
        rows.append([label, *map(str, vals)])
    rows.append(["genus", *[str(rep.genus) for rep in reports]])
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows)
