"""Frobenius-pattern sieve over rationals of bounded height.

A value c is certified generic once every maximal class in the catalog has
been excluded by some prime p: the factor-degree pattern of Phi_n(c, x) mod p
is a cycle pattern of an element of G_{n,c}, so it must occur among the cycle
patterns of any subgroup that contains G_{n,c} up to conjugacy.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .arith import primes_from
from .dynatomic import BadPrime, build, frobenius_pattern, specialize
from .errors import BudgetExceeded, MissingPatternSet
from .perm import GeneratedGroup, cycle_pattern, iter_element_tuples

DEFAULT_BUDGET = 10**7
CACHE_VERSION = 1


# ---------------------------------------------------------------------------
# heights


def height(c):
    c = Fraction(c)
    return max(abs(c.numerator), c.denominator)


def enumerate_heights(h):
    """All rationals of height <= h, by height, then numerator, then denominator."""
    if h < 1:
        raise ValueError("height bound must be >= 1")
    out = set()
    for b in range(1, h + 1):
        for a in range(-h, h + 1):
            if gcd(a, b) == 1:
                out.add(Fraction(a, b))
    return sorted(out, key=lambda c: (height(c), c.numerator, c.denominator))


# ---------------------------------------------------------------------------
# pattern sets


@dataclass
class PatternSet:
    subgroup_id: str
    patterns: frozenset
    provenance: str            # enumerated | structural | external
    budget: int | None = None
    generator_hash: str = ""

    def __contains__(self, pattern):
        return tuple(pattern) in self.patterns

    def __len__(self):
        return len(self.patterns)

    def to_json(self, n):
        return {
            "version": CACHE_VERSION,
            "n": n,
            "id": self.subgroup_id,
            "hash": self.generator_hash,
            "provenance": self.provenance,
            "budget": self.budget,
            "patterns": sorted(sorted(p) for p in self.patterns),
        }

    @classmethod
    def from_json(cls, data):
        pats = frozenset(tuple(sorted(p, reverse=True)) for p in data["patterns"])
        return cls(data["id"], pats, data["provenance"], data.get("budget"), data["hash"])


def enumerated_patterns(spec, budget=DEFAULT_BUDGET):
    group = spec.group
    order = group.order()
    if order > budget:
        raise BudgetExceeded(f"{spec.id}: order {order} exceeds budget {budget}")
    found = set()
    count = 0
    for img in iter_element_tuples(group):
        found.add(cycle_pattern(img))
        count += 1
    if count != order:
        raise BudgetExceeded(f"{spec.id}: enumerated {count} elements, expected {order}")
    return frozenset(found)


def _partitions(r, largest=None):
    largest = r if largest is None else largest
    if r == 0:
        yield ()
        return
    for k in range(min(r, largest), 0, -1):
        for rest in _partitions(r - k, k):
            yield (k,) + rest


def _block_cycle_types(spec):
    """Cycle types (partitions of r) of the image of the subgroup in S_r."""
    r = spec.r
    if spec.family.kind != "PullbackSr":
        return set(_partitions(r))
    group = GeneratedGroup(spec.block_image_generators(), degree=r)
    return {cycle_pattern(img) for img in iter_element_tuples(group)}


def _sign(partition):
    return sum(k - 1 for k in partition) % 2


def _combine(partition, allowed, n, q, target):
    """Patterns reachable when each k-cycle takes a sum from allowed(k) and the
    total is constrained mod q (target None means unconstrained)."""
    mod = q or 1
    states = {((), 0)}
    for k in partition:
        choices = {}
        for a in allowed(k):
            g = gcd(n, a)
            choices.setdefault((g, a % mod), None)
        nxt = set()
        for pat, s in states:
            for g, am in choices:
                piece = (k * n // g,) * g
                nxt.add((tuple(sorted(pat + piece, reverse=True)), (s + am) % mod))
        states = nxt
    return {pat for pat, s in states if target is None or s == target % mod}


def structural_patterns(spec):
    """Exact pattern set for the built-in families, from the wreath type.

    An element (f, pi) has cycle pattern determined by the sums of f along the
    cycles of pi: a k-cycle with sum a gives gcd(n, a) cycles of length
    k*n/gcd(n, a).  Each family constrains those sums in a simple way.
    """
    n = spec.n
    fam = spec.family
    out = set()
    everything = range(n)
    for part in _block_cycle_types(spec):
        if fam.kind == "PullbackSr":
            out |= _combine(part, lambda k: everything, n, None, None)
        elif fam.kind == "SumKernel":
            target = (-_sign(part)) % 2 if fam.twisted else 0
            out |= _combine(part, lambda k: everything, n, fam.q, target)
        elif fam.kind == "DiagonalResidue":
            q = fam.q
            for kappa in range(q):
                out |= _combine(part, lambda k, kappa=kappa: [a for a in everything
                                                              if a % q == (k * kappa) % q],
                                n, None, None)
        else:
            raise MissingPatternSet(f"{spec.id}: no structural route for family {fam}")
    return frozenset(out)


def cache_dir(explicit=None):
    if explicit:
        return Path(explicit)
    env = os.environ.get("DYNGAL_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dyngal"


def _cache_path(directory, spec, provenance):
    return Path(directory) / f"n{spec.n}-{spec.id}-{spec.generator_hash()}-{provenance}.json"


def _atomic_write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def pattern_set(spec, budget=DEFAULT_BUDGET, method="auto", cache=None, use_cache=True):
    """Cycle patterns of all elements of the subgroup.

    ``method``: "enumerated" walks every element (bounded by ``budget``),
    "structural" uses the family description, "auto" enumerates when the
    order fits the budget and otherwise falls back to the structural route.
    """
    if method == "auto":
        method = "enumerated" if spec.order() <= budget else "structural"
    h = spec.generator_hash()
    path = _cache_path(cache_dir(cache), spec, method) if use_cache else None
    if path is not None and path.is_file():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            if data.get("hash") == h and data.get("version") == CACHE_VERSION:
                return PatternSet.from_json(data)
        except (OSError, ValueError, KeyError):
            pass
    if method == "enumerated":
        pats = enumerated_patterns(spec, budget)
    elif method == "structural":
        pats = structural_patterns(spec)
    else:
        raise ValueError(f"unknown pattern-set method {method!r}")
    ps = PatternSet(spec.id, pats, method, budget if method == "enumerated" else None, h)
    if path is not None:
        try:
            _atomic_write(path, ps.to_json(spec.n))
        except OSError:
            pass
    return ps


def catalog_pattern_sets(catalog, budget=DEFAULT_BUDGET, method="auto", cache=None,
                         use_cache=True, workers=1):
    def one(spec):
        return pattern_set(spec, budget, method, cache, use_cache)

    specs = list(catalog)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(workers) as pool:
            sets = list(pool.map(one, specs))
    else:
        sets = [one(s) for s in specs]
    return {s.id: ps for s, ps in zip(specs, sets)}


# ---------------------------------------------------------------------------
# verdicts


CERTIFIED = "CertifiedGeneric"
CANDIDATE = "CandidateExceptional"
DISC_ZERO = "DiscriminantZero"


@dataclass
class SieveVerdict:
    c: Fraction
    verdict: str
    witnesses: dict = field(default_factory=dict)   # spec id -> (p, pattern)
    surviving: list = field(default_factory=list)
    primes_used: int = 0
    catalog_status: str = ""

    def as_dict(self):
        return {
            "c": str(self.c),
            "verdict": self.verdict,
            "witnesses": {k: {"p": p, "pattern": list(pat)} for k, (p, pat) in self.witnesses.items()},
            "surviving": self.surviving,
            "primes_used": self.primes_used,
            "catalog_status": self.catalog_status,
        }


def certify(c, n, catalog, primes=100, pattern_sets=None, **pattern_kw):
    """Classify c; ``primes`` caps the number of good primes examined."""
    c = Fraction(c)
    inst = build(n)
    if pattern_sets is None:
        pattern_sets = catalog_pattern_sets(catalog, **pattern_kw)
    missing = [s.id for s in catalog if s.id not in pattern_sets]
    if missing:
        raise MissingPatternSet(f"no pattern set for {missing}")
    status = getattr(catalog, "status", "")
    spec_ids = [s.id for s in catalog]
    if not specialize(inst, c).squarefree:
        return SieveVerdict(c, DISC_ZERO, {}, spec_ids, 0, status)
    witnesses = {}
    used = 0
    seen = set()
    for p in primes_from(inst.D + 1):
        if used >= primes:
            break
        pat = frobenius_pattern(inst, c, p)
        if isinstance(pat, BadPrime):
            continue
        used += 1
        if pat in seen:
            continue
        seen.add(pat)
        for sid in spec_ids:
            if sid not in witnesses and pat not in pattern_sets[sid]:
                witnesses[sid] = (p, pat)
        if len(witnesses) == len(spec_ids):
            return SieveVerdict(c, CERTIFIED, witnesses, [], used, status)
    surviving = [sid for sid in spec_ids if sid not in witnesses]
    return SieveVerdict(c, CANDIDATE, witnesses, surviving, used, status)


@dataclass
class ScanReport:
    n: int
    height: int
    primes: int
    verdicts: list

    def values(self, tag):
        return [v.c for v in self.verdicts if v.verdict == tag]

    @property
    def candidates(self):
        return self.values(CANDIDATE)

    @property
    def discriminant_zero(self):
        return self.values(DISC_ZERO)

    def summary(self):
        counts = Counter(v.verdict for v in self.verdicts)
        return {
            "n": self.n,
            "height": self.height,
            "primes": self.primes,
            "total": len(self.verdicts),
            "counts": dict(counts),
            "candidates": [str(c) for c in self.candidates],
            "discriminant_zero": [str(c) for c in self.discriminant_zero],
            "surviving": {str(v.c): v.surviving for v in self.verdicts if v.verdict != CERTIFIED},
        }


def scan(h, n, catalog, primes=100, pattern_sets=None, workers=1, **pattern_kw):
    if pattern_sets is None:
        pattern_sets = catalog_pattern_sets(catalog, **pattern_kw)
    values = enumerate_heights(h)

    def one(c):
        return certify(c, n, catalog, primes, pattern_sets)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(workers) as pool:
            verdicts = list(pool.map(one, values))
    else:
        verdicts = [one(c) for c in values]
    return ScanReport(n, h, primes, verdicts)


__all__ = ["enumerate_heights", "height", "PatternSet", "pattern_set", "structural_patterns",
           "enumerated_patterns", "catalog_pattern_sets", "certify", "scan", "SieveVerdict",
           "ScanReport", "CERTIFIED", "CANDIDATE", "DISC_ZERO", "cache_dir"]
