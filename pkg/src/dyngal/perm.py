"""Permutations, Schreier-Sims, coset actions and element enumeration.

Points are 0-based internally; the cycle-notation text format is 1-based.
Products follow function composition: ``(a * b)(x) == a(b(x))``, so the
group acts on the left and cosets are left cosets ``gH``.
"""

from __future__ import annotations

import re
from collections import deque

from .errors import (BudgetExceeded, DegreeMismatch, IndexLimitExceeded,
                     NotASubgroup, NotInGroup, ParseError)


def _compose(a, b):
    return tuple([a[i] for i in b])


def _invert(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


class Permutation:
    """A bijection of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images, check=True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError("image table is not a bijection")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree):
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            pts = [c - 1 for c in cyc]
            for p in pts:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p + 1} outside 1..{degree}")
                if p in seen:
                    raise ValueError(f"point {p + 1} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text, degree):
        return cls.from_cycles(parse_cycles(text), degree)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"degrees {len(self.images)} and {len(other.images)} differ")
        return Permutation(_compose(self.images, other.images), check=False)

    def inverse(self):
        return Permutation(_invert(self.images), check=False)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def cycles(self):
        """Nontrivial cycles as 0-based tuples, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation.parse({str(self)!r}, {self.degree})"

    def order(self):
        from math import lcm
        out = 1
        for length in cycle_pattern(self):
            out = lcm(out, length)
        return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text):
    """Parse ``"(1,2,3)(4,5)"`` into a list of 1-based tuples; ``"()"`` is empty."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty permutation literal")
    if _CYCLE_RE.sub("", compact):
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(compact):
        if not body:
            continue
        try:
            cycles.append(tuple(int(tok) for tok in body.split(",")))
        except ValueError:
            raise ParseError(f"malformed cycle notation: {text!r}") from None
    return cycles


def compose(a, b):
    return a * b


def inverse(a):
    return a.inverse()


def conjugate(g, by):
    """``by^-1 * g * by``."""
    return by.inverse() * g * by


def cycle_pattern(g):
    """Sorted (descending) tuple of all cycle lengths, fixed points included."""
    img = g.images if isinstance(g, Permutation) else g
    n = len(img)
    seen = bytearray(n)
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = img[j]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def pattern_from_counts(counts):
    """Descending tuple from a {length: multiplicity} mapping."""
    out = []
    for length in sorted(counts, reverse=True):
        out.extend([length] * counts[length])
    return tuple(out)


# ---------------------------------------------------------------------------
# Schreier-Sims


class BSGS:
    """Base and strong generating set built by deterministic Schreier-Sims.

    ``transversals[i]`` maps each point of the i-th basic orbit to an element
    ``u`` of the i-th stabilizer with ``u(base[i]) == point``.
    """

    def __init__(self, degree, generators, base_hint=()):
        self.degree = degree
        ident = tuple(range(degree))
        gens = []
        for g in generators:
            if g != ident and g not in gens:
                gens.append(g)
        self.base = []
        self.strong = []        # strong[i]: generators fixing base[:i]
        self.transversals = []  # list of dict point -> element
        self.inverses = []      # list of dict point -> inverse element
        self.orbits = []        # basic orbits in discovery order
        for b in base_hint:
            if any(g[b] != b for g in gens):
                self._add_level(b)
        if not gens:
            return
        for g in gens:
            self._ensure_moves_base(g)
        for i in range(len(self.base)):
            self.strong[i] = [g for g in gens if all(g[b] == b for b in self.base[:i])]
            self._extend_orbit(i)
        self._schreier_sims()
        self._prune()

    # -- construction helpers
    def _add_level(self, point):
        self.base.append(point)
        self.strong.append([])
        ident = tuple(range(self.degree))
        self.transversals.append({point: ident})
        self.inverses.append({point: ident})
        self.orbits.append([point])

    def _ensure_moves_base(self, g):
        if all(g[b] == b for b in self.base):
            for p in range(self.degree):
                if g[p] != p:
                    self._add_level(p)
                    return

    def _extend_orbit(self, i):
        trans = self.transversals[i]
        invs = self.inverses[i]
        orbit = self.orbits[i]
        gens = self.strong[i]
        k = 0
        while k < len(orbit):
            delta = orbit[k]
            u = trans[delta]
            for s in gens:
                img = s[delta]
                if img not in trans:
                    v = _compose(s, u)
                    trans[img] = v
                    invs[img] = _invert(v)
                    orbit.append(img)
            k += 1

    def _strip(self, g, start):
        """Sift ``g`` from level ``start``; return (residue, level reached)."""
        for i in range(start, len(self.base)):
            delta = g[self.base[i]]
            inv = self.inverses[i].get(delta)
            if inv is None:
                return g, i
            g = _compose(inv, g)
        return g, len(self.base)

    def _schreier_sims(self):
        ident = tuple(range(self.degree))
        checked = [set() for _ in self.base]
        i = len(self.base) - 1
        while i >= 0:
            jumped = False
            trans = self.transversals[i]
            invs = self.inverses[i]
            done = checked[i]
            for delta in list(self.orbits[i]):
                u = trans[delta]
                for s in list(self.strong[i]):
                    key = (delta, s)
                    if key in done:
                        continue
                    sg = _compose(invs[s[delta]], _compose(s, u))
                    h, j = self._strip(sg, i + 1)
                    if h != ident:
                        if j == len(self.base):
                            self._ensure_moves_base(h)
                            checked.append(set())
                        for lvl in range(i + 1, j + 1):
                            self.strong[lvl].append(h)
                            self._extend_orbit(lvl)
                        i = j
                        jumped = True
                        break
                    done.add(key)
                if jumped:
                    break
            if not jumped:
                i -= 1

    def _prune(self):
        # drop trailing levels with trivial orbits (base hint points that ended up redundant)
        keep = [k for k in range(len(self.base)) if len(self.orbits[k]) > 1]
        self.base = [self.base[k] for k in keep]
        self.strong = [self.strong[k] for k in keep]
        self.transversals = [self.transversals[k] for k in keep]
        self.inverses = [self.inverses[k] for k in keep]
        self.orbits = [self.orbits[k] for k in keep]

    # -- queries
    def order(self):
        out = 1
        for orb in self.orbits:
            out *= len(orb)
        return out

    def contains(self, g):
        if len(g) != self.degree:
            return False
        h, _ = self._strip(tuple(g), 0)
        return all(i == j for i, j in enumerate(h))

    def coset_key(self, g):
        """Canonical key of the left coset ``g·H`` (H = this group).

        Greedily picks, level by level, the coset element with the smallest
        base image.  The element reached at the end is the same for every
        member of the coset, so its image tuple is the key.  (Base images
        alone are not enough: they pin down elements of H, not of G.)
        """
        for i, b in enumerate(self.base):
            orbit = self.orbits[i]
            best = orbit[0]
            best_img = g[best]
            for delta in orbit:
                v = g[delta]
                if v < best_img:
                    best, best_img = delta, v
            if best != b:
                g = _compose(g, self.transversals[i][best])
        return tuple(g)


class GeneratedGroup:
    """Permutation group given by generators; the BSGS is built lazily."""

    def __init__(self, generators, degree=None, base_hint=()):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.base_hint = tuple(base_hint)
        self._bsgs = None

    @property
    def bsgs(self):
        if self._bsgs is None:
            self._bsgs = BSGS(self.degree, [g.images for g in self.generators], self.base_hint)
        return self._bsgs

    def order(self):
        return self.bsgs.order()

    def __len__(self):
        return self.order()

    def contains(self, g):
        return self.bsgs.contains(g.images if isinstance(g, Permutation) else g)

    def __contains__(self, g):
        return self.contains(g)

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.generators)

    def orbit(self, point):
        seen = {point}
        queue = deque([point])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def enumerate_elements(self, budget):
        return enumerate_elements(self, budget)


def enumerate_elements(group, budget):
    """Yield every element exactly once as a Permutation.

    Order: lexicographic over transversal index tuples with each transversal
    sorted by orbit point.
    """
    order = group.order()
    if order > budget:
        raise BudgetExceeded(f"group order {order} exceeds enumeration budget {budget}")
    for images in iter_element_tuples(group):
        yield Permutation(images, check=False)


def iter_element_tuples(group):
    """Raw image tuples of all elements (see :func:`enumerate_elements`)."""
    bsgs = group.bsgs
    levels = [[bsgs.transversals[i][p] for p in sorted(bsgs.orbits[i])]
              for i in range(len(bsgs.base))]
    ident = tuple(range(group.degree))
    if not levels:
        yield ident
        return
    last = levels[-1]

    def walk(depth, prefix):
        if depth == len(levels) - 1:
            for u in last:
                yield tuple([prefix[i] for i in u])
            return
        for u in levels[depth]:
            yield from walk(depth + 1, tuple([prefix[i] for i in u]))

    yield from walk(0, ident)


# ---------------------------------------------------------------------------
# coset actions


class CosetAction:
    """Left-multiplication action of G on the left cosets of H.

    ``representatives[0]`` is the identity, so coset 0 is H itself;
    ``generator_images[k]`` is the permutation of cosets induced by
    ``G.generators[k]``.
    """

    def __init__(self, group, subgroup, representatives, index_of, generator_images, method):
        self.group = group
        self.subgroup = subgroup
        self.representatives = representatives
        self._index_of = index_of
        self.generator_images = generator_images
        self.method = method

    @property
    def size(self):
        return len(self.representatives)

    def locate(self, g):
        """Index of the coset containing the element ``g`` (raw tuple)."""
        if self.method == "key":
            return self._index_of[self.subgroup.bsgs.coset_key(g)]
        hb = self.subgroup.bsgs
        for idx, t in enumerate(self.representatives):
            if hb.contains(_compose(_invert(t), g)):
                return idx
        raise NotInGroup("element lies in no coset")

    def induced(self, g):
        return induced_permutation(self, g)


def coset_action(group, subgroup, limit=10_000, method="key", check=True):
    """Enumerate G/H by breadth-first search over G's generators.

    ``method="key"`` identifies cosets by the canonical base-image key of H's
    BSGS; ``method="scan"`` tests membership against every stored
    representative (quadratic, used to cross-check the keyed version).
    """
    if check:
        for h in subgroup.generators:
            if not group.contains(h):
                raise NotASubgroup(f"generator {h} of H is not in G")
    index = group.order() // subgroup.order()
    if group.order() % subgroup.order():
        raise NotASubgroup("|H| does not divide |G|")
    if index > limit:
        raise IndexLimitExceeded(f"index {index} exceeds coset limit {limit}")
    hb = subgroup.bsgs
    ident = tuple(range(group.degree))
    reps = [ident]
    index_of = {}
    gens = [g.images for g in group.generators]

    if method == "key":
        index_of[hb.coset_key(ident)] = 0

        def find(x):
            return index_of.get(hb.coset_key(x))

        def record(x, idx):
            index_of[hb.coset_key(x)] = idx
    elif method == "scan":
        def find(x):
            for idx, t in enumerate(reps):
                if hb.contains(_compose(_invert(t), x)):
                    return idx
            return None

        def record(x, idx):
            pass
    else:
        raise ValueError(f"unknown coset method {method!r}")

    images = [[None] * index for _ in gens]
    k = 0
    while k < len(reps):
        t = reps[k]
        for gi, s in enumerate(gens):
            x = _compose(s, t)
            j = find(x)
            if j is None:
                j = len(reps)
                if j >= index:
                    raise NotASubgroup("coset enumeration exceeded the index")
                reps.append(x)
                record(x, j)
            images[gi][k] = j
        k += 1
    if len(reps) != index:
        raise NotASubgroup("coset enumeration did not reach the index")
    gen_images = [Permutation(img, check=False) for img in images]
    return CosetAction(group, subgroup, reps, index_of, gen_images, method)


def induced_permutation(action, g):
    """Permutation of cosets induced by left multiplication by ``g``."""
    raw = g.images if isinstance(g, Permutation) else tuple(g)
    if not action.group.contains(raw):
        raise NotInGroup("element is not in the acting group")
    return Permutation([action.locate(_compose(raw, t)) for t in action.representatives], check=False)


def closure(generators, degree, limit=None):
    """Brute-force closure of a generator set (test oracle for small groups)."""
    ident = tuple(range(degree))
    gens = [g.images if isinstance(g, Permutation) else tuple(g) for g in generators]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _compose(s, x)
            if y not in seen:
                seen.add(y)
                if limit is not None and len(seen) > limit:
                    raise BudgetExceeded("closure exceeded limit")
                queue.append(y)
    return seen
