"""The wreath product (Z/nZ) wr S_r acting on n*r points.

Point ``n*i + a`` (0-based block ``i``, residue ``a``) is the pair ``(a, i)``.
An element ``(f, pi)`` sends ``(a, i)`` to ``(f[pi(i)] + a, pi(i))`` and the
product is ``(f, pi)(g, s) = (f + g o pi^-1, pi s)``, so :meth:`to_perm` is a
homomorphism for function composition.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, gcd

from .errors import IndexOutOfRange, InvalidParameters, NotInWreathGroup, ParseError
from .perm import GeneratedGroup, Permutation, cycle_pattern, parse_cycles, pattern_from_counts


@dataclass(frozen=True)
class WreathParams:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise InvalidParameters(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")

    @property
    def D(self):
        return self.n * self.r

    @property
    def order(self):
        return self.n ** self.r * factorial(self.r)

    @classmethod
    def for_period(cls, n):
        from .dynatomic import nu
        D = 2 * nu(n)
        return cls(n, D // n)

    def block_starts(self):
        return [self.n * i for i in range(self.r)]


class WreathElement:
    """``(f, pi)`` with ``f`` a tuple of residues mod n and ``pi`` on r points."""

    __slots__ = ("n", "f", "pi")

    def __init__(self, f, pi, n):
        if not isinstance(pi, Permutation):
            pi = Permutation(pi)
        if len(f) != pi.degree:
            raise InvalidParameters("f and pi have different lengths")
        self.n = n
        self.f = tuple(x % n for x in f)
        self.pi = pi

    @classmethod
    def identity(cls, params):
        return cls((0,) * params.r, Permutation.identity(params.r), params.n)

    @property
    def r(self):
        return len(self.f)

    @property
    def params(self):
        return WreathParams(self.n, self.r)

    def __mul__(self, other):
        if (self.n, self.r) != (other.n, other.r):
            raise InvalidParameters("wreath elements from different groups")
        inv = self.pi.inverse().images
        f = tuple((self.f[i] + other.f[inv[i]]) % self.n for i in range(self.r))
        return WreathElement(f, self.pi * other.pi, self.n)

    def inverse(self):
        # (f, pi)^-1 = (-f o pi, pi^-1)
        pimg = self.pi.images
        f = tuple((-self.f[pimg[i]]) % self.n for i in range(self.r))
        return WreathElement(f, self.pi.inverse(), self.n)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = WreathElement.identity(self.params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, WreathElement) and (self.n, self.f, self.pi) == (other.n, other.f, other.pi)

    def __hash__(self):
        return hash((self.n, self.f, self.pi.images))

    def __str__(self):
        return "[" + ",".join(map(str, self.f)) + "];" + str(self.pi)

    def __repr__(self):
        return f"WreathElement.parse({str(self)!r}, n={self.n})"

    @classmethod
    def parse(cls, text, n, r=None):
        """Parse the literal ``[f1,...,fr];(cycles on r points)``."""
        m = re.fullmatch(r"\s*\[([^\]]*)\]\s*;\s*(.*?)\s*", text)
        if not m:
            raise ParseError(f"malformed wreath element literal: {text!r}")
        try:
            f = [int(tok) for tok in m.group(1).split(",")] if m.group(1).strip() else []
        except ValueError:
            raise ParseError(f"malformed residue list: {m.group(1)!r}") from None
        if r is not None and len(f) != r:
            raise ParseError(f"expected {r} residues, found {len(f)}")
        try:
            pi = Permutation.from_cycles(parse_cycles(m.group(2)), len(f))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return cls(f, pi, n)

    def to_perm(self):
        return to_perm(self)


def sigma(params):
    """Product of the r consecutive n-cycles."""
    n = params.n
    return Permutation([n * (p // n) + (p % n + 1) % n for p in range(params.D)], check=False)


def to_perm(w):
    n, f, pimg = w.n, w.f, w.pi.images
    img = [0] * (n * len(f))
    for i, j in enumerate(pimg):
        shift = f[j]
        base = n * j
        for a in range(n):
            img[n * i + a] = base + (shift + a) % n
    return Permutation(img, check=False)


def from_perm(g, params):
    n, r = params.n, params.r
    if g.degree != params.D:
        raise NotInWreathGroup(f"degree {g.degree} differs from D={params.D}")
    s = sigma(params)
    if g * s != s * g:
        raise NotInWreathGroup(f"{g} does not commute with sigma")
    pi = [g(n * i) // n for i in range(r)]
    f = [0] * r
    for i, j in enumerate(pi):
        f[j] = g(n * i) % n
    return WreathElement(f, Permutation(pi, check=False), n)


def _check_index(i, params):
    if not 1 <= i <= params.r:
        raise IndexOutOfRange(f"block index {i} outside 1..{params.r}")


def rho(i, params):
    """Rotation of the i-th block (1-based)."""
    _check_index(i, params)
    f = [0] * params.r
    f[i - 1] = 1
    return WreathElement(f, Permutation.identity(params.r), params.n)


def tau(i, j, params):
    """Interchange of blocks i and j (1-based) without rotation."""
    _check_index(i, params)
    _check_index(j, params)
    if i == j:
        raise IndexOutOfRange("tau needs two distinct blocks")
    return WreathElement((0,) * params.r, Permutation.from_cycles([(i, j)], params.r), params.n)


def lift(pi, params):
    """The element (0, pi) for a permutation of the r blocks."""
    return WreathElement((0,) * params.r, pi, params.n)


def product_of(elements, params):
    out = WreathElement.identity(params)
    for w in elements:
        out = out * w
    return out


def gamma_j(j, params):
    """(rho_1 ... rho_l)^(n/2) times tau_{l+1,l+2} ... tau_{r-1,r}, with l = r - 2j.

    ``j = r/2`` (r even) is the fixed-point-free product of block swaps.
    """
    n, r = params.n, params.r
    if n % 2:
        raise InvalidParameters("gamma_j needs even n")
    if not 0 <= j <= r // 2:
        raise IndexOutOfRange(f"j={j} outside 0..{r // 2}")
    ell = r - 2 * j
    f = [n // 2 if i < ell else 0 for i in range(r)]
    swaps = [(r - 1 - 2 * k, r - 2 * k) for k in range(j)]
    return WreathElement(f, Permutation.from_cycles(swaps, r), n)


def swap_product(params):
    """tau_{1,2} tau_{3,4} ... tau_{r-1,r} (r even)."""
    r = params.r
    if r % 2:
        raise InvalidParameters("swap_product needs even r")
    return lift(Permutation.from_cycles([(2 * k + 1, 2 * k + 2) for k in range(r // 2)], r), params)


def wreath_generators(params):
    """rho_1, tau_{1,2} and the r-cycle (1,...,r), skipping trivial ones."""
    gens = []
    if params.n > 1:
        gens.append(rho(1, params))
    if params.r >= 2:
        gens.append(tau(1, 2, params))
    if params.r >= 3:
        gens.append(lift(Permutation.from_cycles([tuple(range(1, params.r + 1))], params.r), params))
    return gens


def as_group(elements, params):
    """GeneratedGroup on D points with the block starts as base hint."""
    return GeneratedGroup([w.to_perm() for w in elements], degree=params.D,
                          base_hint=params.block_starts())


def wreath_group(params):
    return as_group(wreath_generators(params), params)


def all_elements(params):
    """Every element of W (brute force; for small n and r only)."""
    for pi in permutations(range(params.r)):
        p = Permutation(pi, check=False)
        for f in product(range(params.n), repeat=params.r):
            yield WreathElement(f, p, params.n)


# ---------------------------------------------------------------------------
# types, conjugacy, centralizers


class WreathType:
    """Counts t[(a, k)] of k-cycles of pi whose f-sum is a (mod n)."""

    __slots__ = ("n", "counts")

    def __init__(self, counts, n):
        self.n = n
        self.counts = tuple(sorted((ak, c) for ak, c in dict(counts).items() if c))

    def __getitem__(self, ak):
        return dict(self.counts).get(ak, 0)

    @property
    def r(self):
        return sum(k * c for (_, k), c in self.counts)

    def __eq__(self, other):
        return isinstance(other, WreathType) and (self.n, self.counts) == (other.n, other.counts)

    def __hash__(self):
        return hash((self.n, self.counts))

    def __repr__(self):
        body = ", ".join(f"t[{a},{k}]={c}" for (a, k), c in self.counts)
        return f"WreathType({body})"


def type_of(w):
    counts = Counter()
    for cyc in _pi_cycles(w.pi):
        counts[(sum(w.f[i] for i in cyc) % w.n, len(cyc))] += 1
    return WreathType(counts, w.n)


def _pi_cycles(pi):
    seen = [False] * pi.degree
    out = []
    for s in range(pi.degree):
        if seen[s]:
            continue
        cyc = []
        j = s
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = pi.images[j]
        out.append(cyc)
    return out


def is_conjugate(w1, w2):
    return type_of(w1) == type_of(w2)


def centralizer_order(t, params):
    if t.r != params.r:
        raise InvalidParameters(f"type describes r={t.r}, expected r={params.r}")
    out = 1
    for (_, k), c in t.counts:
        out *= factorial(c) * (k * params.n) ** c
    return out


def induced_cycle_pattern(t, params):
    """Cycle pattern on D points of any element of type ``t``."""
    n = params.n
    counts = Counter()
    for (a, k), c in t.counts:
        g = gcd(n, a)
        counts[k * n // g] += g * c
    return pattern_from_counts(counts)


@dataclass(frozen=True)
class Classification:
    case: str
    data: tuple = ()

    def __str__(self):
        return self.case + (str(self.data) if self.data else "")


def classify(w):
    """Case analysis for cycle types (2, D/2), (2, n) and elements moving n points.

    Returned cases: Case1a, Case1b(l), Case2a(i,j), Case2b(i,j,s), Case3(i,s),
    Other.  Indices are 1-based.
    """
    n, r = w.n, w.r
    D = n * r
    pat = cycle_pattern(to_perm(w))
    moved = [c for c in pat if c > 1]
    fixed_blocks = [i for i in range(r) if w.pi.images[i] == i]
    if moved and all(c == 2 for c in moved):
        if len(moved) == D // 2 and 2 * len(moved) == D:
            if not fixed_blocks:
                return Classification("Case1a")
            return Classification("Case1b", (len(fixed_blocks),))
        if len(moved) == n:
            if len(fixed_blocks) == r:
                i, j = [k + 1 for k in range(r) if w.f[k]]
                return Classification("Case2a", (i, j))
            i, j = [k + 1 for k in range(r) if w.pi.images[k] != k]
            return Classification("Case2b", (i, j, w.f[j - 1]))
    if sum(moved) == n and len(fixed_blocks) == r:
        nonzero = [k for k in range(r) if w.f[k]]
        if len(nonzero) == 1:
            return Classification("Case3", (nonzero[0] + 1, w.f[nonzero[0]]))
    return Classification("Other")
