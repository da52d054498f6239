"""Subgroup catalogs: builders, the line-oriented file format, validation.

File grammar::

    catalog n=<N> status=<paper-verified|reconstructed|external>
    # comment
    subgroup id=<s> family=<tag> index=<int?> [note="..."]
      <wreath element literal, one generator per indented line>

Family tags: ``PullbackSr``, ``SumKernel(q,false|true)``,
``DiagonalResidue(q)``, ``External``.
"""

from __future__ import annotations

import hashlib
import re
import shlex
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import factorial, gcd
from pathlib import Path

from .arith import factorize
from .errors import InvalidCharacter, InvalidParameters, ParseError, ValidationError
from .perm import Permutation
from .wreath import WreathElement, WreathParams, as_group, lift, rho, sigma, tau

STATUSES = ("paper-verified", "reconstructed", "external")


@dataclass(frozen=True)
class Family:
    kind: str                 # PullbackSr | SumKernel | DiagonalResidue | External
    q: int | None = None
    twisted: bool = False

    def __str__(self):
        if self.kind == "SumKernel":
            return f"SumKernel({self.q},{'true' if self.twisted else 'false'})"
        if self.kind == "DiagonalResidue":
            return f"DiagonalResidue({self.q})"
        return self.kind

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"SumKernel\((\d+),(true|false)\)", text)
        if m:
            return cls("SumKernel", int(m.group(1)), m.group(2) == "true")
        m = re.fullmatch(r"DiagonalResidue\((\d+)\)", text)
        if m:
            return cls("DiagonalResidue", int(m.group(1)))
        if text in ("PullbackSr", "External"):
            return cls(text)
        raise ParseError(f"unknown family tag {text!r}")


@dataclass(eq=False)
class SubgroupSpec:
    id: str
    n: int
    family: Family
    generators: list
    expected_index: int | None = None
    note: str = ""
    r: int | None = None

    def __post_init__(self):
        if self.r is None:
            if not self.generators:
                raise InvalidParameters(f"spec {self.id}: r unknown without generators")
            self.r = self.generators[0].r

    @property
    def params(self):
        return WreathParams(self.n, self.r)

    @cached_property
    def group(self):
        return as_group(self.generators, self.params)

    def order(self):
        return self.group.order()

    def index(self):
        return self.params.order // self.order()

    def generator_hash(self):
        text = "\n".join(str(g) for g in self.generators)
        return hashlib.sha256(f"{self.n}|{self.r}|{text}".encode()).hexdigest()[:16]

    def block_image_generators(self):
        """Generators of the image of the subgroup in S_r."""
        return [g.pi for g in self.generators if not g.pi.is_identity()]


@dataclass
class Catalog:
    n: int
    specs: list
    status: str = "reconstructed"

    def __post_init__(self):
        ids = [s.id for s in self.specs]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"duplicate subgroup ids in catalog: {ids}")
        if self.status not in STATUSES:
            raise ParseError(f"unknown catalog status {self.status!r}")

    def __iter__(self):
        return iter(self.specs)

    def __len__(self):
        return len(self.specs)

    def get(self, spec_id):
        for s in self.specs:
            if s.id == spec_id:
                return s
        raise KeyError(spec_id)


# ---------------------------------------------------------------------------
# permutation groups on the r blocks


def _perm(cycles, r):
    return Permutation.from_cycles(cycles, r)


def symmetric_generators(points, r):
    """Generators of Sym(points) inside S_r (points 1-based)."""
    points = list(points)
    if len(points) < 2:
        return []
    gens = [_perm([(points[0], points[1])], r)]
    if len(points) > 2:
        gens.append(_perm([tuple(points)], r))
    return gens


def alternating_generators(r):
    if r < 3:
        return []
    gens = [_perm([(1, 2, 3)], r)]
    if r > 3:
        cyc = tuple(range(1, r + 1)) if r % 2 else tuple(range(2, r + 1))
        gens.append(_perm([cyc], r))
    return gens


def intransitive_generators(k, r):
    """S_k x S_{r-k}."""
    return symmetric_generators(range(1, k + 1), r) + symmetric_generators(range(k + 1, r + 1), r)


def imprimitive_generators(a, b):
    """S_a wr S_b on r = a*b points, blocks {1..a}, {a+1..2a}, ..."""
    r = a * b
    gens = symmetric_generators(range(1, a + 1), r)
    if b >= 2:
        gens.append(_perm([(i, a + i) for i in range(1, a + 1)], r))
    if b >= 3:
        gens.append(_perm([tuple(i + a * j for j in range(b)) for i in range(1, a + 1)], r))
    return gens


def pgl2_generators(q):
    """PGL(2, q) on the projective line, q prime: x+1, g*x, -1/x.

    Points 0..q-1 are labelled 1..q and infinity is q+1.
    """
    inf = q
    r = q + 1
    g = next(a for a in range(2, q) if all(pow(a, (q - 1) // p, q) != 1 for p, _ in factorize(q - 1))) \
        if q > 2 else 1

    def from_map(fn):
        return Permutation([fn(x) for x in range(r)], check=False)

    shift = from_map(lambda x: inf if x == inf else (x + 1) % q)
    scale = from_map(lambda x: inf if x == inf else (g * x) % q)
    invert = from_map(lambda x: 0 if x == inf else (inf if x == 0 else (-pow(x, -1, q)) % q))
    return [shift, scale, invert]


def agl2_3_generators():
    """AGL(2, 3) on F_3^2, point (u, v) labelled 1 + u + 3v."""
    def label(u, v):
        return (u % 3) + 3 * (v % 3)

    def from_map(fn):
        return Permutation([label(*fn(p % 3, p // 3)) for p in range(9)], check=False)

    translate = from_map(lambda u, v: (u + 1, v))
    shear = from_map(lambda u, v: (u + v, v))
    swap = from_map(lambda u, v: (v, u))
    scale = from_map(lambda u, v: (2 * u, v))
    return [translate, shear, swap, scale]


def maximal_sr_classes(r):
    """(name, generators, order) for the maximal subgroups of S_r used here.

    Intransitive S_k x S_{r-k} (k < r/2), imprimitive S_a wr S_b, A_r, and the
    primitive classes PGL(2,5) < S_6, AGL(2,3) < S_9, PGL(2,17) < S_18.
    """
    out = []
    for k in range(1, (r + 1) // 2):
        out.append((f"S{r - k}xS{k}", intransitive_generators(k, r),
                    factorial(k) * factorial(r - k)))
    for a in range(2, r):
        if r % a == 0 and a < r:
            b = r // a
            if b >= 2:
                out.append((f"S{a}wrS{b}", imprimitive_generators(a, b),
                            factorial(a) ** b * factorial(b)))
    if r >= 3:
        out.append((f"A{r}", alternating_generators(r), factorial(r) // 2))
    primitive = {6: ("PGL(2,5)", pgl2_generators(5), 120),
                 9: ("AGL(2,3)", agl2_3_generators(), 432),
                 18: ("PGL(2,17)", pgl2_generators(17), 4896)}
    if r in primitive:
        out.append(primitive[r])
    return out


# ---------------------------------------------------------------------------
# builders


def build_pullback(n, r, m_gens, spec_id="pullback", expected_index=None, note=""):
    """Full preimage of M = <m_gens> under the projection W -> S_r."""
    params = WreathParams(n, r)
    gens = [rho(i, params) for i in range(1, r + 1)] if n > 1 else []
    gens += [lift(p, params) for p in m_gens]
    return SubgroupSpec(spec_id, n, Family("PullbackSr"), gens, expected_index, note, r)


def _prime_divisor_check(n, q):
    if q < 2 or n % q or len(factorize(q)) != 1 or factorize(q)[0][1] != 1:
        return False
    return True


def build_sum_kernel(n, r, q, twisted=False, spec_id=None, expected_index=None, note=""):
    """Kernel of (f, pi) -> sum(f) mod q, or of sum(f) + sgn(pi) mod 2 when twisted."""
    if not _prime_divisor_check(n, q):
        raise InvalidCharacter(f"q={q} is not a prime divisor of n={n}")
    if twisted and q != 2:
        raise InvalidCharacter("the sign-twisted kernel needs q = 2")
    params = WreathParams(n, r)
    gens = []
    if twisted:
        gens += [lift(p, params) for p in alternating_generators(r)]
    else:
        gens += [lift(p, params) for p in symmetric_generators(range(1, r + 1), r)]
    if r >= 2:
        gens.append(rho(1, params) * rho(2, params).inverse())
    if q < n:
        gens.append(rho(1, params) ** q)
    if twisted and r >= 2:
        gens.append(tau(1, 2, params) * rho(1, params))
    spec_id = spec_id or f"sumker{q}{'t' if twisted else ''}"
    return SubgroupSpec(spec_id, n, Family("SumKernel", q, twisted), gens, expected_index, note, r)


def build_diagonal_residue(n, r, q, spec_id=None, expected_index=None, note=""):
    """{(f, pi): f mod q constant} for a prime q | n with gcd(q, r) = 1."""
    if not _prime_divisor_check(n, q) or gcd(q, r) != 1:
        raise InvalidParameters(f"need prime q | n with gcd(q, r) = 1 (n={n}, r={r}, q={q})")
    params = WreathParams(n, r)
    gens = [lift(p, params) for p in symmetric_generators(range(1, r + 1), r)]
    diag = rho(1, params)
    for i in range(2, r + 1):
        diag = diag * rho(i, params)
    gens.append(diag)
    if q < n:
        gens.append(rho(1, params) ** q)
    spec_id = spec_id or f"diag{q}"
    return SubgroupSpec(spec_id, n, Family("DiagonalResidue", q), gens, expected_index, note, r)


def point_stabilizer_spec(n, r, spec_id="stab1"):
    """Stabilizer of the first root: rotations of blocks 2..r and S_{r-1} on them."""
    params = WreathParams(n, r)
    gens = [rho(i, params) for i in range(2, r + 1)] if n > 1 else []
    gens += [lift(p, params) for p in symmetric_generators(range(2, r + 1), r)]
    return SubgroupSpec(spec_id, n, Family("External"), gens, n * r, "stabilizer of point 1", r)


def reconstruct_catalog(n):
    """Structural reconstruction of the maximal-subgroup classes for n = 5, 6, 7."""
    from .dynatomic import nu
    r = 2 * nu(n) // n
    params = WreathParams(n, r)
    specs = []
    for name, gens, m_order in maximal_sr_classes(r):
        idx = factorial(r) // m_order
        specs.append(build_pullback(n, r, gens, f"pullback-{name}", idx, f"preimage of {name} < S{r}"))
    for q, _ in factorize(n):
        specs.append(build_sum_kernel(n, r, q, False, expected_index=q,
                                      note=f"kernel of sum(f) mod {q}"))
        if q == 2:
            specs.append(build_sum_kernel(n, r, 2, True, expected_index=2,
                                          note="kernel of sum(f) + sgn(pi) mod 2"))
        if gcd(q, r) == 1:
            specs.append(build_diagonal_residue(n, r, q, expected_index=q ** (r - 1),
                                                note=f"f constant mod {q}"))
    specs.sort(key=lambda s: (-s.expected_index, s.id))
    order = REFERENCE_ORDER.get(n)
    if order is not None:
        by_name = {s.id: s for s in specs}
        specs = [by_name[name] for name in order]
    for k, s in enumerate(specs, 1):
        s.note = f"{s.id}: {s.note}"
        s.id = f"M{k}"
    status = "paper-verified" if n in REFERENCE_ORDER else "reconstructed"
    return Catalog(n, specs, status)


# Column order of the published ramification tables.  Equal-index classes are
# told apart by their ramification data, not by index.
REFERENCE_ORDER = {
    5: ["diag5", "pullback-S2wrS3", "pullback-S4xS2", "pullback-S3wrS2",
        "pullback-S5xS1", "pullback-PGL(2,5)", "sumker5", "pullback-A6"],
    6: ["pullback-AGL(2,3)", "pullback-S3wrS3", "diag2", "pullback-S5xS4",
        "pullback-S6xS3", "pullback-S7xS2", "pullback-S8xS1", "sumker3",
        "sumker2t", "pullback-A9", "sumker2"],
}


# ---------------------------------------------------------------------------
# file format


def dumps(catalog):
    lines = [f"catalog n={catalog.n} status={catalog.status}"]
    for s in catalog.specs:
        head = f"subgroup id={s.id} family={s.family}"
        if s.expected_index is not None:
            head += f" index={s.expected_index}"
        if s.note:
            head += " note=" + shlex.quote(s.note)
        lines.append(head)
        if not s.generators:
            lines.append(f"  r={s.r}")
        for g in s.generators:
            lines.append("  " + str(g))
    return "\n".join(lines) + "\n"


def save(catalog, path):
    Path(path).write_text(dumps(catalog), encoding="utf-8")


def loads(text, validate_specs=True):
    n = status = None
    specs = []
    current = None

    def finish():
        if current is not None:
            specs.append(SubgroupSpec(current["id"], n, current["family"], current["gens"],
                                      current["index"], current["note"], current["r"]))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line[0].isspace():
            line = line.split("#", 1)[0].rstrip()
            if current is None:
                raise ParseError("generator line outside a subgroup block", lineno)
            body = line.strip()
            if body.startswith("r="):
                current["r"] = int(body[2:])
                continue
            try:
                current["gens"].append(WreathElement.parse(body, n))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        fields = dict(tok.split("=", 1) for tok in tokens[1:] if "=" in tok)
        if tokens[0] == "catalog":
            if n is not None:
                raise ParseError("duplicate catalog header", lineno)
            try:
                n = int(fields["n"])
            except (KeyError, ValueError):
                raise ParseError("catalog header needs n=<int>", lineno) from None
            status = fields.get("status", "external")
        elif tokens[0] == "subgroup":
            if n is None:
                raise ParseError("subgroup before catalog header", lineno)
            finish()
            if "id" not in fields or "family" not in fields:
                raise ParseError("subgroup line needs id= and family=", lineno)
            try:
                family = Family.parse(fields["family"])
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
            index = fields.get("index")
            current = {"id": fields["id"], "family": family, "gens": [], "note": fields.get("note", ""),
                       "index": int(index) if index not in (None, "") else None, "r": None}
        else:
            raise ParseError(f"unexpected keyword {tokens[0]!r}", lineno)
    finish()
    if n is None:
        raise ParseError("missing catalog header")
    try:
        catalog = Catalog(n, specs, status)
    except ValidationError:
        raise
    if validate_specs:
        for s in catalog.specs:
            report = validate(s, s.params)
            if not report.ok:
                raise ValidationError(f"spec {s.id}: {report.failures()}")
    return catalog


def load(path, validate_specs=True):
    return loads(Path(path).read_text(encoding="utf-8"), validate_specs)


def bundled_path(n):
    return resources.files("dyngal") / "data" / f"n{n}.cat"


def load_bundled(n, validate_specs=True):
    path = bundled_path(n)
    if not path.is_file():
        raise FileNotFoundError(f"no bundled catalog for n={n}")
    return loads(path.read_text(encoding="utf-8"), validate_specs)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    spec_id: str
    checks: list = field(default_factory=list)   # (name, ok, detail)
    index: int | None = None

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def validate(spec, params=None):
    """Checks: generators commute with sigma, index matches, subgroup proper and nontrivial."""
    params = params or spec.params
    report = ValidationReport(spec.id)
    s = sigma(params)
    bad = []
    for g in spec.generators:
        if g.n != params.n or g.r != params.r:
            bad.append(str(g))
            continue
        p = g.to_perm()
        if p * s != s * p:
            bad.append(str(g))
    report.checks.append(("commutes-with-sigma", not bad, ", ".join(bad) or "ok"))
    if bad:
        return report
    order = spec.order()
    index = params.order // order
    report.index = index
    if spec.expected_index is not None:
        report.checks.append(("index", index == spec.expected_index,
                              f"computed {index}, expected {spec.expected_index}"))
    report.checks.append(("proper", index > 1, f"index {index}"))
    report.checks.append(("nontrivial", order > 1, f"order {order}"))
    return report


def validate_raw_generators(perms, params):
    """Validation for specs given as raw permutations (e.g. a stray transposition)."""
    s = sigma(params)
    bad = [str(p) for p in perms if p * s != s * p]
    return ValidationReport("raw", [("commutes-with-sigma", not bad, ", ".join(bad) or "ok")])


def conjugated(spec, by):
    """Copy of ``spec`` with every generator conjugated by the wreath element ``by``."""
    inv = by.inverse()
    gens = [inv * g * by for g in spec.generators]
    return SubgroupSpec(spec.id, spec.n, spec.family, gens, spec.expected_index, spec.note, spec.r)


__all__ = [
    "Family", "SubgroupSpec", "Catalog", "build_pullback", "build_sum_kernel",
    "build_diagonal_residue", "point_stabilizer_spec", "reconstruct_catalog", "maximal_sr_classes",
    "load", "loads", "save", "dumps", "load_bundled", "validate", "ValidationReport", "conjugated",
    "REFERENCE_ORDER", "bundled_path",
]
