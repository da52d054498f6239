"""Command-line front end: ``dyngal <subcommand> ...``.

Exit codes: 0 success, 1 validation failure or mismatch, 2 usage error.
Results go to stdout as JSON (or text with ``--table``); errors go to stderr
as a JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import DyngalError, ParseError, ValidationError

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int | None = None
    catalog: str | None = None
    coset_limit: int = 10_000
    budget: int = 10**7
    primes: int = 100
    cache_dir: str | None = None
    table: bool = False
    threads: int = 1

    def __post_init__(self):
        for name in ("coset_limit", "budget", "primes", "threads"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.catalog is not None and not Path(self.catalog).is_file():
            raise UsageError(f"catalog file not found: {self.catalog}")

    def digest(self):
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--c -7/4" through as a value
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise UsageError(message)


def expected_values():
    text = (resources.files("dyngal") / "data" / "expected.json").read_text(encoding="utf-8")
    return json.loads(text)


def _emit(payload, cfg):
    payload = {"version": __version__, "schema": SCHEMA_VERSION, "config": cfg.digest(), **payload}
    print(json.dumps(payload, sort_keys=True, indent=2))


def _fail(kind, message, code):
    print(json.dumps({"error": kind, "message": message}, sort_keys=True), file=sys.stderr)
    return code


def _parse_c(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _catalog(cfg):
    from .catalog import load, load_bundled
    if cfg.catalog:
        return load(cfg.catalog)
    if cfg.n is None:
        raise UsageError("need --n or --catalog")
    try:
        return load_bundled(cfg.n)
    except FileNotFoundError:
        raise UsageError(f"no bundled catalog for n={cfg.n}; pass --catalog") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_phi(args, cfg):
    from .dynatomic import build, place_classes, specialize
    inst = build(cfg.n)
    out = {"n": cfg.n, "D": inst.D, "r": inst.r,
           "places": [{"class": pc.label, "multiplicity": pc.multiplicity} for pc in place_classes(cfg.n)]}
    if args.c is not None:
        spec = specialize(inst, _parse_c(args.c))
        out["c"] = str(spec.c)
        out["specialization"] = [str(v) for v in spec.poly]
        out["squarefree"] = spec.squarefree
    else:
        out["coefficients"] = inst.coefficients_json()
    _emit(out, cfg)
    return 0


def cmd_group_info(args, cfg):
    from .wreath import WreathParams, wreath_group
    params = WreathParams.for_period(cfg.n)
    t0 = time.perf_counter()
    order = wreath_group(params).order()
    elapsed = time.perf_counter() - t0
    out = {"n": cfg.n, "r": params.r, "D": params.D, "order": str(order),
           "formula_order": str(params.order), "agrees": order == params.order}
    if args.timing:
        out["seconds"] = round(elapsed, 3)
    _emit(out, cfg)
    return 0 if order == params.order else 1


def cmd_catalog_verify(args, cfg):
    from .catalog import loads, validate
    if cfg.catalog:
        text = Path(cfg.catalog).read_text(encoding="utf-8")
    else:
        from .catalog import bundled_path
        if cfg.n is None:
            raise UsageError("need --file or --n")
        path = bundled_path(cfg.n)
        if not path.is_file():
            raise UsageError(f"no bundled catalog for n={cfg.n}")
        text = path.read_text(encoding="utf-8")
    catalog = loads(text, validate_specs=False)
    reports = [validate(s) for s in catalog]
    ok = all(r.ok for r in reports)
    _emit({"n": catalog.n, "status": catalog.status, "count": len(catalog), "ok": ok,
           "indices": [str(r.index) for r in reports],
           "specs": [{"id": r.spec_id, "ok": r.ok, "index": str(r.index),
                      "checks": [{"name": nm, "ok": good, "detail": det} for nm, good, det in r.checks]}
                     for r in reports]}, cfg)
    return 0 if ok else 1


def cmd_genus(args, cfg):
    from .genus import genus_of, genus_survey, inertia_system, render_table
    catalog = _catalog(cfg)
    system = inertia_system(catalog.n)
    if args.subgroup:
        try:
            reports = [genus_of(catalog.get(args.subgroup), system, cfg.coset_limit)]
        except KeyError:
            raise UsageError(f"no subgroup {args.subgroup!r} in catalog") from None
    else:
        reports = genus_survey(catalog, system, cfg.coset_limit, cfg.threads)
    if cfg.table:
        print(render_table(reports, weighted=not args.unweighted))
        return 0
    _emit({"n": catalog.n,
           "inertia": [{"class": e.place.label, "generator": str(e.generator), "name": e.name,
                        "multiplicity": e.multiplicity} for e in system.entries],
           "reports": [r.as_dict() for r in reports]}, cfg)
    return 0


def cmd_bounds(args, cfg):
    from .bounds import genus_lower_bound
    catalog = _catalog(cfg)
    reports = [genus_lower_bound(s, s.params, args.experimental_even) for s in catalog]
    minimum = min(r.lower_bound for r in reports) if reports else None
    if cfg.table:
        for r in reports:
            print(f"{r.subgroup_id:>6} index={r.index} bound={r.lower_bound}")
        print(f"minimum {minimum}")
        return 0
    _emit({"n": catalog.n, "experimental_even": args.experimental_even,
           "reports": [r.as_dict() for r in reports], "minimum": minimum}, cfg)
    return 0


def cmd_density(args, cfg):
    from .density import density_T
    res = density_T(cfg.n)
    if cfg.table:
        print(f"n={cfg.n}  {res.density}  ~ {res.decimal}")
        return 0
    _emit(res.as_dict(), cfg)
    return 0


def _pattern_sets(catalog, cfg, method):
    from .sieve import catalog_pattern_sets
    return catalog_pattern_sets(catalog, cfg.budget, method, cfg.cache_dir, True, cfg.threads)


def cmd_sieve(args, cfg):
    from .sieve import certify, scan
    catalog = _catalog(cfg)
    sets = _pattern_sets(catalog, cfg, args.method)
    if args.sieve_cmd == "certify":
        verdict = certify(_parse_c(args.c), catalog.n, catalog, cfg.primes, sets)
        _emit({"n": catalog.n, **verdict.as_dict()}, cfg)
        return 0
    report = scan(args.height, catalog.n, catalog, cfg.primes, sets, cfg.threads)
    _emit(report.summary(), cfg)
    return 0


def reproduce(n, cfg, log=None, sieve=True):
    """Recompute the headline values for ``n`` and compare with the embedded table.

    Returns a list of (check, ok, detail).
    """
    from .bounds import lambda_set, minimum_bound, theta_set
    from .catalog import load_bundled
    from .density import density_T
    from .dynatomic import build, place_classes
    from .genus import compute_e_n, genus_survey, inertia_system, s_of_p
    from .sieve import catalog_pattern_sets, scan
    from .wreath import WreathParams, gamma_j, rho, tau, wreath_group

    exp = expected_values()
    key = str(n)
    checks = []

    def check(name, got, want):
        checks.append((name, got == want, f"got {got}, expected {want}"))
        if log:
            log(f"{'ok  ' if got == want else 'FAIL'} {name}")

    params = WreathParams.for_period(n)
    if key in exp["degrees"]:
        inst = build(n)
        check("degree", {"D": inst.D, "r": inst.r}, exp["degrees"][key])
    if key in exp["multiplicities"]:
        got = {str(pc.d): pc.multiplicity for pc in place_classes(n) if pc.tag == "d"}
        check("multiplicities", got, exp["multiplicities"][key])
    if key in exp["group_orders"]:
        check("group order", str(wreath_group(params).order()), exp["group_orders"][key])
    catalog = None
    if key in exp["class_counts"]:
        catalog = load_bundled(n)
        check("class count", len(catalog), exp["class_counts"][key])
    if key in exp["indices"]:
        check("indices", sorted((s.index() for s in catalog), reverse=True), exp["indices"][key])
    if key in exp["s_of_p"]:
        e = exp["s_of_p"][key]
        check("e_n", compute_e_n(n), e["e_n"])
        check("S(p) gamma_j", [s_of_p(gamma_j(j, params), params) for j in range(len(e["gamma"]))],
              e["gamma"])
        b0 = (rho(1, params) * rho(2, params)) ** (n // 2)
        check("S(p) B0/B1", [s_of_p(b0, params), s_of_p(tau(1, 2, params), params)], e["B"])
    if key in exp["genera"]:
        reports = genus_survey(catalog, inertia_system(n), cfg.coset_limit, cfg.threads)
        by_id = {r.subgroup_id: r for r in reports}
        table = exp["tables"][key]
        got_rows = sorted((r.index, tuple(r.contributions if table["weighted"] else r.q), r.genus)
                          for r in reports)
        want_rows = sorted((i, tuple(col), g) for i, col, g in
                           zip(exp["indices"][key], table["columns"], exp["genera"][key]))
        check("genus table rows", got_rows, want_rows)
        check("genera by catalog id", [by_id[f"M{k}"].genus for k in range(1, len(reports) + 1)],
              exp["genera"][key])
    if key in exp["witness_sets"]:
        w = exp["witness_sets"][key]
        check("theta/lambda sizes", {"theta": len(theta_set(params)), "lambda": len(lambda_set(params))}, w)
    if key in exp["min_bounds"] and catalog is not None:
        check("minimum genus bound", minimum_bound(catalog)[0], exp["min_bounds"][key])
    if key in exp["densities"]:
        d = density_T(n)
        want = exp["densities"][key]
        if "fraction" in want:
            check("density fraction", f"{d.density.numerator}/{d.density.denominator}", want["fraction"])
        check("density decimal", d.decimal, want["decimal"])
    if key in exp["exceptional"] and sieve:
        e = exp["exceptional"][key]
        sets = catalog_pattern_sets(catalog, cfg.budget, "auto", cfg.cache_dir, True, cfg.threads)
        rep = scan(e["height"], n, catalog, cfg.primes, sets, cfg.threads)
        got = sorted(rep.candidates + rep.discriminant_zero)
        check("exceptional candidates", got, sorted(Fraction(v) for v in e["values"]))
    return checks


def cmd_reproduce(args, cfg):
    log = (lambda m: print(m, file=sys.stderr)) if args.verbose else None
    checks = reproduce(cfg.n, cfg, log, sieve=not args.skip_sieve)
    ok = all(good for _, good, _ in checks)
    _emit({"n": cfg.n, "ok": ok,
           "checks": [{"name": nm, "ok": good, "detail": det} for nm, good, det in checks]}, cfg)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--table", action="store_true")
    common.add_argument("--coset-limit", type=int, default=10_000)
    common.add_argument("--budget", type=int, default=10**7)

    p = _Parser(prog="dyngal", description="Galois groups of dynatomic polynomials of x^2 + t.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("phi", parents=[common], help="dynatomic polynomial data")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--c", default=None, help="specialize at a rational c")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("group-info", parents=[common], help="order of W via Schreier-Sims")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_group_info)

    s = sub.add_parser("catalog", help="catalog tools")
    csub = s.add_subparsers(dest="catalog_cmd", required=True, parser_class=_Parser)
    v = csub.add_parser("verify", parents=[common], help="validate a catalog file")
    v.add_argument("--file", dest="catalog", default=None)
    v.add_argument("--n", type=int, default=None, help="use the bundled catalog for n")
    v.set_defaults(func=cmd_catalog_verify)

    s = sub.add_parser("genus", parents=[common], help="exact genera of fixed fields")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--catalog", default=None)
    s.add_argument("--subgroup", default=None)
    s.add_argument("--unweighted", action="store_true", help="table shows unweighted sums")
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("bounds", parents=[common], help="genus lower bounds")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--catalog", default=None)
    s.add_argument("--experimental-even", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("density", parents=[common], help="exact prime densities")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("sieve", help="Frobenius-pattern sieve")
    ssub = s.add_subparsers(dest="sieve_cmd", required=True, parser_class=_Parser)
    for name in ("certify", "scan"):
        t = ssub.add_parser(name, parents=[common])
        t.add_argument("--n", type=int, default=None)
        t.add_argument("--catalog", default=None)
        t.add_argument("--primes", type=int, default=100)
        t.add_argument("--method", choices=["auto", "enumerated", "structural"], default="auto")
        if name == "certify":
            t.add_argument("--c", required=True)
        else:
            t.add_argument("--height", type=int, required=True)
        t.set_defaults(func=cmd_sieve)

    s = sub.add_parser("reproduce-paper", parents=[common], help="recompute and diff headline values")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--primes", type=int, default=100)
    s.add_argument("--skip-sieve", action="store_true")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_reproduce)
    return p


def _config(args):
    return RunConfig(
        n=getattr(args, "n", None),
        catalog=getattr(args, "catalog", None),
        coset_limit=getattr(args, "coset_limit", 10_000),
        budget=getattr(args, "budget", 10**7),
        primes=getattr(args, "primes", 100),
        cache_dir=getattr(args, "cache_dir", None),
        table=getattr(args, "table", False),
        threads=getattr(args, "threads", 1),
    )


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        if cfg.n is not None and cfg.n < 1:
            raise UsageError("--n must be positive")
        return args.func(args, cfg)
    except UsageError as exc:
        return _fail("UsageError", str(exc), 2)
    except (ParseError, ValidationError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    except DyngalError as exc:
        return _fail(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
