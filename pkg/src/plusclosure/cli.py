"""Command-line front end.

Exit codes: 0 all requested checks pass (or a query was answered), 1 some
check failed, 2 usage or domain error, 3 a basis computation hit its work
limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__
from .arith import as_modulus
from .groebner import DEFAULT_PAIR_LIMIT, GroebnerResourceError, IdealPresentation, buchberger
from .poly import MonomialOrder, ParseError, Ring
from .separable import (
    WitnessError,
    build_extension,
    parse_witness,
    perturb_witness,
    random_witness,
    verify_separability,
    verify_u0_identity,
)
from .suite import (
    DEFAULT_FROBENIUS_PRIMES,
    DEFAULT_PRIMES,
    DomainError,
    SuiteReport,
    check_cubic_char2,
    check_frobenius_case,
    check_lemma_colon,
    check_lemma_det,
    check_lemma_det_sweep,
    check_lemma_general,
    check_separable_example,
    check_theorem_plus,
    primes_one_mod_three,
    primes_two_mod_three,
)

TOOL = "plusclosure"
DEFAULT_QS = (2, 3, 4, 5, 8, 9)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=default if suppress else False, help="emit a JSON report")
    parser.add_argument("--pair-limit", type=int, default=default if suppress else DEFAULT_PAIR_LIMIT, help="Groebner pair budget")
    parser.add_argument("--seed", type=int, default=default if suppress else 0, help="seed for randomized runs")
    parser.add_argument("--timings", action="store_true", default=default if suppress else False,
                        help="include measured elapsed_ms in JSON (otherwise 0 for reproducible output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description="Frobenius and plus closure computations over F_p.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run closure checks")
    vsub = verify.add_subparsers(dest="check", required=True)

    def leaf(parent, name, **kw):
        p = parent.add_parser(name, **kw)
        _add_common(p, suppress=True)
        return p

    p = leaf(vsub, "lemma-det", help="binomial determinant identity")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--amax", type=int, default=6)
    p.add_argument("--p", type=int)

    for name in ("lemma-general", "lemma-colon", "theorem-plus"):
        p = leaf(vsub, name)
        p.add_argument("--p", type=int)
        p.add_argument("--pmax", type=int)

    p = leaf(vsub, "frobenius-case")
    p.add_argument("--p", type=int)
    p.add_argument("--emax", type=int, default=6)

    p = leaf(vsub, "separable-example")
    p.add_argument("--q", type=int)

    p = leaf(vsub, "separable-random", help="random witnesses through the extension construction")
    p.add_argument("--count", type=int, default=100)

    leaf(vsub, "cubic-char2")

    p = leaf(vsub, "all")
    p.add_argument("--pmax", type=int)
    p.add_argument("--emax", type=int, default=6)

    p = leaf(sub, "gb", help="reduced Groebner basis of an ideal file")
    p.add_argument("--vars", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    p.add_argument("--quotient", action="append", default=[])

    p = leaf(sub, "member", help="ideal membership query")
    p.add_argument("--vars", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("--quotient", action="append", default=[])
    p.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])

    witness = sub.add_parser("witness", help="Frobenius witness pipeline")
    wsub = witness.add_subparsers(dest="action", required=True)
    p = leaf(wsub, "verify")
    p.add_argument("--file", required=True)
    return parser


def read_ideal_file(path: str, ring: Ring) -> list:
    gens = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                gens.append(ring.parse(line))
    return gens


def _primes(args, default) -> list[int]:
    if args.p is not None and args.pmax is not None:
        raise UsageError("give either --p or --pmax, not both")
    if args.p is not None:
        return [args.p]
    if args.pmax is not None:
        return primes_one_mod_three(args.pmax)
    return list(default)


def _separable_random(count: int, seed: int) -> SuiteReport:
    start = time.perf_counter()
    rng = random.Random(seed)
    valid = perturbed = 0
    failures = []
    for i in range(count):
        p = rng.choice((2, 3, 5))
        q = p ** rng.choice((1, 2))
        n = rng.randint(0, 3)
        w = random_witness(rng, p, q, n)
        E = build_extension(w)
        ok = verify_separability(E) and verify_u0_identity(E)
        rejected = all(not verify_u0_identity(build_extension(perturb_witness(w, j))) for j in range(n + 1))
        valid += ok
        perturbed += rejected
        if not (ok and rejected):
            failures.append({"index": i, "p": p, "q": q, "n": n, "valid_ok": ok, "perturbations_rejected": rejected})
    details = {"count": count, "valid_verified": valid, "perturbations_rejected": perturbed,
               "failures": failures, "all_ok": not failures}
    return SuiteReport("separable-random", {"count": count, "seed": seed}, not failures, details,
                       (time.perf_counter() - start) * 1000)


def _witness_report(path: str) -> SuiteReport:
    start = time.perf_counter()
    with open(path) as fh:
        w = parse_witness(fh.read())
    E = build_extension(w)
    details = {
        "p": w.ring.p,
        "q": w.q,
        "n": w.n,
        "u_vars": list(E.u_vars),
        "relations": [str(r) for r in E.relations],
        "u0_numerator": str(E.u0_numerator),
        "u0_denominator": str(E.u0_denominator),
        "separable": verify_separability(E),
        "u0_identity": verify_u0_identity(E),
    }
    return SuiteReport("witness-verify", {"file": path}, details["separable"] and details["u0_identity"], details,
                       (time.perf_counter() - start) * 1000)


def _run_verify(args) -> list[SuiteReport]:
    lim = args.pair_limit
    c = args.check
    if c == "lemma-det":
        single = [v is not None for v in (args.n, args.a, args.k)]
        if args.sweep and any(single):
            raise UsageError("--sweep cannot be combined with --n/--a/--k")
        if args.sweep:
            return [check_lemma_det_sweep(args.nmax, args.kmax, args.amax, args.p)]
        if not all(single):
            raise UsageError("lemma-det needs --n, --a and --k (or --sweep)")
        return [check_lemma_det(args.n, args.a, args.k, args.p)]
    if c == "lemma-general":
        return [check_lemma_general(p, lim) for p in _primes(args, DEFAULT_PRIMES)]
    if c == "lemma-colon":
        return [check_lemma_colon(p, lim) for p in _primes(args, DEFAULT_PRIMES)]
    if c == "theorem-plus":
        return [check_theorem_plus(p, lim) for p in _primes(args, DEFAULT_PRIMES)]
    if c == "frobenius-case":
        primes = [args.p] if args.p is not None else list(DEFAULT_FROBENIUS_PRIMES)
        return [check_frobenius_case(p, args.emax, lim) for p in primes]
    if c == "separable-example":
        qs = [args.q] if args.q is not None else list(DEFAULT_QS)
        for q in qs:
            if q < 2:
                raise DomainError(f"q={q} is not a prime power")
        return [check_separable_example(q) for q in qs]
    if c == "separable-random":
        return [_separable_random(args.count, args.seed)]
    if c == "cubic-char2":
        return [check_cubic_char2(lim)]
    if c == "all":
        primes = primes_one_mod_three(args.pmax) if args.pmax is not None else list(DEFAULT_PRIMES)
        fprimes = primes_two_mod_three(args.pmax) if args.pmax is not None else list(DEFAULT_FROBENIUS_PRIMES)
        reports = [check_lemma_det_sweep()]
        for p in primes:
            reports += [check_lemma_general(p, lim), check_lemma_colon(p, lim), check_theorem_plus(p, lim)]
        reports += [check_frobenius_case(p, args.emax, lim) for p in fprimes]
        reports += [check_separable_example(q) for q in DEFAULT_QS]
        reports += [check_cubic_char2(lim), _separable_random(100, args.seed)]
        return reports
    raise UsageError(f"unknown check {c}")


def _sort_key(r: SuiteReport):
    items = sorted(r.params.items())
    return (r.check_name, tuple((k, (0, v, "") if isinstance(v, int) else (1, 0, str(v))) for k, v in items))


def _ring_and_ideal(args):
    ring = Ring(args.vars, as_modulus(args.p))
    gens = read_ideal_file(args.ideal, ring)
    rels = [ring.parse(q) for q in args.quotient]
    return ring, IdealPresentation(tuple(gens), tuple(rels), ring)


def _run_gb(args) -> tuple[list[SuiteReport], list[str]]:
    start = time.perf_counter()
    ring, I = _ring_and_ideal(args)
    gb = buchberger(I, MonomialOrder(args.order), args.pair_limit)
    basis = [str(g) if args.order == "grevlex" else _fmt(g, args.order) for g in gb]
    rep = SuiteReport("gb", {"vars": list(ring.vars), "p": ring.p, "order": args.order}, True,
                      {"basis": basis, "size": len(basis)}, (time.perf_counter() - start) * 1000)
    return [rep], basis


def _fmt(g, order):
    from .poly import format_poly

    return format_poly(g, MonomialOrder(order))


def _run_member(args) -> tuple[list[SuiteReport], list[str]]:
    start = time.perf_counter()
    ring, I = _ring_and_ideal(args)
    f = ring.parse(args.elem)
    gb = buchberger(I, MonomialOrder(args.order), args.pair_limit)
    nf = gb.normal_form(f)
    answer = not nf
    rep = SuiteReport("member", {"vars": list(ring.vars), "p": ring.p, "elem": args.elem}, True,
                      {"informational": {"member": answer, "normal_form": str(nf)}},
                      (time.perf_counter() - start) * 1000)
    return [rep], ["true" if answer else "false"]


def _emit(reports: list[SuiteReport], lines: list[str] | None, args, out):
    if args.json:
        checks = []
        for r in reports:
            obj = r.to_json()
            if not args.timings:
                obj["elapsed_ms"] = 0
            checks.append(obj)
        doc = {"tool": TOOL, "version": __version__, "checks": checks}
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
        return
    if lines is not None:
        for line in lines:
            out.write(line + "\n")
        return
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status} {r.check_name} {params} ({r.elapsed_ms:.1f} ms)\n")


def _describe(args) -> str:
    parts = [args.command]
    for attr in ("check", "action"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    params = {k: v for k, v in vars(args).items()
              if k in ("p", "q", "pmax", "emax", "n", "a", "k", "file", "elem", "ideal") and v is not None}
    return " ".join(parts) + (f" {params}" if params else "")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    lines = None
    try:
        if args.pair_limit is not None and args.pair_limit < 1:
            raise UsageError("--pair-limit must be positive")
        if args.command == "verify":
            reports = sorted(_run_verify(args), key=_sort_key)
        elif args.command == "gb":
            reports, lines = _run_gb(args)
        elif args.command == "member":
            reports, lines = _run_member(args)
        else:
            reports = [_witness_report(args.file)]
    except UsageError as exc:
        err.write(f"{TOOL}: usage error in {_describe(args)}: {exc}\n")
        return EXIT_USAGE
    except GroebnerResourceError as exc:
        err.write(f"{TOOL}: resource limit in {_describe(args)}: {exc}\n")
        return EXIT_RESOURCE
    except (DomainError, ParseError, WitnessError, ValueError, KeyError, OSError) as exc:
        err.write(f"{TOOL}: error in {_describe(args)}: {exc}\n")
        return EXIT_USAGE
    _emit(reports, lines, args, out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        err.write(f"{TOOL}: check {r.check_name} failed with {r.params}\n")
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
