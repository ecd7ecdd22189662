"""Command-line driver.

Commands::

    heisenpoly order EXPR --algebra classical|q|qplane|borelA|borelB [--p P] [--central]
    heisenpoly verify TAG [--n N] [--p P] [--l L] [--m M] [--oracle]
    heisenpoly suite [--max-n N] [--max-p P] [--max-m M] [--json PATH]
    heisenpoly probe-epsilon [--n N]

Exit codes: 0 = no unexpected failures (the deliberate E2EPS counterexample
failing in its documented shape counts as expected), 1 = at least one
identity failed, 2 = usage or configuration error.

The suite's JSON report is deterministic except for the elapsed-time fields.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .exprio import ParseError, parse, print_poly
from .identities import (
    EMBEDDING_TAGS,
    TAGS,
    ParameterError,
    UnknownTagError,
    relations,
    suite_grid,
    verify,
    verify_embedding,
)
from .ncalg import borel_a, borel_b, heisenberg_classical, heisenberg_q, quantum_plane
from .realizations import diff, jackson, oracle_equal, qplane_fock

REPORT_NOTES = (
    "E5: right-hand exponent read as n+1 (the printed n-1 cannot hold at n=0)",
    "E33: summation bound read as n+1, matching E32 and star duality",
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _algebra_from_args(args) -> "object":
    if args.algebra != "classical":
        if args.p is not None:
            raise ValueError("--p applies to the classical algebra only")
        if args.central:
            raise ValueError("--central applies to the classical algebra only")
    if args.algebra == "classical":
        p = 1 if args.p is None else args.p
        if p < 1:
            raise ValueError("p must be >= 1")
        return heisenberg_classical(p, central="c" if args.central else "1")
    if args.algebra == "q":
        return heisenberg_q()
    if args.algebra == "qplane":
        return quantum_plane()
    if args.algebra == "borelA":
        return borel_a()
    return borel_b()


def _cmd_order(args) -> int:
    try:
        algebra = _algebra_from_args(args)
    except ValueError as exc:
        return _fail(str(exc))
    try:
        poly = parse(args.expr, algebra)
    except ParseError as exc:
        return _fail(str(exc))
    print(print_poly(poly))
    return 0


def _realization_for(tag: str, params: dict):
    kind = TAGS[tag].realization
    if kind == "diff":
        return diff(params.get("p", 1))
    if kind == "jackson":
        return jackson()
    if kind == "qplane-fock":
        return qplane_fock()
    return None


def _params_from_args(args) -> dict:
    params = {}
    for name in ("n", "p", "l", "m"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    return params


def _cmd_verify(args) -> int:
    tag = args.tag
    if tag not in TAGS:
        return _fail(f"unknown identity tag {tag!r}")
    params = _params_from_args(args)
    try:
        if tag in EMBEDDING_TAGS:
            if params:
                return _fail(f"{tag} takes no parameters")
            results = verify_embedding(tag)
            for result in results:
                print(f"{tag} relation {result.params['relation']}: {result.status}")
            return 0 if all(r.status == "pass" for r in results) else 1
        result = verify(tag, **params)
    except (ParameterError, UnknownTagError) as exc:
        return _fail(str(exc))

    outcome = result.outcome
    label = " ".join(f"{k}={v}" for k, v in result.params.items())
    if tag == "E2EPS":
        if outcome == "expected-fail":
            print(f"expected-fail: residual has {result.residual.term_count} epsilon-terms")
            return 0
        print(f"E2EPS {label}: {outcome} (residual {print_poly(result.residual)})")
        return 1
    print(f"{tag} {label}: {outcome} "
          f"(lhs_terms={result.lhs_terms} rhs_terms={result.rhs_terms} "
          f"steps={result.rewrite_steps} ms={result.elapsed_ms})")
    code = 0 if outcome == "pass" else 1
    if args.oracle:
        realization = _realization_for(tag, result.params)
        if realization is None:
            print("oracle: no matching realization")
        else:
            agree = all(
                oracle_equal(lhs, rhs, realization)
                for _, lhs, rhs in relations(tag, **result.params))
            print(f"oracle[{realization.name}]: {'pass' if agree else 'fail'}")
            if agree != (result.status == "pass"):
                code = 1
    return code


def _suite_rows(max_n: int, max_p: int, max_m: int):
    for tag in TAGS:
        for params in suite_grid(tag, max_n, max_p, max_m):
            yield verify(tag, **params)


def _cmd_suite(args) -> int:
    if args.max_n < 0 or args.max_p < 0 or args.max_m < 0:
        return _fail("suite bounds must be >= 0")
    started = time.perf_counter()
    rows = list(_suite_rows(args.max_n, args.max_p, args.max_m))
    total_ms = int(round((time.perf_counter() - started) * 1000))

    counts = {"pass": 0, "fail": 0, "expected-fail": 0}
    for row in rows:
        counts[row.outcome] += 1

    header = f"{'id':<8} {'params':<16} {'status':<14} {'lhs':>5} {'rhs':>5} {'steps':>8} {'ms':>6}"
    print(header)
    print("-" * len(header))
    for row in rows:
        label = ",".join(f"{k}={v}" for k, v in row.params.items())
        print(f"{row.id:<8} {label:<16} {row.outcome:<14} {row.lhs_terms:>5} "
              f"{row.rhs_terms:>5} {row.rewrite_steps:>8} {row.elapsed_ms:>6}")
    print("-" * len(header))
    print(f"pass={counts['pass']} fail={counts['fail']} "
          f"expected-fail={counts['expected-fail']} total_ms={total_ms}")
    for note in REPORT_NOTES:
        print(f"note: {note}")

    if args.json:
        report = {
            "version": __version__,
            "config": {
                "max_n": args.max_n,
                "max_p": args.max_p,
                "max_m": args.max_m,
                "notes": list(REPORT_NOTES),
            },
            "results": [_row_json(row) for row in rows],
            "summary": {
                "pass": counts["pass"],
                "fail": counts["fail"],
                "expected_fail": counts["expected-fail"],
                "total_ms": total_ms,
            },
        }
        try:
            with open(args.json, "w", encoding="utf-8") as handle:
                json.dump(report, handle, indent=2)
                handle.write("\n")
        except OSError as exc:
            return _fail(f"cannot write {args.json}: {exc}")
    return 0 if counts["fail"] == 0 else 1


def _row_json(row) -> dict:
    data = {
        "id": row.id,
        "params": row.params,
        "status": row.outcome,
        "lhs_terms": row.lhs_terms,
        "rhs_terms": row.rhs_terms,
        "rewrite_steps": row.rewrite_steps,
        "elapsed_ms": row.elapsed_ms,
    }
    if row.outcome != "pass":
        data["residual"] = print_poly(row.residual)
    return data


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisenpoly",
        description="Normal ordering and identity verification for Heisenberg algebras.")
    parser.add_argument("--version", action="version", version=f"heisenpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    order = sub.add_parser("order", help="normal-order an operator expression")
    order.add_argument("expr")
    order.add_argument("--algebra", required=True,
                       choices=["classical", "q", "qplane", "borelA", "borelB"])
    order.add_argument("--p", type=int, default=None, help="pair count (classical only)")
    order.add_argument("--central", action="store_true",
                       help="use the symbolic central element c (classical only)")

    ver = sub.add_parser("verify", help="verify one identity")
    ver.add_argument("tag")
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--p", type=int, default=None)
    ver.add_argument("--l", type=int, default=None)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--oracle", action="store_true",
                     help="also check through the matching realization")

    suite = sub.add_parser("suite", help="verify every identity over a parameter grid")
    suite.add_argument("--max-n", type=int, default=4, dest="max_n")
    suite.add_argument("--max-p", type=int, default=2, dest="max_p")
    suite.add_argument("--max-m", type=int, default=3, dest="max_m")
    suite.add_argument("--json", default=None, help="also write the report as JSON")

    probe = sub.add_parser("probe-epsilon",
                           help="run the E2EPS perturbation probe (expected failure)")
    probe.add_argument("--n", type=int, default=2)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "order":
        return _cmd_order(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "suite":
        return _cmd_suite(args)
    # probe-epsilon
    probe_args = argparse.Namespace(
        tag="E2EPS", n=args.n, p=None, l=None, m=None, oracle=False)
    return _cmd_verify(probe_args)


if __name__ == "__main__":
    sys.exit(main())
