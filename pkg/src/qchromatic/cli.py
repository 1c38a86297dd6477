"""Command-line front end.

Exit codes: 0 success, 2 usage or parameter error, 3 budget exceeded,
4 a checked claim failed or an internal cross-check disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__, certify
from .claims import verify_appendix_claims, verify_extremal_claims
from .core import enumerate_types
from .designs import FAMILIES, build_family, design_upper_bound, separation_profile
from .errors import BudgetError, InvariantError, ParameterError, QChromaticError
from .families import g5
from .oracle import DEFAULT_VERTEX_BUDGET, brute_spectrum, edge_array
from .representation import (
    g5_min_closed_form,
    natural_rep_check,
    rep_from_family,
    verify_flat_orthogonal,
    verify_subgraph_theorems,
)
from .spectrum import CayleySpec, duality_check, full_spectrum

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_FALSIFIED = 4


class Falsified(QChromaticError):
    def __init__(self, message: str, document: dict | None = None):
        super().__init__(message)
        self.document = document


# ---------------------------------------------------------------------------
# Output helpers


def _parse_type(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"generator type must be comma-separated integers, got {text!r}")
    if any(x < 0 for x in parts):
        raise argparse.ArgumentTypeError(f"negative entry in generator type {text!r}")
    return parts


def _emit(args, document, markdown: str | None = None) -> None:
    """Write the document to --out (``-`` for stdout)."""
    if args.out is None:
        return
    if args.format == "md":
        text = markdown if markdown is not None else "```json\n" + json.dumps(document, indent=2, sort_keys=True) + "\n```\n"
    else:
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _say(args, line: str) -> None:
    stream = sys.stderr if args.out == "-" else sys.stdout
    print(line, file=stream)


# ---------------------------------------------------------------------------
# Commands


def cmd_spectrum(args) -> int:
    spec = CayleySpec.closed(args.p, args.n, args.gen)
    report = full_spectrum(spec, args.budget or 10**7)
    _say(args, f"graph: {spec.label()}")
    _say(args, f"lambda_max: {report.lambda_max}")
    _say(args, f"lambda_min: {report.lambda_min}")
    _say(args, f"bound: {report.bound}")
    md = (f"| graph | lambda_max | lambda_min | bound |\n|---|---|---|---|\n"
          f"| {spec.label()} | {report.lambda_max} | {report.lambda_min} | {report.bound} |\n")
    _emit(args, report.to_json(), md)
    return EXIT_OK


def cmd_design(args) -> int:
    d = build_family(args.family, args.parameter)
    k, lam, r, b = d.params
    prof = separation_profile(d)
    ub = design_upper_bound(d)
    _say(args, f"design: {args.family}({args.parameter}) on {d.n} points")
    _say(args, f"(n, k, lambda) = ({d.n}, {k}, {lam}); r = {r}; b = {b}; theta = {prof.theta}")
    _say(args, f"upper bound on chi_q(H({d.n},2)): {'none' if ub is None else ub.value}")
    doc = d.to_json()
    md = (f"| family | n | k | lambda | r | b | theta | upper |\n|---|---|---|---|---|---|---|---|\n"
          f"| {args.family}({args.parameter}) | {d.n} | {k} | {lam} | {r} | {b} | {prof.theta} | "
          f"{'-' if ub is None else ub.value} |\n")
    _emit(args, doc, md)
    return EXIT_OK


def cmd_represent(args) -> int:
    if args.family == "natural":
        if args.p is None or args.n is None:
            raise ParameterError("natural representation needs --p and --n")
        verdict = natural_rep_check(args.p, args.n, args.budget or certify.DEFAULT_SAMPLE_BUDGET,
                                    generators=args.gen or None)
        doc = verdict.to_json()
        _say(args, f"natural representation of Cay(Z_{args.p}^{args.n}, {doc['generators']}): "
                   f"{'orthogonal' if verdict.passed else 'NOT orthogonal'}")
        _say(args, f"edges checked: {verdict.edges_checked} ({'all' if verdict.exhaustive else 'sampled'})")
        _emit(args, doc)
        if not verdict.passed:
            raise Falsified("natural representation is not orthogonal", doc)
        return EXIT_OK
    if args.parameter is None:
        raise ParameterError(f"{args.family} needs a parameter")
    rep = rep_from_family(build_family(args.family, args.parameter))
    verdict = verify_flat_orthogonal(rep)
    doc = rep.to_json()
    doc["verification"] = verdict.to_json()
    if args.emit_matrix:
        doc["matrix"] = rep.matrix().tolist()
    _say(args, f"flat representation of H({rep.n},2): dimension {rep.dimension}, theta {rep.theta}, "
               f"{rep.b} blocks")
    _say(args, f"orthogonal on all {verdict.differences_checked} weight-2 differences: {verdict.passed}")
    _emit(args, doc)
    if not verdict.passed:
        raise Falsified("representation is not orthogonal", doc)
    return EXIT_OK


def cmd_certify(args) -> int:
    budget = args.budget or 10**7
    if args.target == "table1":
        bundle = certify.table1(families=tuple(args.family or certify.TABLE1_FAMILIES), l_max=args.l_max,
                                t_max=args.t_max, g4_primes=tuple(args.g4_p or (5,)), g4_l=args.g4_l,
                                type_budget=budget, oracle_limit=args.oracle_limit)
    elif args.target == "table2":
        bundle = certify.table2(paley_qmin=args.paley_qmin, paley_qmax=args.paley_qmax,
                                hadamard_tmax=args.hadamard_tmax, twin_qmax=args.twin_qmax,
                                menon_amax=args.menon_amax, menon_external=tuple(args.menon_external),
                                type_budget=budget, oracle_limit=args.oracle_limit)
    else:
        ns = args.n or list(range(args.n_min, args.n_max + 1))
        bundle = certify.table3(ns, type_budget=budget, oracle_limit=args.oracle_limit)
    md = certify.to_markdown(bundle)
    for row in bundle.rows:
        lo = "-" if row.lower is None else row.lower.value
        hi = "-" if row.upper is None else row.upper.value
        _say(args, f"{row.claim}: lower {lo}, upper {hi}, {row.verdict}")
    doc = bundle.to_json(timing=args.timing)
    _emit(args, doc, md)
    if not bundle.passed:
        raise Falsified(f"{bundle.target}: rows disagree with the expected values", doc)
    return EXIT_OK


def _l_range(args, lo: int) -> range:
    if args.l is not None:
        return range(args.l, args.l + 1)
    return range(max(lo, args.l_min), args.l_max + 1)


def cmd_verify(args) -> int:
    which = args.theorem
    verdicts: list = []
    if which in ("goal", "second-largest"):
        keys = ("largest_is_degree", "smallest_closed_form", "abs_le_smallest") if which == "goal" \
            else ("second_closed_form", "abs_le_second")
        for l in _l_range(args, 1 if which == "goal" else 3):
            v = verify_extremal_claims(l, args.engine)
            ok = all(v.checks[k] for k in keys)
            doc = v.to_json()
            doc["passed"] = ok
            verdicts.append(doc)
            if which == "goal":
                _say(args, f"l={l}: smallest {v.smallest} at {[list(t) for t in v.smallest_witnesses]}, "
                           f"{'pass' if ok else 'FAIL'}")
            else:
                _say(args, f"l={l}: second largest {v.second_largest} at "
                           f"{[list(t) for t in v.second_largest_witnesses]}, {'pass' if ok else 'FAIL'}")
    elif which == "appendix-claims":
        for l in _l_range(args, 1):
            v = verify_appendix_claims(l, args.engine if args.engine != "both" else "closed")
            verdicts.append(v.to_json())
            _say(args, f"l={l}: {'pass' if v.passed else 'FAIL'}; majorant tight for t0 <= 2: {v.equality_t0_le_2}")
    elif which == "g5-min":
        for l in _l_range(args, 2):
            spec = g5(l)
            report = full_spectrum(spec)
            closed = g5_min_closed_form(l)
            doc = {"l": l, "lambda_min": str(report.lambda_min), "closed_form": str(closed),
                   "bound": report.bound, "oracle_checked": False}
            ok = report.lambda_min == closed and report.bound == 3 * l
            if spec.order <= args.oracle_limit:
                ok = ok and brute_spectrum(spec).entries == report.entries
                doc["oracle_checked"] = True
            doc["passed"] = ok
            verdicts.append(doc)
            _say(args, f"l={l}: lambda_min {report.lambda_min} (closed form {closed}), bound {report.bound}, "
                       f"{'pass' if ok else 'FAIL'}")
    elif which == "duality":
        n = args.n if args.n is not None else 6
        types = list(enumerate_types(3, n))
        bad = []
        count = 0
        for i, s in enumerate(types):
            for t in types[i:]:
                lhs, rhs = duality_check(n, s, t)
                count += 1
                if lhs != rhs:
                    bad.append({"s": list(s), "t": list(t), "lhs": str(lhs), "rhs": str(rhs)})
        verdicts.append({"n": n, "pairs_checked": count, "passed": not bad, "counterexamples": bad})
        _say(args, f"n={n}: {count} type pairs, {'pass' if not bad else 'FAIL'}")
    elif which == "subgraph":
        if args.t is not None:
            v = verify_subgraph_theorems(t=args.t)
        else:
            v = verify_subgraph_theorems(l=args.l if args.l is not None else 2)
        verdicts.append(v.to_json())
        for b in v.bounds:
            _say(args, f"{b['graph']}: bound {b['spectral_bound']} (expected {b['expected']})")
        for h in v.homomorphisms:
            _say(args, f"{h['homomorphism']}: {'pass' if h['passed'] else 'FAIL'}")
        doc_ok = v.passed
        verdicts[-1]["passed"] = doc_ok
    passed = all(v["passed"] for v in verdicts)
    doc = {"theorem": which, "passed": passed, "verdicts": verdicts}
    _say(args, f"{which}: {len(verdicts)} verdict(s), {'pass' if passed else 'FAIL'}")
    _emit(args, doc)
    if not passed:
        raise Falsified(f"{which} failed", doc)
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = CayleySpec.closed(args.p, args.n, args.gen)
    budget = args.budget or DEFAULT_VERTEX_BUDGET
    brute = brute_spectrum(spec, budget)
    _say(args, f"graph: {spec.label()}")
    _say(args, f"lambda_max: {brute.lambda_max}")
    _say(args, f"lambda_min: {brute.lambda_min}")
    _say(args, f"bound: {brute.bound}")
    doc = brute.to_json()
    if args.edges:
        doc["edges"] = int(len(edge_array(spec, budget)))
        _say(args, f"edges: {doc['edges']}")
    if brute.certified:
        engine = full_spectrum(spec)
        agree = engine.entries == brute.entries
        doc["engine_agrees"] = agree
        _say(args, f"engine agrees with oracle: {agree}")
        _emit(args, doc)
        if not agree:
            raise Falsified("spectrum engine disagrees with the oracle", doc)
        return EXIT_OK
    _emit(args, doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None,
                   help="resource budget (type count, vertex count or sample size, per command)")
    p.add_argument("--out", default=None, help="write the document here; '-' for stdout")
    p.add_argument("--format", choices=("json", "md"), default="json")


def _gens(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--p", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--gen", type=_parse_type, action="append", required=required,
                   help="generator type as comma-separated counts; repeat for unions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qchromatic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="exact spectrum and spectral bound of a type-union Cayley graph")
    _gens(p)
    _common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("design", help="construct and verify a symmetric BIBD")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("parameter", type=int)
    _common(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("represent", help="build and verify a flat orthogonal representation")
    p.add_argument("family", choices=sorted(FAMILIES) + ["natural"])
    p.add_argument("parameter", type=int, nargs="?")
    _gens(p, required=False)
    p.add_argument("--emit-matrix", action="store_true", help="include all 2^n rows (n <= 20)")
    _common(p)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("certify", help="certificate bundle for a table")
    p.add_argument("target", choices=("table1", "table2", "table3"))
    p.add_argument("--family", action="append", choices=certify.TABLE1_FAMILIES)
    p.add_argument("--l-max", type=int, default=3)
    p.add_argument("--t-max", type=int, default=2)
    p.add_argument("--g4-p", type=int, action="append")
    p.add_argument("--g4-l", type=int, default=1)
    p.add_argument("--paley-qmin", type=int, default=7)
    p.add_argument("--paley-qmax", type=int, default=11)
    p.add_argument("--hadamard-tmax", type=int, default=2)
    p.add_argument("--twin-qmax", type=int, default=3)
    p.add_argument("--menon-amax", type=int, default=2)
    p.add_argument("--menon-external", type=int, action="append", default=None)
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--oracle-limit", type=int, default=certify.DEFAULT_ORACLE_LIMIT)
    p.add_argument("--timing", action="store_true", help="add per-row seconds (breaks byte reproducibility)")
    _common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="exhaustively check a theorem over a parameter range")
    p.add_argument("theorem", choices=("goal", "second-largest", "g5-min", "duality", "appendix-claims",
                                       "subgraph"))
    p.add_argument("--l", type=int)
    p.add_argument("--l-min", type=int, default=1)
    p.add_argument("--l-max", type=int, default=8)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--engine", choices=("convolution", "closed", "both"), default="both")
    p.add_argument("--oracle-limit", type=int, default=3**9)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force spectrum by direct summation")
    _gens(p)
    p.add_argument("--edges", action="store_true", help="also count edges")
    _common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "menon_external", "unset") is None:
        args.menon_external = [3]
    try:
        return args.func(args)
    except Falsified as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except InvariantError as exc:
        dump = {"error": str(exc), "details": {k: repr(v) for k, v in exc.details.items()}}
        print(json.dumps(dump, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_FALSIFIED
    except BudgetError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
