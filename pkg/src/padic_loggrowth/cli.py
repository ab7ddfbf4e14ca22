"""Command-line front end.

Exit codes: 0 all checks pass, 1 a claimed inequality or estimate failed,
2 invalid input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable

from . import __version__
from .family import (DEFAULT_N_MAX, DEFAULT_TAIL, PaperClaimViolation, WitnessNotFound,
                     generic_samples, log_p, loggrowth_estimate, special_samples, theorem_report,
                     verify_generic_bounded, verify_generic_unbounded, verify_special_bounded,
                     verify_special_unbounded, worker_count)
from .nabla import MAX_DENSE_DEGREE, family_connection, residual, solve_horizontal
from .newton import p_sigma
from .padic import floor_mul, vp_int
from .series import FamilyParams, antiderivative, build_f, fraction_str, support_index
from .svg import convergence_svg, polygons_svg

EXIT_OK, EXIT_CLAIM, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime p")
    common.add_argument("--sigma", type=_rational, default=Fraction(1, 2), help='sigma as "a/b"')
    common.add_argument("--sigma-prime", type=_rational, default=Fraction(1, 4), help='sigma\' as "a/b"')
    common.add_argument("--rmax", type=int, default=40, help="number of support indices r")
    common.add_argument("--nmax", type=int, default=None, help="degree bound (verify, solve, loggrowth)")
    common.add_argument("--lambda", dest="lam", type=_rational, default=None, help="growth exponent to test")
    common.add_argument("--bound", type=int, default=5, help="divergence bound B for the unbounded checks")
    common.add_argument("--tolerance", type=float, default=0.05)
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--version-header", action="store_true",
                        help="include the generator version in JSON output")

    parser = argparse.ArgumentParser(prog="padic-loggrowth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("family", parents=[common], help="support table and coefficient valuations")
    sub.add_parser("verify", parents=[common], help="run every exact and numeric check")
    sub.add_parser("polygon", parents=[common], help="special and generic polygons")
    sub.add_parser("solve", parents=[common], help="dense horizontal sections of the connection")
    sub.add_parser("loggrowth", parents=[common], help="estimator convergence data")
    return parser


def _params(args) -> FamilyParams:
    try:
        return FamilyParams(args.p, args.sigma, args.sigma_prime, r_max=args.rmax, n_max=args.nmax)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _json(payload: dict, args) -> str:
    if args.version_header:
        payload = {"generator": f"padic_loggrowth {__version__}", **payload}
    return json.dumps(payload, indent=2) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, args) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def cmd_family(args) -> int:
    params = _params(args)
    if args.format == "svg":
        raise InputError("family has no svg output; use json or csv")
    p = params.p
    rows = []
    for r in range(params.r_max + 1):
        n = support_index(r, params)
        v = floor_mul(params.sigma_prime, r)
        n_g = p**r - 1
        rows.append({
            "r": r, "n": str(n), "a_valuation": v,
            "y_s_exponent": str(n + 1), "y_s_valuation": v - vp_int(n + 1, p),
            "y_g_n": str(n_g),
        })
    gauss = [-s.neg_valuation for s in generic_samples(params)]
    for row, g in zip(rows, gauss):
        row["y_g_gauss_valuation"] = g
    if args.format == "csv":
        header = list(rows[0])
        return _done(_csv(header, [[row[h] for h in header] for row in rows]), args)
    f = build_f(params)
    payload = {
        "params": params.to_record(),
        "support": rows,
        "f": f.to_record(),
        "y_s": antiderivative(f, p).to_record(),
    }
    return _done(_json(payload, args), args)


def cmd_verify(args) -> int:
    params = _params(args)
    report = theorem_report(params, r_max_estimator=params.r_max, tolerance=args.tolerance,
                            bound=args.bound, n_max=args.nmax, workers=worker_count())
    if args.format == "json":
        text = _json(report.to_record(), args)
    elif args.format == "csv":
        text = _csv(["check", "passed", "witness"],
                    [[c.name, "PASS" if c.passed else "FAIL", json.dumps(c.witness, sort_keys=True)]
                     for c in report.exact_checks])
    else:
        text = polygons_svg(report.special_polygon, report.generic_polygon)
    _done(text, args)
    for c in report.failures():
        print(f"FAIL {c.name}: {json.dumps(c.witness, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CLAIM


def cmd_polygon(args) -> int:
    params = _params(args)
    special, generic = p_sigma(1 - params.sigma), p_sigma(1 - params.sigma_prime)
    if args.format == "svg":
        return _done(polygons_svg(special, generic), args)
    if args.format == "csv":
        rows = [[x, fraction_str(special.height(x)), fraction_str(generic.height(x))] for x in (0, 1, 2)]
        return _done(_csv(["x", "y_special", "y_generic"], rows), args)
    gap = special.vertices[0][1] - generic.vertices[0][1]
    payload = {"params": params.to_record(), "special": special.to_record(),
               "generic": generic.to_record(), "endpoint_gap": fraction_str(gap)}
    return _done(_json(payload, args), args)


def cmd_solve(args) -> int:
    params = _params(args)
    N = 10 if args.nmax is None else args.nmax
    if N > MAX_DENSE_DEGREE:
        raise InputError(f"--nmax {N} exceeds the dense solver limit {MAX_DENSE_DEGREE}")
    if args.format == "svg":
        raise InputError("solve has no svg output; use json or csv")
    G = family_connection(params, N)
    basis = solve_horizontal(G)
    bad = residual(G, basis)
    verdict = "PASS" if not bad else "FAIL"
    if args.format == "csv":
        cols = basis.columns
        rows = [[m] + [fraction_str(cols[j][i][m]) for j in range(2) for i in range(2)]
                for m in range(N + 2)]
        text = _csv(["degree", "col1_e1", "col1_e2", "col2_e1", "col2_e2"], rows)
    else:
        text = _json({"params": params.to_record(), "N": N, **basis.to_record(),
                      "residual": verdict}, args)
    _done(text, args)
    print(f"residual {verdict}", file=sys.stderr)
    return EXIT_OK if not bad else EXIT_CLAIM


def cmd_loggrowth(args) -> int:
    params = _params(args)
    p = params.p
    special, generic = special_samples(params), generic_samples(params)
    tail = min(DEFAULT_TAIL, params.r_max)
    rows = []
    for r, (s, g) in enumerate(zip(special, generic)):
        rs = s.neg_valuation / log_p(s.n1, p)
        rg = g.neg_valuation / log_p(g.n1, p) if g.n1 > 1 else None
        rows.append({"r": r, "special_n1": str(s.n1), "special_neg_valuation": s.neg_valuation,
                     "special_ratio": rs, "generic_n1": str(g.n1),
                     "generic_neg_valuation": g.neg_valuation, "generic_ratio": rg})
    estimates = {
        "special": loggrowth_estimate(special, p, tail),
        "generic": loggrowth_estimate(generic, p, tail),
        "special_target": fraction_str(1 - params.sigma),
        "generic_target": fraction_str(1 - params.sigma_prime),
        "tail": tail,
    }
    checks = _lambda_checks(params, args) if args.lam is not None else []
    status = EXIT_OK if all(c["passed"] for c in checks) else EXIT_CLAIM
    if args.format == "svg":
        text = convergence_svg([
            ("special", "#1f77b4", [(row["r"], row["special_ratio"]) for row in rows], float(1 - params.sigma)),
            ("generic", "#d62728", [(row["r"], row["generic_ratio"]) for row in rows if row["generic_ratio"] is not None],
             float(1 - params.sigma_prime)),
        ])
    elif args.format == "csv":
        header = list(rows[0])
        text = _csv(header, [["" if row[h] is None else row[h] for h in header] for row in rows])
    else:
        text = _json({"params": params.to_record(), "estimates": estimates, "samples": rows,
                      "checks": checks}, args)
    _done(text, args)
    return status


def _lambda_checks(params: FamilyParams, args) -> list[dict]:
    lam, B = args.lam, args.bound
    if lam < 0:
        raise InputError("--lambda must be >= 0")
    out = []
    lam_s = fraction_str(lam)
    if lam >= 1 - params.sigma:
        ok, worst = verify_special_bounded(params, lam)
        out.append({"name": "special_bounded", "lambda": lam_s, "passed": ok, "worst_r": worst})
    else:
        out.append(_witness("special_unbounded", lam_s, B, lambda: verify_special_unbounded(params, lam, B)))
    if lam >= 1 - params.sigma_prime:
        n_max = DEFAULT_N_MAX if params.n_max is None else params.n_max
        res = verify_generic_bounded(params, n_max, lam, workers=worker_count())
        out.append({"name": "generic_bounded", "lambda": lam_s, **res.to_record()})
    else:
        out.append(_witness("generic_unbounded", lam_s, B, lambda: verify_generic_unbounded(params, lam, B)))
    return out


def _witness(name: str, lam_s: str, B: int, fn: Callable[[], int]) -> dict:
    try:
        return {"name": name, "lambda": lam_s, "bound": B, "passed": True, "r": fn()}
    except (WitnessNotFound, PaperClaimViolation) as exc:
        return {"name": name, "lambda": lam_s, "bound": B, "passed": False, "error": str(exc)}


def _done(text: str, args) -> int:
    _emit(text, args)
    return EXIT_OK


COMMANDS = {
    "family": cmd_family,
    "verify": cmd_verify,
    "polygon": cmd_polygon,
    "solve": cmd_solve,
    "loggrowth": cmd_loggrowth,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
