"""Command-line front end.

Exit codes: 0 success, 1 a verification gate failed (the report is still
written), 2 bad usage, invalid parameters or a divergent norm.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .hardy import HardyParams, hardy_apply
from .norms import NormKind, NormSpec, norm_result
from .padic import PAdicParams, WeightSpec
from .radial import RadialStepFunction
from .scalar import DEFAULT_DIGITS, DivergenceError, format_rational, parse_rational
from .verification import (
    EQ_SLACK,
    EXCESS_SLACK,
    EndpointConfig,
    MorreyConfig,
    VerificationReport,
    sharpness_search,
    verify_endpoint,
    verify_morrey,
)

PRECISION_ENV = "ULTRAMETRIC_PRECISION"
MIN_DIGITS = EXCESS_SLACK + 5

EXIT_OK, EXIT_GATE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


_NEGATIVE_VALUE = re.compile(r"^-\d")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--flag -1/4`` as ``--flag=-1/4`` so argparse keeps the value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _default_digits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrametric",
        description="Hardy operators and weak/Morrey norms on radial step functions over Q_p^n.")
    parser.add_argument("--precision", type=int, default=None,
                        help=f"significant digits (default {DEFAULT_DIGITS}, or ${PRECISION_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="norm of a function read from a JSON spec")
    p_norm.add_argument("--fn", required=True, help="function spec file ('-' for stdin)")
    p_norm.add_argument("--kind", required=True, choices=[k.value for k in NormKind])
    p_norm.add_argument("--q", required=True, type=_rational)
    p_norm.add_argument("--gamma", type=_rational, default=Fraction(0))
    p_norm.add_argument("--lambda", dest="lam", type=_rational, default=None)
    p_norm.add_argument("--apply-hardy", metavar="ALPHA", type=_rational, default=None,
                        help="take the norm of H_alpha f instead of f")
    p_norm.add_argument("--emit", choices=("text", "json"), default="text")

    p_hardy = sub.add_parser("hardy", help="CSV of H_alpha f on spheres kmin..kmax")
    p_hardy.add_argument("--fn", required=True)
    p_hardy.add_argument("--alpha", type=_rational, default=Fraction(0))
    p_hardy.add_argument("--kmin", type=int, default=-10)
    p_hardy.add_argument("--kmax", type=int, default=10)

    def add_common(sp, trials=1000):
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--signed-trials", type=int, default=None,
                        help="size of the signed population (default: --trials)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="write the artifact here instead of stdout")

    p_end = sub.add_parser("verify-endpoint", help="check the weak endpoint bound for H_alpha")
    p_end.add_argument("--p", type=int, required=True)
    p_end.add_argument("--n", type=int, required=True)
    p_end.add_argument("--alpha", type=_rational, required=True)
    p_end.add_argument("--gamma", type=_rational, default=Fraction(0))
    add_common(p_end)

    p_mor = sub.add_parser("verify-morrey", help="check the central Morrey bound for H")
    p_mor.add_argument("--p", type=int, required=True)
    p_mor.add_argument("--n", type=int, required=True)
    p_mor.add_argument("--q", type=_rational, required=True)
    p_mor.add_argument("--lambda", dest="lam", type=_rational, required=True)
    add_common(p_mor)

    p_sweep = sub.add_parser("sweep", help="CSV table of verification runs over a parameter grid")
    p_sweep.add_argument("--theorem", choices=("endpoint", "morrey"), required=True)
    p_sweep.add_argument("--p", type=_int_list, required=True)
    p_sweep.add_argument("--n", type=_int_list, required=True)
    p_sweep.add_argument("--alpha", type=_rational_list, default=None)
    p_sweep.add_argument("--gamma", type=_rational_list, default=[Fraction(0)])
    p_sweep.add_argument("--q", type=_rational_list, default=None)
    p_sweep.add_argument("--lambda", dest="lam", type=_rational_list, default=None)
    p_sweep.add_argument("--lambda-scale", type=_rational_list, default=None,
                         help="lambda = -s/q for each listed s (alternative to --lambda)")
    add_common(p_sweep, trials=100)

    p_search = sub.add_parser("search", help="hill-climb the ratio from f0 or a random start")
    p_search.add_argument("--theorem", choices=("endpoint", "morrey"), required=True)
    p_search.add_argument("--p", type=int, required=True)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--alpha", type=_rational, default=None)
    p_search.add_argument("--gamma", type=_rational, default=Fraction(0))
    p_search.add_argument("--q", type=_rational, default=None)
    p_search.add_argument("--lambda", dest="lam", type=_rational, default=None)
    p_search.add_argument("--generations", type=int, default=50)
    p_search.add_argument("--start", choices=("f0", "random"), default="f0")
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--out", default=None)
    return parser


# -- helpers ----------------------------------------------------------------


def _read_function(path: str) -> RadialStepFunction:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read function spec {path!r}: {exc.strerror}") from None
    try:
        return RadialStepFunction.from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"function spec {path!r} is not valid JSON: {exc.msg}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _endpoint_config(args, p, n, alpha, gamma, digits) -> EndpointConfig:
    if alpha is None:
        raise UsageError("--alpha is required for the endpoint bound")
    return EndpointConfig(PAdicParams(p, n), alpha, gamma, getattr(args, "trials", 0),
                          args.seed, digits, signed_trials=getattr(args, "signed_trials", None))


def _morrey_config(args, p, n, q, lam, digits) -> MorreyConfig:
    if q is None or lam is None:
        raise UsageError("--q and --lambda are required for the Morrey bound")
    return MorreyConfig(PAdicParams(p, n), q, lam, getattr(args, "trials", 0),
                        args.seed, digits, signed_trials=getattr(args, "signed_trials", None))


# -- subcommands ------------------------------------------------------------


def cmd_norm(args, digits: int) -> int:
    f = _read_function(args.fn)
    target = f
    if args.apply_hardy is not None:
        target = hardy_apply(f, HardyParams(f.params, args.apply_hardy))
    kind = NormKind(args.kind)
    if kind in (NormKind.MORREY, NormKind.WEAK_MORREY):
        if args.lam is None:
            raise UsageError("--lambda is required for Morrey norms")
        spec = NormSpec(kind, args.q, WeightSpec(args.gamma), args.lam)
    else:
        if args.lam is not None:
            raise UsageError("--lambda only applies to Morrey norms")
        WeightSpec(args.gamma).require_locally_finite(f.params)
        spec = NormSpec(kind, args.q, WeightSpec(args.gamma))
    result = norm_result(target, spec, digits)
    value = result.value
    if args.emit == "json":
        doc = {"kind": kind.value, "q": format_rational(args.q),
               "gamma": format_rational(args.gamma),
               "lambda": None if args.lam is None else format_rational(args.lam),
               "apply_hardy": None if args.apply_hardy is None else format_rational(args.apply_hardy),
               "value": value.to_decimal_string(), "exact": value.exact,
               "rational": format_rational(value.as_fraction()) if value.exact else None,
               "witness": result.witness}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(f"{value.to_decimal_string()}\nexact: {str(value.exact).lower()}\n")
    return EXIT_OK


def cmd_hardy(args, digits: int) -> int:
    if args.kmin > args.kmax:
        raise UsageError("--kmin must not exceed --kmax")
    f = _read_function(args.fn)
    image = hardy_apply(f, HardyParams(f.params, args.alpha))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "value", "exact"])
    for k in range(args.kmin, args.kmax + 1):
        v = image.value(k, digits)
        w.writerow([k, v.to_decimal_string(), str(v.exact).lower()])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _report_exit(report: VerificationReport, out: str | None) -> int:
    _emit(report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_GATE


def cmd_verify_endpoint(args, digits: int) -> int:
    cfg = _endpoint_config(args, args.p, args.n, args.alpha, args.gamma, digits)
    return _report_exit(verify_endpoint(cfg), args.out)


def cmd_verify_morrey(args, digits: int) -> int:
    cfg = _morrey_config(args, args.p, args.n, args.q, args.lam, digits)
    return _report_exit(verify_morrey(cfg), args.out)


SWEEP_COLUMNS = ["theorem", "p", "n", "alpha", "gamma", "q", "lambda",
                 "constant", "constant_exact", "extremizer_ratio", "extremizer_exact",
                 "max_random_ratio", "max_random_exact", "max_signed_ratio",
                 "trials", "redraws", "pass", "reason"]


def _sweep_cells(args):
    """Yield (labels, config factory) in grid order."""
    if args.theorem == "endpoint":
        if not args.alpha:
            raise UsageError("--alpha is required for an endpoint sweep")
        for p in args.p:
            for n in args.n:
                for alpha in args.alpha:
                    for gamma in args.gamma:
                        labels = {"p": p, "n": n, "alpha": format_rational(alpha),
                                  "gamma": format_rational(gamma), "q": "", "lambda": ""}
                        if n + gamma > 0 and 0 < alpha < n:
                            labels["q"] = format_rational((n + gamma) / (n - alpha))
                        yield labels, (lambda p=p, n=n, a=alpha, g=gamma:
                                       _endpoint_config(args, p, n, a, g, args.digits))
    else:
        if not args.q or (args.lam is None) == (args.lambda_scale is None):
            raise UsageError("a Morrey sweep needs --q and exactly one of --lambda or --lambda-scale")
        for p in args.p:
            for n in args.n:
                for q in args.q:
                    lams = args.lam if args.lam is not None else [
                        -s / q if q else Fraction(0) for s in args.lambda_scale]
                    for lam in lams:
                        labels = {"p": p, "n": n, "alpha": "", "gamma": "",
                                  "q": format_rational(q), "lambda": format_rational(lam)}
                        yield labels, (lambda p=p, n=n, q=q, lam=lam:
                                       _morrey_config(args, p, n, q, lam, args.digits))


def cmd_sweep(args, digits: int) -> int:
    args.digits = digits
    cells = list(_sweep_cells(args))
    if not cells:
        raise UsageError("empty grid")
    buf = io.StringIO()
    w = csv.DictWriter(buf, SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    all_pass = True
    for labels, make in cells:
        row = {"theorem": args.theorem, **labels}
        try:
            cfg = make()
        except ValueError as exc:
            w.writerow({**row, "reason": str(exc)})
            continue
        report = verify_endpoint(cfg) if args.theorem == "endpoint" else verify_morrey(cfg)
        all_pass &= report.passed
        signed = report.max_signed_ratio
        w.writerow({**row,
                    "constant": report.theoretical_constant.to_decimal_string(),
                    "constant_exact": str(report.theoretical_constant.exact).lower(),
                    "extremizer_ratio": report.extremizer_ratio.to_decimal_string(),
                    "extremizer_exact": str(report.extremizer_ratio.exact).lower(),
                    "max_random_ratio": report.max_random_ratio.to_decimal_string(),
                    "max_random_exact": str(report.max_random_ratio.exact).lower(),
                    "max_signed_ratio": "" if signed is None else signed.to_decimal_string(),
                    "trials": report.trials, "redraws": report.redraws,
                    "pass": str(report.passed).lower(), "reason": ""})
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if all_pass else EXIT_GATE


def cmd_search(args, digits: int) -> int:
    if args.generations < 1:
        raise UsageError("--generations must be >= 1")
    if args.theorem == "endpoint":
        cfg = _endpoint_config(args, args.p, args.n, args.alpha, args.gamma, digits)
    else:
        cfg = _morrey_config(args, args.p, args.n, args.q, args.lam, digits)
    return _report_exit(sharpness_search(cfg, args.generations, args.start), args.out)


COMMANDS = {
    "norm": cmd_norm,
    "hardy": cmd_hardy,
    "verify-endpoint": cmd_verify_endpoint,
    "verify-morrey": cmd_verify_morrey,
    "sweep": cmd_sweep,
    "search": cmd_search,
}


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help.
        return int(exc.code or 0)
    try:
        digits = args.precision if args.precision is not None else _default_digits()
        if digits < MIN_DIGITS:
            raise UsageError(f"precision must be at least {MIN_DIGITS} digits "
                             f"(tolerances keep {EQ_SLACK}-{EXCESS_SLACK} digits of slack)")
        return COMMANDS[args.command](args, digits)
    except DivergenceError as exc:
        print(f"ultrametric: divergent: {exc}", file=sys.stderr)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"ultrametric: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
