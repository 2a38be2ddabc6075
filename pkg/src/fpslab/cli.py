"""Command line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import QRecursion, q_recursive, q_series
from .changevar import cbh_check, decompose, sum_form
from .formats import dump_csv, dump_json, dump_pretty
from .jacobi import coefficient_table, residue_rows
from .series import PowerSeries, expm1_series, format_rational, parse_rational, x_series
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_RANGE_RE = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")
_NEGATIVE_VALUE_RE = re.compile(r"^-\d+(/\d+)?(\.\.-?\d+)?$")


def int_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single integer."""
    m = _RANGE_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def nonnegative_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


@dataclass
class RunConfig:
    command: str
    format: str
    out: str | None
    options: argparse.Namespace


def _add_function_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--func", choices=("exp", "id", "custom"), default="exp",
                   help="exp: (e^{ax}-1)/a; id: x; custom: x + a2 x^2 + ... from --coeffs")
    p.add_argument("--a", type=rational_arg, default=Fraction(1), help="parameter for exp (p/q)")
    p.add_argument("--coeffs", default="", help='comma-separated "a2,a3,..." for custom')
    p.add_argument("--order", type=positive_int, default=15)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_, formats=("json", "csv", "pretty"), default="pretty"):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write to this file instead of stdout")
        return p

    _add_function_args(cmd("decompose", "product-form coefficients b_n"))
    _add_function_args(cmd("sumform", "sum-form coefficients A_n"))
    _add_function_args(cmd("cbh", "check product form = sum form", ("json", "pretty")))

    p = cmd("qtable", "Bernoulli-type numbers by direct expansion")
    p.add_argument("--m", type=int_range, default=range(1, 2))
    p.add_argument("--n", type=int_range, required=True)
    p.add_argument("--terms", type=nonnegative_int, default=10, help="j = 0..terms")

    p = cmd("qrecur", "q^(1,n) by the recursion only")
    p.add_argument("--n", type=int_range, required=True)
    p.add_argument("--terms", type=nonnegative_int, default=10, help="j = 0..terms")

    p = cmd("residues", "Res e^{my}/(e^y-1)^n: closed form and direct expansion")
    p.add_argument("--m", type=int_range, default=int_range("-12..12"))
    p.add_argument("--n", type=int_range, default=int_range("1..12"))

    p = cmd("commutator", "binomial coefficients of the modified Jacobi identity")
    p.add_argument("--w", type=int, required=True, help="conformal weight of u")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--j", type=int_range, default=int_range("-3..3"))
    p.add_argument("--k", type=int_range, default=None, help="defaults to n..n+8")

    p = cmd("verify", "run the identity suite", ("json", "pretty"))
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--max-order", type=positive_int, default=20)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-12..12" or "-1/3" as an option; attach it to its flag
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEGATIVE_VALUE_RE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_function(opts: argparse.Namespace) -> PowerSeries:
    if opts.func == "id":
        return x_series(opts.order)
    if opts.func == "exp":
        return expm1_series(opts.order, opts.a)
    parts = [s for s in opts.coeffs.split(",") if s.strip()]
    tail = [parse_rational(s) for s in parts]
    return PowerSeries.from_coeffs([0, 1] + tail, opts.order)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    o = config.options
    fmt = config.format
    status = EXIT_OK

    if config.command in ("decompose", "sumform"):
        f = build_function(o)
        if config.command == "decompose":
            d = decompose(f)
            header = ["n", "b_n", "n!*b_n"]
            rows = [[n, format_rational(b), format_rational(math.factorial(n) * b)]
                    for n, b in enumerate(d.terms, start=1)]
        else:
            d = sum_form(f)
            header = ["n", "A_n"]
            rows = [[n, format_rational(a)] for n, a in enumerate(d.terms, start=1)]
        text = (dump_json(d.to_json()) if fmt == "json" else
                dump_csv(header, rows) if fmt == "csv" else dump_pretty(header, rows))

    elif config.command == "cbh":
        report = cbh_check(build_function(o))
        text = dump_json(report.to_dict()) if fmt == "json" else report.line() + "\n"
        status = EXIT_OK if report else EXIT_FAIL

    elif config.command in ("qtable", "qrecur"):
        if config.command == "qtable":
            tables = [q_series(m, n, -n + o.terms) for m in o.m for n in o.n]
        else:
            solver = QRecursion()
            tables = [q_recursive(n, o.terms, solver) for n in o.n]
        header = ["m", "n", "k", "q"]
        rows = [r for t in tables for r in t.csv_rows()]
        text = (dump_json([t.to_json() for t in tables]) if fmt == "json" else
                dump_csv(header, rows) if fmt == "csv" else dump_pretty(header, rows))

    elif config.command == "residues":
        data = residue_rows(o.m, o.n)
        header = ["m", "n", "formula", "oracle"]
        rows = [[m, n, formula, format_rational(direct)] for m, n, formula, direct in data]
        if fmt == "json":
            text = dump_json([dict(zip(header, r)) for r in rows])
        else:
            text = dump_csv(header, rows) if fmt == "csv" else dump_pretty(header, rows)
        if any(formula != direct for _, _, formula, direct in data):
            status = EXIT_FAIL

    elif config.command == "commutator":
        ks = o.k if o.k is not None else range(o.n, o.n + 9)
        if ks.start < o.n:
            raise _UsageError("--k must lie in [n, inf)")
        table = coefficient_table(o.w, o.n, o.j, ks)
        header = ["w", "n", "j", "k", "value"]
        text = (dump_json(table.to_json()) if fmt == "json" else
                dump_csv(header, table.csv_rows()) if fmt == "csv" else
                dump_pretty(header, table.csv_rows()))

    elif config.command == "verify":
        reports = run_suite(o.suite, o.max_order)
        passed = all(reports)
        if fmt == "json":
            text = dump_json({"suite": o.suite, "max_order": o.max_order, "passed": passed,
                              "checks": [r.to_dict() for r in reports]})
        else:
            lines = [r.line() for r in reports]
            lines.append(f"{sum(map(bool, reports))}/{len(reports)} checks passed")
            text = "\n".join(lines) + "\n"
        status = EXIT_OK if passed else EXIT_FAIL

    else:  # pragma: no cover - argparse restricts the choices
        raise _UsageError(f"unknown command {config.command}")

    _emit(text, config.out)
    return status


class _UsageError(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    opts = parser.parse_args(_glue_negative_values(argv))
    config = RunConfig(opts.command, opts.format, opts.out, opts)
    try:
        return run(config)
    except _UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"fpslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
