"""Command-line interface.

Subcommands::

    adiff eval        resolvent/antidifference value at one point
    adiff solve       particular solution for a factored operator
    adiff sum         definite sum via the discrete fundamental theorem
    adiff table       grid of values as CSV or JSON lines
    adiff verify      run the numerical identity battery
    adiff inequality  build and check a difference-inequality solution

Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
error (parse, domain, sign/periodicity, bad flags), 3 term budget
exceeded, 4 cross-check mismatch, 5 I/O error. Diagnostics go to standard
error; results to standard output. The environment variable
ADIFF_TERM_BUDGET overrides the default nested-sum budget; an explicit
--budget flag wins over the environment.

Numbers are printed at 17 significant digits, which round-trips binary64
exactly; CSV rows and JSON lines are generated from the same rendered
strings so the two formats always agree.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

from .antidiff import antidifference, definite_sum, resolvent_sum
from .errors import (
    AdiffError,
    CrossCheckError,
    DomainError,
    TermBudgetExceeded,
)
from .exprlang import as_function
from .inequality import (
    Direction,
    InequalitySpec,
    build_solution,
    check_inequality,
)
from .opalgebra import (
    FactoredOperator,
    TermBudget,
    estimate_terms,
    particular_solution,
    verify_particular,
)
from .verify import fmt17, run_battery

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_CROSSCHECK = 4
EXIT_IO = 5

BUDGET_ENV_VAR = "ADIFF_TERM_BUDGET"

CSV_HEADER = "t,value,imag,terms_used,residual"


@dataclass
class OutputRecord:
    """One evaluated grid point, ready for text/CSV/JSON rendering."""

    t: float
    value: float
    imag: float
    terms_used: int
    residual: float | None = None

    def _fields(self) -> list[tuple[str, str]]:
        resid = "" if self.residual is None else fmt17(self.residual)
        return [
            ("t", fmt17(self.t)),
            ("value", fmt17(self.value)),
            ("imag", fmt17(self.imag)),
            ("terms_used", str(self.terms_used)),
            ("residual", resid),
        ]

    def text_line(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self._fields() if v != "")

    def csv_row(self) -> str:
        return ",".join(v for _, v in self._fields())

    def json_line(self) -> str:
        parts = []
        for key, value in self._fields():
            if key == "terms_used":
                parts.append(f'"{key}": {value}')
            else:
                parts.append(f'"{key}": {value if value != "" else "null"}')
        return "{" + ", ".join(parts) + "}"


def parse_complex(text: str) -> float | complex:
    """Parse 'a+bi' style numbers: '2', '1i', '-1i', '0.5-0.5i', 'i'.

    Returns a float when the imaginary part is zero, so purely real
    coefficients take the real accumulation path downstream.
    """
    s = str(text).strip()
    if not s:
        raise DomainError("empty number")
    try:
        z = complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise DomainError(f"cannot parse number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"number {text!r} is not finite")
    return z.real if z.imag == 0.0 else z


def parse_factors(text: str) -> FactoredOperator:
    """Parse a factor list 'h:lambda;h:lambda;...' into an operator."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        head, sep, tail = chunk.partition(":")
        if not sep:
            raise DomainError(f"factor {chunk!r} must look like h:lambda")
        try:
            h = float(head)
        except ValueError:
            raise DomainError(f"bad shift {head!r} in factor {chunk!r}") from None
        pairs.append((h, parse_complex(tail)))
    if not pairs:
        raise DomainError("factor list is empty")
    return FactoredOperator.from_pairs(pairs)


def _resolve_budget(flag_value: int | None) -> TermBudget:
    if flag_value is not None:
        return TermBudget(flag_value)
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None and env.strip():
        try:
            return TermBudget(int(env))
        except ValueError:
            raise DomainError(f"{BUDGET_ENV_VAR} must be an integer, got {env!r}") from None
    return TermBudget()


def _split(value: float | complex) -> tuple[float, float]:
    if isinstance(value, complex):
        return value.real, value.imag
    return float(value), 0.0


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    f = as_function(args.expr)
    lam = parse_complex(args.lam)
    result = resolvent_sum(f, args.t, lam, args.h)
    ahead = resolvent_sum(f, args.t + args.h, lam, args.h)
    residual = abs(ahead.value - lam * result.value - f(args.t))
    real, imag = _split(result.value)
    print(OutputRecord(args.t, real, imag, result.terms_used, residual).text_line())
    return EXIT_OK


def cmd_solve(args) -> int:
    op = parse_factors(args.factors)
    f = as_function(args.expr)
    budget = _resolve_budget(args.budget)
    value = particular_solution(op, f, args.t, budget)
    residual = verify_particular(op, f, args.t, budget)
    record = OutputRecord(args.t, value.real, value.imag, estimate_terms(op, args.t), residual)
    print(record.text_line())
    return EXIT_OK


def cmd_sum(args) -> int:
    f = as_function(args.expr)
    print(fmt17(definite_sum(f, args.from_, args.to)))
    return EXIT_OK


def _table_rows(args) -> list[OutputRecord]:
    f = as_function(args.expr)
    if args.mode == "resolvent":
        lam = parse_complex(args.lam)
        h = args.h
    elif args.mode == "solve":
        if not args.factors:
            raise DomainError("mode 'solve' needs --factors")
        op = parse_factors(args.factors)
        budget = _resolve_budget(args.budget)
    count = math.floor((args.to - args.from_) / args.step + 1e-9) + 1
    rows = []
    for i in range(count):
        t = args.from_ + i * args.step
        if args.mode == "antidiff":
            res = antidifference(f, t)
            residual = abs(antidifference(f, t + 1.0).value - res.value - f(t))
            real, imag = _split(res.value)
            rows.append(OutputRecord(t, real, imag, res.terms_used, residual))
        elif args.mode == "resolvent":
            res = resolvent_sum(f, t, lam, h)
            residual = abs(resolvent_sum(f, t + h, lam, h).value - lam * res.value - f(t))
            real, imag = _split(res.value)
            rows.append(OutputRecord(t, real, imag, res.terms_used, residual))
        else:
            value = particular_solution(op, f, t, budget)
            residual = verify_particular(op, f, t, budget)
            rows.append(OutputRecord(t, value.real, value.imag, estimate_terms(op, t), residual))
    return rows


def cmd_table(args) -> int:
    if not (args.from_ < args.to):
        raise DomainError(f"range must satisfy from < to, got [{args.from_}, {args.to}]")
    if not (args.step > 0.0):
        raise DomainError(f"step must be positive, got {args.step!r}")
    rows = _table_rows(args)
    if args.format == "csv":
        lines = [CSV_HEADER] + [r.csv_row() for r in rows]
    else:
        lines = [r.json_line() for r in rows]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_battery(args.identity, samples=args.samples, tol=args.tol, seed=args.seed)
    for report in reports:
        print(report.format_line())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def cmd_inequality(args) -> int:
    spec = InequalitySpec(args.h, args.lam, Direction(args.direction))
    mu = as_function(args.mu)
    slack = as_function(args.slack)
    solution = build_solution(spec, mu, slack, t_range=(args.from_, args.to), samples=args.samples)
    if args.samples < 2:
        grid = [args.from_]
    else:
        step = (args.to - args.from_) / (args.samples - 1)
        grid = [args.from_ + i * step for i in range(args.samples)]
    report = check_inequality(solution, grid)
    status = "PASS" if report.passed else "FAIL"
    print(
        f"direction={spec.direction.value} samples={report.samples} "
        f"min_residual={fmt17(report.min_residual)} max_residual={fmt17(report.max_residual)} "
        f"max_slack_mismatch={fmt17(report.max_slack_mismatch)} "
        f"violations={len(report.violations)} {status}"
    )
    for witness in report.violations[:5]:
        print(f"violation at t={fmt17(witness)}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiff",
        description="Discrete-calculus toolkit: finite indefinite sums, "
        "difference equations and inequalities, identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="resolvent sum of an expression at a point")
    p.add_argument("--expr", required=True, help="expression in t, e.g. 't^2 + 1'")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--lambda", dest="lam", default="1", help="coefficient, 'a+bi' syntax")
    p.add_argument("--h", type=float, default=1.0, help="shift step (default 1)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="particular solution for factored operator")
    p.add_argument("--factors", required=True, help="'h:lambda;h:lambda;...', e.g. '1:2;1:-2'")
    p.add_argument("--expr", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--budget", type=int, default=None, help="max summand evaluations")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sum", help="definite sum over integer bounds")
    p.add_argument("--expr", required=True)
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("table", help="emit a value table as CSV or JSON lines")
    p.add_argument("--expr", required=True)
    p.add_argument("--from", dest="from_", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--mode", choices=["antidiff", "resolvent", "solve"], default="antidiff")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--factors", default=None)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the numerical identity battery")
    p.add_argument(
        "--identity",
        default="all",
        help="identity name or 'all' (digamma, lngamma, gammaratio, exponential, "
        "sincos, mueller, offset, factor-e2minus4, factor-e2plus1, periodic, fundamental)",
    )
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inequality", help="build and check a difference-inequality solution")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--direction", choices=["geq", "leq"], required=True)
    p.add_argument("--mu", required=True, help="homogeneous seed expression")
    p.add_argument("--slack", required=True, help="sign-constrained slack expression")
    p.add_argument("--from", dest="from_", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(func=cmd_inequality)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TermBudgetExceeded as exc:
        print(f"adiff: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CrossCheckError as exc:
        print(f"adiff: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except OSError as exc:
        print(f"adiff: {exc}", file=sys.stderr)
        return EXIT_IO
    except (AdiffError, ValueError) as exc:
        print(f"adiff: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
