"""``python -m intercode {simulate,sweep,attack}``.

Exit codes: 0 success, 1 a guaranteed property failed (a failure at or below
the scheme's designed rate, or a claimed attack property that did not hold),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ..adversaries.attacks import IncompatibleScheme
from .runner import ExperimentSpec, rows_to_csv, run_attack, simulate, sweep
from .schemes import ModeMismatch, UnknownName, resolve_scheme

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_rate(text: str):
    text = text.strip()
    if text == "design":
        return "design"
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rate {text!r}") from exc
    if not 0 <= value <= 1:
        raise UsageError(f"rate {text!r} outside [0, 1]")
    return value


def parse_rates(text: str) -> tuple:
    return tuple(parse_rate(t) for t in text.split(",") if t.strip())


def _eps(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad eps {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="python -m intercode", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scheme_default):
        sp.add_argument("--scheme", default=scheme_default)
        sp.add_argument("--n", type=int, default=4)
        sp.add_argument("--eps", type=_eps, default=0.2)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--mode", default=None)
        sp.add_argument("--out", default=None)

    sim = sub.add_parser("simulate", help="run seeded trials at one rate and print a CSV row")
    common(sim, "exchange-27")
    sim.add_argument("--rate", default="design")
    sim.add_argument("--adversary", default="uniform")
    sim.add_argument("--trials", type=int, default=100)

    sw = sub.add_parser("sweep", help="one CSV row per (rate, adversary)")
    common(sw, "exchange-27")
    sw.add_argument("--rates", default="0,0.1,0.2,0.28,0.33")
    sw.add_argument("--adversary", default="uniform", help="comma-separated names")
    sw.add_argument("--trials", type=int, default=100)

    at = sub.add_parser("attack", help="run a paired-setting attack and print its report")
    common(at, "exchange-27")
    at.add_argument("--attack", default="two-sevenths")
    at.add_argument("--rate", default="design")
    return p


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _violations(rows, spec: ExperimentSpec) -> int:
    designed = resolve_scheme(spec.scheme, spec.mode).designed_rate(spec.eps)
    return sum(1 for r in rows if r.rho <= designed + 1e-12 and r.successes < r.trials)


def cmd_simulate(args) -> int:
    spec = ExperimentSpec(args.scheme, args.n, args.eps, (), args.adversary, args.trials, args.seed, args.mode)
    row = simulate(spec, parse_rate(args.rate))
    _write(rows_to_csv([row]), args.out)
    return EXIT_VIOLATION if _violations([row], spec) else EXIT_OK


def cmd_sweep(args) -> int:
    spec = ExperimentSpec(args.scheme, args.n, args.eps, parse_rates(args.rates), args.adversary, args.trials,
                          args.seed, args.mode)
    names = [a.strip() for a in args.adversary.split(",") if a.strip()]
    rows = sweep(spec, names)
    _write(rows_to_csv(rows), args.out)
    return EXIT_VIOLATION if _violations(rows, spec) else EXIT_OK


def cmd_attack(args) -> int:
    rate = parse_rate(args.rate)
    report = run_attack(args.attack, args.scheme, args.n, args.eps, rate, args.seed)
    _write(report.to_text(), args.out)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = {"simulate": cmd_simulate, "sweep": cmd_sweep, "attack": cmd_attack}[args.command]
    try:
        return handler(args)
    except (UsageError, UnknownName, ModeMismatch, IncompatibleScheme, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["EXIT_OK", "EXIT_USAGE", "EXIT_VIOLATION", "build_parser", "cmd_attack", "cmd_simulate", "cmd_sweep",
           "main", "parse_rate", "parse_rates"]
