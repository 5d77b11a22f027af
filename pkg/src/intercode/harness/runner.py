"""Seeded Monte-Carlo trials, sweeps and attack runs.

Trial ``i`` of an experiment with base seed ``s`` draws its seeds from
``numpy.random.SeedSequence([s, i])``: the first word seeds the inputs, the
next two the parties and the last one the adversary.  Changing the rate
therefore keeps the inputs of every trial fixed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from typing import Optional, Sequence

import numpy as np

from ..adversaries.attacks import (
    AttackReport, IncompatibleScheme, adaptive_list_attack, erasure_two_thirds_attack, list_block_attack,
    quarter_attack, third_attack, two_sevenths_attack,
)
from ..channel import SessionResult, run_block_session, run_session
from .schemes import Scheme, TrialInputs, draw_inputs, make_adversary, resolve_scheme, succeeded, suite_for


@dataclass(frozen=True)
class ExperimentSpec:
    scheme: str
    n: int
    eps: float
    rates: tuple = ()
    adversary: str = "uniform"
    trials: int = 100
    seed: int = 0
    mode: Optional[str] = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        resolve_scheme(self.scheme, self.mode)


@dataclass(frozen=True)
class SweepRow:
    scheme: str
    n: int
    eps: float
    rho: float
    adversary: str
    trials: int
    successes: int
    failure_rate: float
    mean_cost: float
    seed: int

    def as_csv_fields(self) -> list:
        return [self.scheme, str(self.n), f"{self.eps:.6f}", f"{self.rho:.6f}", self.adversary, str(self.trials),
                str(self.successes), f"{self.failure_rate:.6f}", f"{self.mean_cost:.4f}", str(self.seed)]


CSV_HEADER = [f.name for f in fields(SweepRow)]


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_csv_fields())
    return buf.getvalue()


def trial_seeds(base: int, index: int) -> tuple:
    words = np.random.SeedSequence([base, index]).generate_state(4, dtype=np.uint32)
    return tuple(int(w) for w in words)


@dataclass
class TrialOutcome:
    success: bool
    cost: int
    adversary: str
    inputs: TrialInputs
    result: SessionResult


def run_trial(scheme: Scheme, built, n: int, rate: float, adversary: str, base_seed: int, index: int) -> TrialOutcome:
    s_in, s_a, s_b, s_adv = trial_seeds(base_seed, index)
    inputs = draw_inputs(scheme, n, s_in)
    if adversary == "suite":
        suite = suite_for(scheme)
        adversary = suite[index % len(suite)]
    adv = make_adversary(scheme, built, n, adversary, s_adv)
    if scheme.family == "block":
        res = run_block_session(built.alice, built.bob, adv, built.config(rate), inputs.alice, inputs.bob,
                                seeds=(s_a, s_b))
    else:
        res = run_session(built.alice, built.bob, adv, built.config(rate), inputs.alice, inputs.bob,
                          seeds=(s_a, s_a) if scheme.mode == "shared-rand" else (s_a, s_b))
    return TrialOutcome(succeeded(scheme, inputs, res.outputs), res.cost_total, adversary, inputs, res)


def iter_trials(spec: ExperimentSpec, rate: float):
    scheme = resolve_scheme(spec.scheme, spec.mode)
    built = scheme.build(spec.n, spec.eps)
    for i in range(spec.trials):
        yield run_trial(scheme, built, spec.n, rate, spec.adversary, spec.seed, i)


def resolve_rate(spec: ExperimentSpec, rate) -> float:
    if rate == "design":
        return resolve_scheme(spec.scheme, spec.mode).designed_rate(spec.eps)
    return float(rate)


def simulate(spec: ExperimentSpec, rate) -> SweepRow:
    rho = resolve_rate(spec, rate)
    successes = 0
    cost = 0
    for out in iter_trials(spec, rho):
        successes += out.success
        cost += out.cost
    scheme = resolve_scheme(spec.scheme, spec.mode)
    return SweepRow(scheme.name, spec.n, spec.eps, rho, spec.adversary, spec.trials, successes,
                    1 - successes / spec.trials, cost / spec.trials, spec.seed)


def sweep(spec: ExperimentSpec, adversaries: Optional[Sequence[str]] = None) -> list:
    """One row per ``(rate, adversary)``, rates outer."""
    names = list(adversaries) if adversaries is not None else [spec.adversary]
    rows = []
    for rate in spec.rates:
        for name in names:
            sub = ExperimentSpec(spec.scheme, spec.n, spec.eps, (), name, spec.trials, spec.seed, spec.mode)
            rows.append(simulate(sub, rate))
    return rows


ATTACKS = {
    "quarter": (quarter_attack, 1 / 4, ("exchange-14",)),
    "third": (third_attack, 1 / 3, ("exchange-27", "exchange-14")),
    "two-sevenths": (two_sevenths_attack, 2 / 7, ("exchange-27", "exchange-14")),
    "list-block": (list_block_attack, 1 / 2, ("exchange-14",)),
    "adaptive-list": (adaptive_list_attack, 1 / 2, ("exchange-27", "exchange-14")),
    "erasure-two-thirds": (erasure_two_thirds_attack, 2 / 3, ("exchange-23",)),
}


def attack_rate(name: str) -> float:
    return ATTACKS[name][1]


def run_attack(name: str, scheme_name: str, n: int, eps: float, rate=None, seed: int = 0) -> AttackReport:
    if name not in ATTACKS:
        raise KeyError(f"unknown attack {name!r}; known: {', '.join(sorted(ATTACKS))}")
    factory, nominal_rate, compatible = ATTACKS[name]
    scheme = resolve_scheme(scheme_name)
    if scheme.name not in compatible:
        raise IncompatibleScheme(f"attack {name} does not apply to {scheme.name} "
                                 f"(compatible: {', '.join(compatible)})")
    pair = scheme.build(n, eps)
    rho = nominal_rate if rate in (None, "design") else float(rate)
    kwargs = {"seed": seed} if name in ("list-block", "adaptive-list", "erasure-two-thirds") else {}
    return factory(**kwargs).run(pair, rho, scheme.name)


__all__ = [
    "ATTACKS", "CSV_HEADER", "ExperimentSpec", "SweepRow", "TrialOutcome", "attack_rate", "iter_trials",
    "resolve_rate", "rows_to_csv", "run_attack", "run_trial", "simulate", "sweep", "trial_seeds",
]
