"""Registry of runnable schemes and named adversaries."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..adversaries import generic as g
from ..canonical import build_random_protocol
from ..channel import Adversary
from ..exchange import exchange_quarter_baseline, exchange_two_sevenths, exchange_two_thirds_shared
from ..simulator.block import block_scheme
from ..simulator.large_alphabet import alg1_pair, alg2_run


class UnknownName(ValueError):
    pass


class ModeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Scheme:
    name: str
    family: str        # exchange, tree or block
    mode: str          # unique, list, adaptive or shared-rand
    channel: str       # corruption or erasure
    threshold: float   # designed rate is threshold - eps
    eps_max: float
    builder: Callable
    branching: int = 2

    def designed_rate(self, eps: float) -> float:
        return max(0.0, self.threshold - eps)

    def build(self, n: int, eps: float):
        if n < 1:
            raise ValueError("n must be >= 1")
        if not 0 < eps < self.eps_max:
            raise ValueError(f"{self.name} needs eps in (0, {self.eps_max:g})")
        return self.builder(n, eps)


def _two_thirds(n: int, eps: float):
    return exchange_two_thirds_shared(eps, q=1 << n)


SCHEMES = {s.name: s for s in [
    Scheme("exchange-27", "exchange", "adaptive", "corruption", 2 / 7, 2 / 7, exchange_two_sevenths),
    Scheme("exchange-14", "exchange", "unique", "corruption", 1 / 4, 1 / 4, exchange_quarter_baseline),
    Scheme("exchange-23", "exchange", "shared-rand", "erasure", 2 / 3, 2 / 3, _two_thirds),
    Scheme("alg1-unique", "tree", "unique", "corruption", 1 / 4, 1.0, lambda n, e: alg1_pair(n, e, "unique")),
    Scheme("alg1-list", "tree", "list", "corruption", 1 / 2, 1.0, lambda n, e: alg1_pair(n, e, "list")),
    Scheme("alg2", "tree", "adaptive", "corruption", 2 / 7, 1.0, alg2_run),
    Scheme("block-unique", "block", "unique", "corruption", 1 / 4, 1.0, lambda n, e: block_scheme(n, e, mode="unique")),
    # branching 3 so the list (1/eps^2 entries) is shorter than the leaf count at desk sizes
    Scheme("block-list", "block", "list", "corruption", 1 / 2, 1.0,
           lambda n, e: block_scheme(n, e, branching=3, mode="list"), branching=3),
    Scheme("block-adaptive", "block", "adaptive", "corruption", 2 / 7, 1.0,
           lambda n, e: block_scheme(n, e, mode="adaptive")),
]}

_MODE_ALIASES = {"erasure": "shared-rand"}


def resolve_scheme(name: str, mode=None) -> Scheme:
    """Look up ``name``; ``mode`` either completes a family name or must match the scheme."""
    scheme = SCHEMES.get(name)
    if scheme is None and mode:
        scheme = SCHEMES.get(f"{name}-{mode}")
    if scheme is None:
        raise UnknownName(f"unknown scheme {name!r}; known: {', '.join(sorted(SCHEMES))}")
    if mode and _MODE_ALIASES.get(mode, mode) != scheme.mode and not (mode == "erasure" and scheme.channel == "erasure"):
        raise ModeMismatch(f"scheme {scheme.name} runs in mode {scheme.mode}, not {mode}")
    return scheme


# -- inputs -----------------------------------------------------------------------------

@dataclass
class TrialInputs:
    alice: object
    bob: object
    truth: object            # (bob's value, alice's value) for exchanges, the common leaf for trees
    tree: object = None


def draw_inputs(scheme: Scheme, n: int, seed: int) -> TrialInputs:
    rng = random.Random(seed)
    if scheme.family == "exchange":
        a, b = rng.randrange(1 << n), rng.randrange(1 << n)
        return TrialInputs(a, b, (b, a))
    tree = build_random_protocol(n, scheme.branching, rng.randrange(1 << 30))
    return TrialInputs(tree.alice_side, tree.bob_side, tree.common_leaf, tree)


def succeeded(scheme: Scheme, inputs: TrialInputs, outputs) -> bool:
    if scheme.family == "exchange":
        return tuple(outputs) == inputs.truth
    if scheme.mode == "list":
        return all(inputs.truth in out for out in outputs)
    return all(out == inputs.truth for out in outputs)


# -- adversaries ------------------------------------------------------------------------

ROUND_ADVERSARIES = ("none", "uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B", "garbage")
BLOCK_ADVERSARIES = ("none", "uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B", "half-blend", "junk")
ERASURE_ADVERSARIES = ("none", "uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B",
                       "blank-part-1", "blank-part-2", "blank-part-3")

SUITES = {
    "exchange": ("uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B"),
    "erasure": ("uniform", "burst", "one-sided-A", "one-sided-B", "blank-part-1", "blank-part-2", "blank-part-3"),
    "tree": ("uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B", "garbage"),
    "block": ("uniform", "burst", "burst-mid", "one-sided-A", "one-sided-B", "half-blend", "junk"),
}


def adversary_names(scheme: Scheme) -> tuple:
    if scheme.channel == "erasure":
        return ERASURE_ADVERSARIES
    return BLOCK_ADVERSARIES if scheme.family == "block" else ROUND_ADVERSARIES


def suite_for(scheme: Scheme) -> tuple:
    if scheme.channel == "erasure":
        return SUITES["erasure"]
    return SUITES[scheme.family]


def _forger(scheme: Scheme, n: int, name: str):
    if scheme.channel == "erasure":
        return g.erase
    if scheme.family == "exchange":
        return g.shifted_symbol(1 << n)
    if name == "garbage":
        return g.garbage_forger()
    return g.wrong_path_forger(spread=8 if scheme.mode == "list" else 1)


def make_adversary(scheme: Scheme, built, n: int, name: str, seed: int) -> Adversary:
    """Fresh adversary ``name`` for one session of ``built``."""
    if name not in adversary_names(scheme):
        raise UnknownName(f"adversary {name!r} is not available for {scheme.name}; "
                          f"choose from {', '.join(adversary_names(scheme))} or 'suite'")
    if name == "none":
        return Adversary()
    if scheme.family == "block":
        spread = 4 if scheme.mode == "list" else 1
        mid = built.plan.blocks // 2 + 1
        return {
            "uniform": lambda: g.BlockUniformAdversary(seed=seed, spread=spread),
            "burst": lambda: g.BlockBurstAdversary(start=1, seed=seed, spread=spread),
            "burst-mid": lambda: g.BlockBurstAdversary(start=mid, seed=seed, spread=spread),
            "one-sided-A": lambda: g.BlockOneSidedAdversary("A", seed=seed, spread=spread),
            "one-sided-B": lambda: g.BlockOneSidedAdversary("B", seed=seed, spread=spread),
            "half-blend": lambda: g.BlockBurstAdversary(start=1, fraction=0.5, seed=seed, spread=spread),
            "junk": lambda: g.BlockUniformAdversary(seed=seed, junk=True),
        }[name]()
    forge = _forger(scheme, n, name)
    rounds = built.rounds
    if name.startswith("blank-part-"):
        part = rounds // 3
        k = int(name[-1])
        return g.PrefixBurstAdversary(forge, start=(k - 1) * part + 1, stop=k * part, seed=seed)
    return {
        "uniform": lambda: g.UniformAdversary(forge, seed=seed),
        "garbage": lambda: g.UniformAdversary(forge, seed=seed),
        "burst": lambda: g.PrefixBurstAdversary(forge, start=1, seed=seed),
        "burst-mid": lambda: g.PrefixBurstAdversary(forge, start=rounds // 2 + 1, seed=seed),
        "one-sided-A": lambda: g.OneSidedAdversary(forge, "A", seed=seed),
        "one-sided-B": lambda: g.OneSidedAdversary(forge, "B", seed=seed),
    }[name]()


__all__ = [
    "ModeMismatch", "SCHEMES", "Scheme", "TrialInputs", "UnknownName", "adversary_names", "draw_inputs",
    "make_adversary", "resolve_scheme", "succeeded", "suite_for",
]
