"""Stress adversaries for the positive results.

All of them only touch rounds where exactly one party listens and use a
*forger* to decide what the listener hears instead.  A forger is a callable
``forge(ctx, listener, rng) -> symbol``.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

import numpy as np

from ..canonical import encode_edge_set
from ..channel import ERASURE, Adversary, Blend, BlockContext, Intervention, RoundContext, SessionInfo
from ..ecc import JUNK
from ..simulator.large_alphabet import forge_wrong_path

Forger = Callable[[RoundContext, str, random.Random], object]


def _sent(ctx: RoundContext, listener: str):
    act = ctx.bob_action if listener == "A" else ctx.alice_action
    return act.symbol


def _inputs(ctx: RoundContext, listener: str):
    return (ctx.alice_input, ctx.bob_input) if listener == "A" else (ctx.bob_input, ctx.alice_input)


def shifted_symbol(q: int, shift: int = 1) -> Forger:
    """Replace the transmitted symbol ``s`` by ``(s + shift) % q``."""
    def forge(ctx, listener, rng):
        return (int(_sent(ctx, listener)) + shift) % q
    return forge


def random_symbol(q: int) -> Forger:
    def forge(ctx, listener, rng):
        return rng.randrange(q)
    return forge


def erase(ctx, listener, rng):
    return ERASURE


def wrong_path_forger(spread: int = 1) -> Forger:
    """Edge-set forger steering the listener to a wrong leaf.

    With ``spread > 1`` each forgery picks one of ``spread`` different wrong
    leaves at random, which is the stronger move against list decoding.
    """
    def forge(ctx, listener, rng):
        mine, theirs = _inputs(ctx, listener)
        choice = rng.randrange(spread) if spread > 1 else 0
        return encode_edge_set(forge_wrong_path(mine, theirs, choice))
    return forge


def garbage_forger(length: int = 8, alphabet: str = "01^+xyz") -> Forger:
    def forge(ctx, listener, rng):
        return "".join(rng.choice(alphabet) for _ in range(length))
    return forge


def _deliver(listener: str, symbol) -> Intervention:
    return Intervention(to_alice=symbol) if listener == "A" else Intervention(to_bob=symbol)


class _ForgingAdversary(Adversary):
    def __init__(self, forge: Forger, seed: int = 0):
        self.forge = forge
        self.seed = seed
        self.interventions = 0

    def start(self, info: SessionInfo) -> None:
        super().start(info)
        self.rng = random.Random(self.seed)
        self.interventions = 0

    def _hit(self, ctx, listener):
        self.interventions += 1
        return _deliver(listener, self.forge(ctx, listener, self.rng))


class UniformAdversary(_ForgingAdversary):
    """Spreads the budget uniformly over the single-listener rounds.

    With a declared schedule the target rounds are drawn up front, so exactly
    ``min(budget, rounds)`` rounds are hit.  Without one the adversary hits
    each single-listener round with probability ``remaining / rounds_left``
    and spends whatever is left once it runs short of rounds.
    """

    def start(self, info: SessionInfo) -> None:
        super().start(info)
        cfg = info.config
        self.targets = None
        if getattr(cfg, "schedule", None) is not None:
            rounds = list(range(1, cfg.rounds + 1))
            k = min(cfg.budget, len(rounds))
            self.targets = set(self.rng.sample(rounds, k))

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        listener = ctx.listener()
        if listener is None or ctx.remaining <= 0:
            return None
        if self.targets is not None:
            return self._hit(ctx, listener) if ctx.index in self.targets else None
        left = ctx.config.rounds - ctx.index + 1
        if ctx.remaining >= left or self.rng.random() < ctx.remaining / left:
            return self._hit(ctx, listener)
        return None


class PrefixBurstAdversary(_ForgingAdversary):
    """Corrupts every single-listener round from ``start`` (up to ``stop``) until the budget is gone."""

    def __init__(self, forge: Forger, start: int = 1, seed: int = 0, stop: Optional[int] = None):
        super().__init__(forge, seed)
        self.begin = start
        self.stop = stop

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        listener = ctx.listener()
        if listener is None or ctx.index < self.begin or ctx.remaining <= 0:
            return None
        if self.stop is not None and ctx.index > self.stop:
            return None
        return self._hit(ctx, listener)


class OneSidedAdversary(_ForgingAdversary):
    """Spends the whole budget on one party's receptions."""

    def __init__(self, forge: Forger, target: str = "A", start: int = 1, seed: int = 0):
        super().__init__(forge, seed)
        if target not in ("A", "B"):
            raise ValueError("target must be 'A' or 'B'")
        self.target = target
        self.begin = start

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        if ctx.listener() != self.target or ctx.index < self.begin or ctx.remaining <= 0:
            return None
        return self._hit(ctx, self.target)


class SplitAdversary(_ForgingAdversary):
    """Hits both parties' receptions, alternating targets, with no regard for a plan."""

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        listener = ctx.listener()
        if listener is None or ctx.remaining <= 0:
            return None
        return self._hit(ctx, listener)


# -- block channel ---------------------------------------------------------------------

def forged_blend(ctx: BlockContext, listener: str, rng: random.Random, coords: int,
                 spread: int = 1, junk: bool = False) -> Blend:
    """Overwrite ``coords`` random coordinates of the sent codeword.

    The new values come from a wrong-path edge set (or junk when ``junk``),
    so the listener sees a blend of two codewords.
    """
    sent = ctx.sent_to_alice if listener == "A" else ctx.sent_to_bob
    length = sent.shape[0]
    coords = max(0, min(coords, length))
    word = sent.copy()
    positions = np.array(sorted(rng.sample(range(length), coords)), dtype=np.int64)
    if junk:
        word[positions] = JUNK
        return Blend(word, ())
    mine, theirs = _inputs(ctx, listener)
    forged = forge_wrong_path(mine, theirs, rng.randrange(spread) if spread > 1 else 0)
    fword = ctx.code.encode(forged)
    word[positions] = fword[positions]
    return Blend(word, (forged,))


class _BlockAdversary(Adversary):
    def __init__(self, seed: int = 0, spread: int = 1, junk: bool = False):
        self.seed = seed
        self.spread = spread
        self.junk = junk

    def start(self, info: SessionInfo) -> None:
        super().start(info)
        self.rng = random.Random(self.seed)
        self.length = info.code.length

    def _blend(self, ctx, listener, coords):
        blend = forged_blend(ctx, listener, self.rng, coords, self.spread, self.junk)
        return _deliver(listener, blend)


class BlockUniformAdversary(_BlockAdversary):
    """Spreads the coordinate budget evenly (with jitter) over the remaining blocks."""

    def intervene(self, ctx: BlockContext) -> Optional[Intervention]:
        listener = ctx.listener()
        if listener is None or ctx.remaining <= 0:
            return None
        left = ctx.config.blocks - ctx.index + 1
        share = ctx.remaining / left
        coords = int(share) + (1 if self.rng.random() < share - int(share) else 0)
        if left == 1:
            coords = ctx.remaining
        return self._blend(ctx, listener, min(coords, ctx.remaining)) if coords else None


class BlockBurstAdversary(_BlockAdversary):
    """Replaces whole blocks from block ``start`` on until the budget is gone."""

    def __init__(self, start: int = 1, fraction: float = 1.0, **kw):
        super().__init__(**kw)
        self.begin = start
        self.fraction = fraction

    def intervene(self, ctx: BlockContext) -> Optional[Intervention]:
        listener = ctx.listener()
        if listener is None or ctx.index < self.begin or ctx.remaining <= 0:
            return None
        coords = min(ctx.remaining, int(round(self.fraction * self.length)))
        return self._blend(ctx, listener, coords) if coords else None


class BlockOneSidedAdversary(BlockBurstAdversary):
    def __init__(self, target: str = "A", **kw):
        super().__init__(**kw)
        self.target = target

    def intervene(self, ctx: BlockContext) -> Optional[Intervention]:
        if ctx.listener() != self.target:
            return None
        return super().intervene(ctx)


__all__ = [
    "BlockBurstAdversary", "BlockOneSidedAdversary", "BlockUniformAdversary", "Forger",
    "OneSidedAdversary", "PrefixBurstAdversary", "SplitAdversary", "UniformAdversary", "erase",
    "forged_blend", "garbage_forger", "random_symbol", "shifted_symbol", "wrong_path_forger",
]
