"""Shared-randomness error detection.

Every round the two parties secretly agree on a fresh random injection of the
protocol alphabet into a larger channel alphabet.  A corrupted symbol lands
outside the injection's image most of the time and is then recognised as
tampering.

:func:`adaptive_exchange_block` wires the codec into a three-round gadget:
Alice sends, Bob sends, and in the third round whoever decoded successfully
repeats its symbol while a party that caught a corruption listens.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .channel import LISTEN, Party, PartyPair, Transmit, run_session


class _Detected:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DETECTED"

    def __reduce__(self):
        return (_Detected, ())


DETECTED = _Detected()


@lru_cache(maxsize=1 << 14)
def _injection(seed: int, round_index: int, outer: int, inner: int) -> tuple[tuple[int, ...], dict]:
    image = tuple(random.Random(f"{seed}:{round_index}").sample(range(outer), inner))
    return image, {v: i for i, v in enumerate(image)}


@dataclass(frozen=True)
class BlueberryCodec:
    inner_size: int
    delta: float
    seed: int = field(default=0, repr=False)

    def __post_init__(self) -> None:
        if self.inner_size < 1:
            raise ValueError("inner alphabet must be non-empty")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def outer_size(self) -> int:
        return math.ceil(self.inner_size / self.delta - 1e-9)

    def injection(self, round_index: int) -> tuple[int, ...]:
        return _injection(self.seed, round_index, self.outer_size, self.inner_size)[0]

    def encode(self, round_index: int, symbol: int) -> int:
        if not 0 <= symbol < self.inner_size:
            raise ValueError(f"symbol {symbol} outside the inner alphabet")
        return self.injection(round_index)[symbol]

    def decode(self, round_index: int, received):
        table = _injection(self.seed, round_index, self.outer_size, self.inner_size)[1]
        try:
            return table.get(received, DETECTED)
        except TypeError:
            return DETECTED


def bb_encode(codec: BlueberryCodec, round_index: int, symbol: int) -> int:
    return codec.encode(round_index, symbol)


def bb_decode(codec: BlueberryCodec, round_index: int, received):
    return codec.decode(round_index, received)


class ExchangeBlockParty(Party):
    """One party of a single three-round exchange block.

    ``flags`` records, per listening round, whether the reception decoded
    (``False``) or was caught as tampering (``True``).
    """

    def __init__(self, role: str, codec: BlueberryCodec, symbol: int, first_round: int = 1):
        self.role = role
        self.codec = codec
        self.symbol = symbol
        self.first_round = first_round
        self.step_index = 0
        self.decoded = None
        self.flags: list[bool] = []

    def _round(self) -> int:
        return self.first_round + self.step_index - 1

    def act(self):
        self.step_index += 1
        k = self.step_index
        mine = (k == 1 and self.role == "A") or (k == 2 and self.role == "B") or (k == 3 and self.decoded is not None)
        if k > 3:
            return LISTEN
        return Transmit(self.codec.encode(self._round(), self.symbol)) if mine else LISTEN

    def receive(self, symbol) -> None:
        if self.step_index > 3:
            return
        out = self.codec.decode(self._round(), symbol)
        self.flags.append(out is DETECTED)
        if out is not DETECTED and self.decoded is None:
            self.decoded = out

    def finalize(self):
        return DETECTED if self.decoded is None else self.decoded


@dataclass
class ExchangeBlockResult:
    alice: object
    bob: object
    alice_flags: tuple
    bob_flags: tuple

    def wrong(self, sigma_a: int, sigma_b: int) -> bool:
        """At least one party decoded a symbol other than the one sent."""
        return (self.alice is not DETECTED and self.alice != sigma_b) or \
               (self.bob is not DETECTED and self.bob != sigma_a)

    def both_correct(self, sigma_a: int, sigma_b: int) -> bool:
        return self.alice == sigma_b and self.bob == sigma_a


def exchange_block_pair(inner_size: int, delta: float) -> PartyPair:
    """Factories for :func:`~intercode.channel.run_session`; both parties take the shared seed."""
    outer = BlueberryCodec(inner_size, delta).outer_size
    return PartyPair(
        alice=lambda sym, seed: ExchangeBlockParty("A", BlueberryCodec(inner_size, delta, seed), sym),
        bob=lambda sym, seed: ExchangeBlockParty("B", BlueberryCodec(inner_size, delta, seed), sym),
        rounds=3,
        alphabet=range(outer),
    )


def adaptive_exchange_block(sigma_a: int, sigma_b: int, codec: BlueberryCodec, adversary=None,
                            error_rate: float = 1.0) -> ExchangeBlockResult:
    """Run one block over the channel with shared seed ``codec.seed``."""
    pair = exchange_block_pair(codec.inner_size, codec.delta)
    res = run_session(pair.alice, pair.bob, adversary, pair.config(error_rate), sigma_a, sigma_b,
                      seeds=(codec.seed, codec.seed))
    a, b = res.parties
    return ExchangeBlockResult(res.outputs[0], res.outputs[1], tuple(a.flags), tuple(b.flags))


__all__ = [
    "DETECTED", "BlueberryCodec", "ExchangeBlockParty", "ExchangeBlockResult",
    "adaptive_exchange_block", "bb_decode", "bb_encode", "exchange_block_pair",
]
