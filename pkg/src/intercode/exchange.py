"""Exchange-problem protocols: each party holds an input and must learn the other's.

Three schemes live here:

* :func:`exchange_quarter_baseline`, a fixed schedule where Alice sends a
  repetition codeword for the first half and Bob for the second half;
* :func:`exchange_two_sevenths`, the same idea with a one-bit adaptive tail
  decision driven by an error estimate;
* :func:`exchange_two_thirds_shared`, a three-part erasure-channel scheme
  where the final part is used by whoever still has something to say.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ERASURE, LISTEN, Party, PartyPair, Transmit
from .ecc import ConcatenatedCode, make_repetition_code, min_distance_decode


def _validate_bits(n: int, value: int) -> int:
    value = int(value)
    if not 0 <= value < (1 << n):
        raise ValueError(f"input {value} does not fit in {n} bits")
    return value


@dataclass(frozen=True)
class ExchangePhasePlan:
    """Round layout for the adaptive scheme (all boundaries integral)."""

    codeword_length: int

    @property
    def rounds(self) -> int:
        return 7 * self.codeword_length

    @property
    def alice_phase_end(self) -> int:
        return 3 * self.codeword_length

    @property
    def boundary(self) -> int:
        return 6 * self.codeword_length

    @property
    def threshold(self) -> int:
        return self.codeword_length

    @classmethod
    def for_params(cls, n: int, eps: float) -> "ExchangePhasePlan":
        if n < 1:
            raise ValueError("n must be >= 1")
        if not 0 < eps < 2 / 7:
            raise ValueError("eps must lie in (0, 2/7)")
        return cls(math.ceil(n / eps - 1e-9))


class TwoSeventhsParty(Party):
    """One side of the adaptive exchange.

    Attributes after the boundary round: ``estimate`` (error estimate of the
    phase reception) and ``tail_mode`` (``"transmit"`` or ``"listen"``).
    """

    def __init__(self, role: str, n: int, plan: ExchangePhasePlan, value: int):
        self.role = role
        self.plan = plan
        self.value = _validate_bits(n, value)
        L = plan.codeword_length
        self.c3 = ConcatenatedCode(make_repetition_code(n, L), 3)
        self.c4 = ConcatenatedCode(make_repetition_code(n, L), 4)
        self.round = 0
        self.received: list[int] = []
        self.estimate: Optional[int] = None
        self.tail_mode: Optional[str] = None
        self._phase_decode: Optional[int] = None

    def _sending_phase(self, r: int) -> bool:
        p = self.plan
        return r <= p.alice_phase_end if self.role == "A" else p.alice_phase_end < r <= p.boundary

    def act(self):
        self.round += 1
        r = self.round
        if r == self.plan.boundary + 1:
            self._decide_tail()
        if r <= self.plan.boundary:
            return Transmit(self.value) if self._sending_phase(r) else LISTEN
        return Transmit(self.value) if self.tail_mode == "transmit" else LISTEN

    def _decide_tail(self) -> None:
        msg, dist = min_distance_decode(self.c3, np.asarray(self.received[: self.c3.length], dtype=np.int64))
        self.estimate = dist
        self._phase_decode = msg
        self.tail_mode = "transmit" if dist < self.plan.threshold else "listen"

    def receive(self, symbol) -> None:
        self.received.append(int(symbol))

    def finalize(self) -> int:
        if self.tail_mode is None:
            self._decide_tail()
        if self.tail_mode == "transmit":
            return self._phase_decode
        word = np.asarray(self.received, dtype=np.int64)
        if word.size != self.c4.length:
            # a truncated session; fall back to the phase reception
            return self._phase_decode
        return min_distance_decode(self.c4, word)[0]


def exchange_two_sevenths(n: int, eps: float) -> PartyPair:
    plan = ExchangePhasePlan.for_params(n, eps)
    return PartyPair(
        alice=lambda value, seed: TwoSeventhsParty("A", n, plan, value),
        bob=lambda value, seed: TwoSeventhsParty("B", n, plan, value),
        rounds=plan.rounds,
        alphabet=range(1 << n),
    )


class HalfAndHalfParty(Party):
    def __init__(self, role: str, n: int, half: int, value: int):
        self.role = role
        self.value = _validate_bits(n, value)
        self.half = half
        self.code = make_repetition_code(n, half)
        self.round = 0
        self.received: list[int] = []

    def act(self):
        self.round += 1
        first = self.round <= self.half
        return Transmit(self.value) if first == (self.role == "A") else LISTEN

    def receive(self, symbol) -> None:
        self.received.append(int(symbol))

    def finalize(self) -> int:
        word = np.asarray(self.received, dtype=np.int64)
        if word.size != self.code.length:
            return 0
        return min_distance_decode(self.code, word)[0]


def exchange_quarter_baseline(n: int, eps: float) -> PartyPair:
    if not 0 < eps < 0.25:
        raise ValueError("eps must lie in (0, 1/4)")
    if n < 1:
        raise ValueError("n must be >= 1")
    half = math.ceil(n / eps - 1e-9)
    schedule = "A" * half + "B" * half
    return PartyPair(
        alice=lambda value, seed: HalfAndHalfParty("A", n, half, value),
        bob=lambda value, seed: HalfAndHalfParty("B", n, half, value),
        rounds=2 * half,
        schedule=schedule,
        alphabet=range(1 << n),
    )


class TwoThirdsParty(Party):
    """Three parts of ``part`` rounds; the last part is used only by a party that heard something."""

    def __init__(self, role: str, part: int, value: int):
        self.role = role
        self.part = part
        self.value = value
        self.round = 0
        self.learned = None
        self.erasures = 0

    def act(self):
        self.round += 1
        r, K = self.round, self.part
        if r <= K:
            return Transmit(self.value) if self.role == "A" else LISTEN
        if r <= 2 * K:
            return Transmit(self.value) if self.role == "B" else LISTEN
        return Transmit(self.value) if self.learned is not None else LISTEN

    def receive(self, symbol) -> None:
        if symbol is ERASURE:
            self.erasures += 1
        elif self.learned is None:
            self.learned = symbol

    def finalize(self):
        return self.learned


def exchange_two_thirds_shared(eps: float, q: int = 2) -> PartyPair:
    """Erasure-channel exchange of one symbol from ``range(q)`` in ``3/eps`` rounds."""
    if not 0 < eps < 2 / 3:
        raise ValueError("eps must lie in (0, 2/3)")
    part = round(1 / eps)
    if abs(part * eps - 1) > 1e-9:
        raise ValueError("1/eps must be an integer")

    def check(value):
        if value not in range(q):
            raise ValueError(f"input {value!r} outside range({q})")
        return value

    return PartyPair(
        alice=lambda value, seed: TwoThirdsParty("A", part, check(value)),
        bob=lambda value, seed: TwoThirdsParty("B", part, check(value)),
        rounds=3 * part,
        alphabet=range(q),
        mode="erasure",
    )


__all__ = [
    "ExchangePhasePlan", "HalfAndHalfParty", "TwoSeventhsParty", "TwoThirdsParty",
    "exchange_quarter_baseline", "exchange_two_sevenths", "exchange_two_thirds_shared",
]
