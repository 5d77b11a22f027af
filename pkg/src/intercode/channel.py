"""Round-based adversarial channel.

Each round both parties decide to transmit or listen.  The adversary sees both
decisions (and the transmitted symbol) and picks what every listener hears:

* both transmit: nothing is delivered and nobody's view changes;
* both listen: the adversary feeds each party any symbol for free
  (0 by default, ``ERASURE`` in erasure mode);
* one transmits: the listener hears the symbol unless the adversary replaces
  it, which costs one unit of budget.

Interventions beyond the budget ``floor(error_rate * rounds)`` are dropped and
flagged in the round record instead of aborting the session.

A second engine, :func:`run_block_session`, carries one codeword per slot.
Costs there are counted per coordinate and receptions are
:class:`~intercode.ecc.ReceivedBlock` objects.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Container
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .ecc import JUNK, BlockCode, ReceivedBlock

_EPS = 1e-9
DEFAULT_BOTH_LISTEN = 0


class _Erasure:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ERASURE"

    def __str__(self) -> str:
        return "⊥"

    def __reduce__(self):
        return (_Erasure, ())


ERASURE = _Erasure()


@dataclass(frozen=True)
class Transmit:
    symbol: Any


class _Listen:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "LISTEN"

    def __reduce__(self):
        return (_Listen, ())


LISTEN = _Listen()
RoundAction = Any  # Transmit | LISTEN

_START = object()


class ScheduleViolation(RuntimeError):
    pass


class AlphabetViolation(ValueError):
    pass


class Party(ABC):
    """A participant's state machine.

    The engine calls :meth:`act` at the start of every round and, in rounds
    where the party listens, :meth:`receive` with what was delivered.
    """

    @abstractmethod
    def act(self) -> RoundAction: ...

    def receive(self, symbol) -> None:
        pass

    @abstractmethod
    def finalize(self): ...

    def step(self, reception=_START) -> RoundAction:
        """Feed the previous round's reception (if any) and return the next action."""
        if reception is not _START:
            self.receive(reception)
        return self.act()


PartyFactory = Callable[[Any, int], Party]


def spawn_simulated_party(factory: PartyFactory, party_input, seed: int) -> Party:
    """A fresh, independent instance for adversary-side simulation."""
    return factory(party_input, seed)


def _budget(error_rate: float, units: int) -> int:
    return int(math.floor(error_rate * units + _EPS))


@dataclass(frozen=True)
class ChannelConfig:
    rounds: int
    error_rate: float = 0.0
    alphabet: Optional[Container] = None
    mode: str = "corruption"
    schedule: Optional[str] = None
    message_size_limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.rounds < 0:
            raise ValueError("rounds must be non-negative")
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError(f"error_rate must lie in [0, 1], got {self.error_rate}")
        if self.mode not in ("corruption", "erasure"):
            raise ValueError(f"unknown channel mode {self.mode!r}")
        if self.schedule is not None:
            if len(self.schedule) != self.rounds or set(self.schedule) - {"A", "B"}:
                raise ValueError("schedule must be a string of 'A'/'B' with one entry per round")
        if self.message_size_limit is None:
            object.__setattr__(self, "message_size_limit", 4 * self.rounds)

    @property
    def budget(self) -> int:
        return _budget(self.error_rate, self.rounds)

    def with_rate(self, error_rate: float) -> "ChannelConfig":
        return ChannelConfig(self.rounds, error_rate, self.alphabet, self.mode,
                             self.schedule, self.message_size_limit)


@dataclass(frozen=True)
class Intervention:
    """What the adversary wants each listener to hear (``None`` means leave it alone)."""

    to_alice: Any = None
    to_bob: Any = None


NO_INTERVENTION = Intervention()


@dataclass(frozen=True)
class RoundRecord:
    index: int
    alice_action: RoundAction
    bob_action: RoundAction
    intervention: str
    delivered_to_alice: Any
    delivered_to_bob: Any
    cost: int
    dropped: bool = False


@dataclass
class SessionInfo:
    config: Any
    alice_factory: PartyFactory
    bob_factory: PartyFactory
    alice_input: Any
    bob_input: Any
    code: Optional[BlockCode] = None


@dataclass
class RoundContext:
    index: int
    alice_action: RoundAction
    bob_action: RoundAction
    records: Sequence[RoundRecord]
    spent: int
    budget: int
    config: Any
    alice_input: Any
    bob_input: Any

    @property
    def remaining(self) -> int:
        return self.budget - self.spent

    def listener(self) -> Optional[str]:
        """The single listening party when exactly one party transmits."""
        a_tx = isinstance(self.alice_action, Transmit)
        b_tx = isinstance(self.bob_action, Transmit)
        if a_tx and not b_tx:
            return "B"
        if b_tx and not a_tx:
            return "A"
        return None


class Adversary:
    """Base strategy: never intervenes."""

    def start(self, info: SessionInfo) -> None:
        self.info = info

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        return None

    def observe(self, record: RoundRecord) -> None:
        pass


NullAdversary = Adversary


@dataclass
class SessionResult:
    records: tuple
    cost_total: int
    budget: int
    alice_view: tuple
    bob_view: tuple
    outputs: tuple
    parties: tuple = field(default=(), compare=False, repr=False)

    def view(self, party: str) -> tuple:
        return self.alice_view if party == "A" else self.bob_view

    def trace(self) -> str:
        """One tab-separated line per round.

        Columns: round, alice action, bob action, intervention, delivered to
        alice, delivered to bob, cost, dropped.  Actions print as ``T:<sym>``
        or ``L``; absent deliveries as ``-``.
        """
        lines = ["round\talice\tbob\tintervention\tto_alice\tto_bob\tcost\tdropped"]
        for r in self.records:
            lines.append("\t".join([
                str(r.index), _fmt_action(r.alice_action), _fmt_action(r.bob_action),
                r.intervention, _fmt_symbol(r.delivered_to_alice), _fmt_symbol(r.delivered_to_bob),
                str(r.cost), "1" if r.dropped else "0",
            ]))
        return "\n".join(lines) + "\n"


def _fmt_symbol(sym) -> str:
    if sym is None:
        return "-"
    if isinstance(sym, ReceivedBlock):
        return "block[" + ",".join(map(str, np.asarray(sym.word).tolist())) + "]"
    if isinstance(sym, np.ndarray):
        return "[" + ",".join(map(str, sym.tolist())) + "]"
    return repr(sym) if isinstance(sym, str) else str(sym)


def _fmt_action(action) -> str:
    if isinstance(action, Transmit):
        return "T:" + _fmt_symbol(action.symbol)
    return "L"


def _check_action(action, who: str, cfg: ChannelConfig, index: int) -> None:
    if isinstance(action, Transmit):
        if cfg.schedule is not None and cfg.schedule[index - 1] != who:
            raise ScheduleViolation(f"{who} transmitted in round {index}, scheduled sender is {cfg.schedule[index - 1]}")
        if cfg.alphabet is not None and action.symbol not in cfg.alphabet:
            raise AlphabetViolation(f"{who} transmitted {action.symbol!r} outside the channel alphabet")
    elif action is LISTEN:
        if cfg.schedule is not None and cfg.schedule[index - 1] == who:
            raise ScheduleViolation(f"{who} listened in round {index} but is the scheduled sender")
    else:
        raise TypeError(f"party {who} returned {action!r}, expected Transmit or LISTEN")


def _check_replacement(value, cfg: ChannelConfig) -> None:
    if cfg.mode == "erasure":
        if value is not ERASURE:
            raise AlphabetViolation(f"erasure channel only delivers ⊥, adversary chose {value!r}")
    elif value is not ERASURE and cfg.alphabet is not None and value not in cfg.alphabet:
        raise AlphabetViolation(f"adversary delivered {value!r} outside the channel alphabet")
    elif value is ERASURE:
        raise AlphabetViolation("⊥ is only available on erasure channels")


def run_session(alice_factory: PartyFactory, bob_factory: PartyFactory, adversary: Optional[Adversary],
                cfg: ChannelConfig, alice_input, bob_input, seeds=(0, 0)) -> SessionResult:
    adversary = adversary if adversary is not None else Adversary()
    alice = alice_factory(alice_input, seeds[0])
    bob = bob_factory(bob_input, seeds[1])
    adversary.start(SessionInfo(cfg, alice_factory, bob_factory, alice_input, bob_input))
    default = ERASURE if cfg.mode == "erasure" else DEFAULT_BOTH_LISTEN
    budget = cfg.budget
    records: list[RoundRecord] = []
    a_view: list = []
    b_view: list = []
    spent = 0
    for index in range(1, cfg.rounds + 1):
        a_act = alice.act()
        b_act = bob.act()
        _check_action(a_act, "A", cfg, index)
        _check_action(b_act, "B", cfg, index)
        ctx = RoundContext(index, a_act, b_act, records, spent, budget, cfg, alice_input, bob_input)
        iv = adversary.intervene(ctx) or NO_INTERVENTION
        to_a = to_b = None
        cost = 0
        dropped = False
        kind = "none"
        a_tx = a_act is not LISTEN
        b_tx = b_act is not LISTEN
        if a_tx and b_tx:
            pass
        elif not a_tx and not b_tx:
            to_a = default if iv.to_alice is None else iv.to_alice
            to_b = default if iv.to_bob is None else iv.to_bob
            if cfg.mode == "erasure":
                _check_replacement(to_a, cfg)
                _check_replacement(to_b, cfg)
            elif iv.to_alice is not None or iv.to_bob is not None:
                for v in (iv.to_alice, iv.to_bob):
                    if v is not None:
                        _check_replacement(v, cfg)
                kind = "replace-both-free"
        else:
            sent = a_act.symbol if a_tx else b_act.symbol
            wanted = iv.to_bob if a_tx else iv.to_alice
            delivered = sent
            if wanted is not None and not _same(wanted, sent):
                _check_replacement(wanted, cfg)
                if spent + 1 <= budget:
                    delivered = wanted
                    cost = 1
                    kind = "erase" if wanted is ERASURE else ("replace-to-bob" if a_tx else "replace-to-alice")
                else:
                    dropped = True
                    kind = "dropped"
            if a_tx:
                to_b = delivered
            else:
                to_a = delivered
        spent += cost
        if to_a is not None:
            alice.receive(to_a)
            a_view.append((index, to_a))
        if to_b is not None:
            bob.receive(to_b)
            b_view.append((index, to_b))
        rec = RoundRecord(index, a_act, b_act, kind, to_a, to_b, cost, dropped)
        records.append(rec)
        adversary.observe(rec)
    return SessionResult(tuple(records), spent, budget, tuple(a_view), tuple(b_view),
                         (alice.finalize(), bob.finalize()), (alice, bob))


def _same(a, b) -> bool:
    if a is b:
        return True
    try:
        return bool(a == b)
    except (TypeError, ValueError):
        return False


@dataclass
class PartyPair:
    """Two party factories plus the channel shape they expect."""

    alice: PartyFactory
    bob: PartyFactory
    rounds: int
    schedule: Optional[str] = None
    alphabet: Optional[Container] = None
    mode: str = "corruption"
    message_size_limit: Optional[int] = None

    def config(self, error_rate: float = 0.0) -> ChannelConfig:
        return ChannelConfig(self.rounds, error_rate, self.alphabet, self.mode,
                             self.schedule, self.message_size_limit)


# -- block slots ------------------------------------------------------------------

@dataclass(frozen=True)
class BlockChannelConfig:
    """A session of ``blocks`` slots, each carrying one codeword of ``code``.

    The budget counts coordinates: ``floor(error_rate * blocks * code.length)``.
    """

    blocks: int
    code: BlockCode
    error_rate: float = 0.0
    schedule: Optional[str] = None
    max_constituents: int = 3

    def __post_init__(self) -> None:
        if self.blocks < 0:
            raise ValueError("blocks must be non-negative")
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError(f"error_rate must lie in [0, 1], got {self.error_rate}")
        if self.schedule is not None and (len(self.schedule) != self.blocks or set(self.schedule) - {"A", "B"}):
            raise ValueError("schedule must have one 'A'/'B' entry per block")

    @property
    def rounds(self) -> int:
        return self.blocks * self.code.length

    @property
    def budget(self) -> int:
        return _budget(self.error_rate, self.rounds)

    def with_rate(self, error_rate: float) -> "BlockChannelConfig":
        return BlockChannelConfig(self.blocks, self.code, error_rate, self.schedule, self.max_constituents)


@dataclass(frozen=True)
class Blend:
    """Adversarial received word for one listener.

    ``extra`` lists the messages whose codewords the adversary copied
    coordinates from; coordinates matching none of them (nor the sent
    codeword) must be :data:`~intercode.ecc.JUNK`.
    """

    word: np.ndarray
    extra: tuple = ()


@dataclass
class BlockContext(RoundContext):
    sent_to_alice: Optional[np.ndarray] = None
    sent_to_bob: Optional[np.ndarray] = None
    code: Optional[BlockCode] = None


def _junk_block(length: int) -> ReceivedBlock:
    return ReceivedBlock(np.full(length, JUNK, dtype=np.int64), [])


def _blend_block(blend, sent_msg, sent_word: Optional[np.ndarray], cfg: BlockChannelConfig) -> ReceivedBlock:
    if not isinstance(blend, Blend):
        raise TypeError(f"block channel interventions must be Blend objects, got {type(blend).__name__}")
    word = np.asarray(blend.word, dtype=np.int64)
    constituents = ([sent_msg] if sent_word is not None else []) + list(blend.extra)
    block = ReceivedBlock(word, constituents)
    block.check(cfg.code, cfg.max_constituents)
    return block


def run_block_session(alice_factory: PartyFactory, bob_factory: PartyFactory, adversary: Optional[Adversary],
                      cfg: BlockChannelConfig, alice_input, bob_input, seeds=(0, 0)) -> SessionResult:
    """Slot-level engine: one action per party per block, costs per coordinate."""
    adversary = adversary if adversary is not None else Adversary()
    code = cfg.code
    alice = alice_factory(alice_input, seeds[0])
    bob = bob_factory(bob_input, seeds[1])
    adversary.start(SessionInfo(cfg, alice_factory, bob_factory, alice_input, bob_input, code))
    budget = cfg.budget
    records: list[RoundRecord] = []
    a_view: list = []
    b_view: list = []
    spent = 0
    for index in range(1, cfg.blocks + 1):
        a_act = alice.act()
        b_act = bob.act()
        for who, act in (("A", a_act), ("B", b_act)):
            if not (isinstance(act, Transmit) or act is LISTEN):
                raise TypeError(f"party {who} returned {act!r}")
            if cfg.schedule is not None and isinstance(act, Transmit) != (cfg.schedule[index - 1] == who):
                raise ScheduleViolation(f"{who} deviated from the block schedule in block {index}")
        a_tx = a_act is not LISTEN
        b_tx = b_act is not LISTEN
        a_word = code.encode(a_act.symbol) if a_tx else None
        b_word = code.encode(b_act.symbol) if b_tx else None
        ctx = BlockContext(index, a_act, b_act, records, spent, budget, cfg, alice_input, bob_input,
                           sent_to_alice=b_word if not a_tx else None,
                           sent_to_bob=a_word if not b_tx else None, code=code)
        iv = adversary.intervene(ctx) or NO_INTERVENTION
        to_a = to_b = None
        cost = 0
        dropped = False
        kind = "none"
        if a_tx and b_tx:
            pass
        elif not a_tx and not b_tx:
            to_a = _blend_block(iv.to_alice, None, None, cfg) if iv.to_alice is not None else _junk_block(code.length)
            to_b = _blend_block(iv.to_bob, None, None, cfg) if iv.to_bob is not None else _junk_block(code.length)
            if iv.to_alice is not None or iv.to_bob is not None:
                kind = "replace-both-free"
        else:
            sent_msg = a_act.symbol if a_tx else b_act.symbol
            sent_word = a_word if a_tx else b_word
            wanted = iv.to_bob if a_tx else iv.to_alice
            block = ReceivedBlock(sent_word, [sent_msg])
            if wanted is not None:
                candidate = _blend_block(wanted, sent_msg, sent_word, cfg)
                c = int(np.count_nonzero(candidate.word != sent_word))
                if c and spent + c <= budget:
                    block, cost = candidate, c
                    kind = "replace-to-bob" if a_tx else "replace-to-alice"
                elif c:
                    dropped = True
                    kind = "dropped"
            if a_tx:
                to_b = block
            else:
                to_a = block
        spent += cost
        if to_a is not None:
            alice.receive(to_a)
            a_view.append((index, to_a))
        if to_b is not None:
            bob.receive(to_b)
            b_view.append((index, to_b))
        rec = RoundRecord(index, a_act, b_act, kind, to_a, to_b, cost, dropped)
        records.append(rec)
        adversary.observe(rec)
    return SessionResult(tuple(records), spent, budget, tuple(a_view), tuple(b_view),
                         (alice.finalize(), bob.finalize()), (alice, bob))


def views_identical(a: Sequence, b: Sequence) -> bool:
    """Exact comparison of two reception sequences, numpy-aware."""
    if len(a) != len(b):
        return False
    for (ra, sa), (rb, sb) in zip(a, b):
        if ra != rb:
            return False
        if isinstance(sa, ReceivedBlock) or isinstance(sb, ReceivedBlock):
            if not (isinstance(sa, ReceivedBlock) and isinstance(sb, ReceivedBlock)):
                return False
            if not np.array_equal(sa.word, sb.word):
                return False
        elif not _same(sa, sb):
            return False
    return True


__all__ = [
    "ERASURE", "LISTEN", "AlphabetViolation", "Adversary", "Blend", "BlockChannelConfig", "BlockContext",
    "ChannelConfig", "Intervention", "NO_INTERVENTION", "NullAdversary", "Party", "PartyFactory",
    "PartyPair", "RoundAction", "RoundContext", "RoundRecord", "ScheduleViolation", "SessionInfo",
    "SessionResult", "Transmit", "run_block_session", "run_session", "spawn_simulated_party",
    "views_identical",
]
