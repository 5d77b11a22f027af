"""Block-coded simulators for a small channel alphabet.

Every edge set is packed into ``k`` field symbols and sent as one
Reed-Solomon block whose relative distance is at least ``1 - eps/10``.  The
receiver list-decodes the block with radius ``1 - eps/3`` and feeds every
candidate through the same merge/extend/vote step as the large-alphabet
scheme.  Votes are weighted by ``max(1 - 2 * delta, 0)`` where ``delta`` is
the candidate's relative distance to the received word; candidates that clash
with the receiver's own edges add their weight to ``w_empty`` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..canonical import (
    LABELS, PASS, UP, Frontier, Leaf, PreferredEdges, decode_edge_set, encode_edge_set,
    leaves, merge_and_follow, next_preferred_extension,
)
from ..channel import LISTEN, BlockChannelConfig, Party, Transmit
from ..ecc import BlockCode, ReceivedBlock, ReedSolomonCode, list_decode, vote_weight
from .large_alphabet import SimState, alternating_schedule

FIELD_PRIME = (1 << 31) - 1


def edge_capacity(depth: int, branching: int) -> int:
    """Characters needed to encode any edge set of the tree (three per edge at most)."""
    edges = sum(branching ** level for level in range(1, depth + 1))
    return 3 * edges


class EdgeSetCode(BlockCode):
    """Reed-Solomon code whose messages are edge sets of a fixed tree shape.

    The encoded string is read as a little-endian number in base
    ``branching + 3`` (digit 0 pads the end) and split into ``k`` base-``q``
    symbols.
    """

    def __init__(self, depth: int, branching: int, eps: float, q: int = FIELD_PRIME):
        self.depth = depth
        self.branching = branching
        self.eps = eps
        self.capacity = edge_capacity(depth, branching)
        self.base = branching + 3
        self._digit = {c: i + 1 for i, c in enumerate(LABELS[:branching] + UP + PASS)}
        self._char = {v: k for k, v in self._digit.items()}
        bits = self.capacity * math.log2(self.base)
        k = max(1, math.ceil(bits / math.log2(q) - 1e-12))
        length = max(k, math.ceil(10 * (k - 1) / eps - 1e-9))
        self.rs = ReedSolomonCode(k, length, q)
        self.k, self.length, self.q = k, length, q
        self.min_distance = self.rs.min_distance
        self.num_messages = None
        self._cache: dict = {}

    def message_id(self, message) -> int:
        text = encode_edge_set(message)
        if len(text) > self.capacity:
            raise ValueError("edge set exceeds the code capacity")
        return sum(self._digit[c] * self.base ** i for i, c in enumerate(text))

    def message_from_id(self, mid: int) -> frozenset:
        chars = []
        while mid:
            mid, d = divmod(mid, self.base)
            chars.append(self._char[d])
        out = decode_edge_set("".join(chars), self.depth, self.branching)
        if not isinstance(out, frozenset):
            raise ValueError(f"id does not encode an edge set: {out}")
        return out

    def encode(self, message) -> np.ndarray:
        key = frozenset(message)
        word = self._cache.get(key)
        if word is None:
            mid = self.message_id(key)
            word = self.rs.encode([(mid // self.q ** i) % self.q for i in range(self.k)])
            word.setflags(write=False)
            if len(self._cache) < 1 << 16:
                self._cache[key] = word
        return word


_CODES: dict = {}


def edge_set_code(depth: int, branching: int, eps: float) -> EdgeSetCode:
    key = (depth, branching, eps)
    if key not in _CODES:
        _CODES[key] = EdgeSetCode(depth, branching, eps)
    return _CODES[key]


@dataclass(frozen=True)
class BlockPlan:
    blocks: int
    eps: float
    boundary: Optional[int] = None
    list_cap: int = 3

    @property
    def radius(self) -> float:
        return 1 - self.eps / 3

    @property
    def list_size(self) -> int:
        return math.ceil(1 / self.eps ** 2 - 1e-9)

    @classmethod
    def non_adaptive(cls, n: int, eps: float) -> "BlockPlan":
        return cls(2 * math.ceil(n / eps - 1e-9), eps)

    @classmethod
    def adaptive(cls, n: int, eps: float) -> "BlockPlan":
        blocks = 14 * math.ceil(2 * math.ceil(n / eps - 1e-9) / 14)
        return cls(blocks, eps, boundary=6 * blocks // 7)


def block_step(state: SimState, block: ReceivedBlock, code: BlockCode, plan: BlockPlan, extend: bool = True) -> list:
    """Absorb every list-decoded candidate of ``block``; returns ``(candidate, delta, result)`` triples."""
    out = []
    state.receptions += 1
    side = state.side
    for cand, delta in list_decode(code, block, plan.radius, plan.list_cap):
        w = vote_weight(delta)
        res = merge_and_follow(state.edges, cand, side.depth, side.branching)
        if isinstance(res, Leaf):
            state.votes[res.leaf] += 1
            state.weighted_votes[res.leaf] = state.weighted_votes.get(res.leaf, 0.0) + w
        elif isinstance(res, Frontier):
            if extend:
                state.extend(next_preferred_extension(side, res.node))
        else:
            state.w_empty += w
        out.append((cand, delta, res))
    return out


def _top_two(weighted: dict) -> tuple[Optional[str], float, float]:
    ranked = sorted(weighted.items(), key=lambda kv: (-kv[1], kv[0]))
    if not ranked:
        return None, 0.0, 0.0
    second = ranked[1][1] if len(ranked) > 1 else 0.0
    return ranked[0][0], ranked[0][1], second


def confidence(state: SimState, blocks: int) -> float:
    _, wu, wv = _top_two(state.weighted_votes)
    return (wu + state.w_empty - wv) / blocks


def block_decode(state: SimState, mode: str = "unique", list_size: Optional[int] = None):
    depth, b = state.side.depth, state.side.branching
    if mode == "unique":
        leaf, _, _ = _top_two({k: v for k, v in state.weighted_votes.items() if v > 0})
        return leaf if leaf is not None else next(leaves(depth, b))
    if mode != "list" or not list_size:
        raise ValueError("list mode needs a list size")
    ranked = [leaf for leaf, c in sorted(state.votes.items(), key=lambda kv: (-kv[1], kv[0])) if c > 0]
    out = ranked[:list_size]
    for leaf in leaves(depth, b):
        if len(out) >= list_size:
            break
        if leaf not in out:
            out.append(leaf)
    return out


class BlockParty(Party):
    """Alternating block sender (Alice on odd blocks)."""

    def __init__(self, side: PreferredEdges, code: BlockCode, plan: BlockPlan, mode: str = "unique"):
        self.state = SimState(side)
        self.code = code
        self.plan = plan
        self.mode = mode
        self.slot = 0
        self._opened = False

    def _my_turn(self) -> bool:
        return (self.slot % 2 == 1) == (self.state.party == "A")

    def _open(self) -> None:
        if not self._opened:
            self._opened = True
            res = merge_and_follow(self.state.edges, None, self.state.side.depth, self.state.side.branching)
            if isinstance(res, Frontier):
                self.state.extend(next_preferred_extension(self.state.side, res.node))

    def act(self):
        self.slot += 1
        if not self._my_turn():
            return LISTEN
        self._open()
        return Transmit(self.state.edges)

    def receive(self, block) -> None:
        self._opened = True
        block_step(self.state, block, self.code, self.plan)

    def finalize(self):
        if self.mode == "list":
            return block_decode(self.state, "list", self.plan.list_size)
        return block_decode(self.state)


class AdaptiveBlockParty(BlockParty):
    """Block version of the adaptive tail: safe iff confidence exceeds 1/7."""

    def __init__(self, side: PreferredEdges, code: BlockCode, plan: BlockPlan):
        if plan.boundary is None or plan.blocks % 14:
            raise ValueError("adaptive block plans need a block count divisible by 14")
        super().__init__(side, code, plan)
        self.safe: Optional[bool] = None
        self.psi: Optional[float] = None
        self.boundary_leaf: Optional[str] = None

    def act(self):
        self.slot += 1
        if self.slot <= self.plan.boundary:
            if not self._my_turn():
                return LISTEN
            self._open()
            return Transmit(self.state.edges)
        if self.safe is None:
            self._decide()
        return Transmit(self.state.edges) if self.safe else LISTEN

    def _decide(self) -> None:
        self.psi = confidence(self.state, self.plan.blocks)
        self.boundary_leaf = _top_two(self.state.weighted_votes)[0]
        self.safe = self.boundary_leaf is not None and self.psi > 1 / 7

    def receive(self, block) -> None:
        self._opened = True
        block_step(self.state, block, self.code, self.plan, extend=self.slot <= self.plan.boundary)

    def finalize(self):
        if self.safe is None:
            self._decide()
        if self.safe:
            return self.boundary_leaf
        return block_decode(self.state)


@dataclass
class BlockScheme:
    """Factories plus the block channel configuration they expect."""

    alice: object
    bob: object
    code: EdgeSetCode
    plan: BlockPlan
    schedule: Optional[str]

    @property
    def rounds(self) -> int:
        return self.plan.blocks * self.code.length

    def config(self, error_rate: float = 0.0) -> BlockChannelConfig:
        return BlockChannelConfig(self.plan.blocks, self.code, error_rate, self.schedule)


def block_scheme(n: int, eps: float, branching: int = 2, mode: str = "unique") -> BlockScheme:
    """``mode`` is ``unique``, ``list`` or ``adaptive``."""
    if n < 1 or not 0 < eps < 1:
        raise ValueError("need n >= 1 and eps in (0, 1)")
    code = edge_set_code(n, branching, eps)
    if mode == "adaptive":
        plan = BlockPlan.adaptive(n, eps)
        return BlockScheme(lambda side, seed: AdaptiveBlockParty(side, code, plan),
                           lambda side, seed: AdaptiveBlockParty(side, code, plan),
                           code, plan, None)
    if mode not in ("unique", "list"):
        raise ValueError(f"unknown block mode {mode!r}")
    plan = BlockPlan.non_adaptive(n, eps)
    return BlockScheme(lambda side, seed: BlockParty(side, code, plan, mode),
                       lambda side, seed: BlockParty(side, code, plan, mode),
                       code, plan, alternating_schedule(plan.blocks))


__all__ = [
    "AdaptiveBlockParty", "BlockParty", "BlockPlan", "BlockScheme", "EdgeSetCode", "block_decode",
    "block_scheme", "block_step", "confidence", "edge_capacity", "edge_set_code",
]
