"""Edge-set simulators over a large alphabet.

Each transmission is a whole edge set in the wire format of
:mod:`intercode.canonical`.  On every reception a party merges the received
set with its own, follows the common path and either votes for the leaf it
reaches or extends its own set by one preferred edge.

:class:`NonAdaptiveParty` alternates senders for the whole session.
:class:`AdaptiveParty` does the same for six sevenths of the rounds, then
either keeps transmitting (when one leaf clearly dominates its votes) or only
listens.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from ..canonical import (
    EMPTY, ROOT, Frontier, Leaf, PreferredEdges, ProtocolTree, child, encode_edge_set, leaves,
    merge_and_follow, next_preferred_extension,
)
from ..channel import LISTEN, Party, PartyPair, Transmit


@dataclass
class SimState:
    side: PreferredEdges
    edges: frozenset = EMPTY
    votes: Counter = field(default_factory=Counter)
    weighted_votes: dict = field(default_factory=dict)
    w_empty: float = 0.0
    receptions: int = 0
    max_len: Optional[int] = None
    _encoded: Optional[str] = field(default=None, repr=False)

    @property
    def party(self) -> str:
        return self.side.party

    def message(self) -> str:
        if self._encoded is None:
            self._encoded = encode_edge_set(self.edges)
        return self._encoded

    def extend(self, edge) -> None:
        if edge is not None and edge not in self.edges:
            self.edges = self.edges | {edge}
            self._encoded = None


def absorb(state: SimState, received, extend: bool = True):
    """Merge one reception into ``state``; returns the path result."""
    result = merge_and_follow(state.edges, received, state.side.depth, state.side.branching, state.max_len)
    if isinstance(result, Leaf):
        state.votes[result.leaf] += 1
    elif extend and isinstance(result, Frontier):
        state.extend(next_preferred_extension(state.side, result.node))
    return result


def alg1_step(state: SimState, received=None) -> Transmit:
    """Process a reception (``None`` for the opening move) and return the next transmission."""
    if received is not None:
        state.receptions += 1
    absorb(state, received)
    return Transmit(state.message())


def _ranked(votes, depth: int, branching: int) -> list[str]:
    ranked = sorted(votes.items(), key=lambda kv: (-kv[1], kv[0]))
    return [leaf for leaf, count in ranked if count > 0]


def alg1_decode(state: SimState, mode="unique", k: Optional[int] = None):
    """Most voted leaf, or the ``k`` most voted leaves padded with the smallest unvoted ones."""
    depth, branching = state.side.depth, state.side.branching
    ranked = _ranked(state.votes, depth, branching)
    if mode == "unique":
        return ranked[0] if ranked else next(leaves(depth, branching))
    if mode != "list" or k is None or k < 1:
        raise ValueError("list decoding needs mode='list' and k >= 1")
    out = ranked[:k]
    if len(out) < k:
        chosen = set(out)
        for leaf in leaves(depth, branching):
            if len(out) == k:
                break
            if leaf not in chosen:
                out.append(leaf)
    return out


@dataclass(frozen=True)
class SimPlan:
    rounds: int
    list_size: int = 1
    boundary: Optional[int] = None

    @property
    def tail(self) -> int:
        return self.rounds - self.boundary if self.boundary is not None else 0

    @classmethod
    def non_adaptive(cls, n: int, eps: float) -> "SimPlan":
        _check(n, eps)
        return cls(2 * math.ceil(n / eps - 1e-9), list_size=math.ceil(1 / eps - 1e-9))

    @classmethod
    def adaptive(cls, n: int, eps: float) -> "SimPlan":
        _check(n, eps)
        rounds = 14 * math.ceil(2 * n / eps - 1e-9)
        return cls(rounds, boundary=6 * rounds // 7)


def _check(n: int, eps: float) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")


def alternating_schedule(rounds: int) -> str:
    return "".join("A" if r % 2 else "B" for r in range(1, rounds + 1))


class NonAdaptiveParty(Party):
    def __init__(self, side: PreferredEdges, plan: SimPlan, mode: str = "unique", max_len: Optional[int] = None):
        self.state = SimState(side, max_len=max_len if max_len is not None else 4 * plan.rounds)
        self.plan = plan
        self.mode = mode
        self.round = 0
        self._next: Optional[Transmit] = None

    def _my_turn(self, r: int) -> bool:
        return (r % 2 == 1) == (self.state.party == "A")

    def act(self):
        self.round += 1
        if not self._my_turn(self.round):
            return LISTEN
        if self._next is None:
            self._next = alg1_step(self.state, None)
        return self._next

    def receive(self, symbol) -> None:
        self._next = alg1_step(self.state, symbol)

    def finalize(self):
        if self.mode == "list":
            return alg1_decode(self.state, "list", self.plan.list_size)
        return alg1_decode(self.state)


def alg1_pair(n_or_tree, eps: float, mode: str = "unique") -> PartyPair:
    """Factories taking a party's :class:`PreferredEdges` as input."""
    n = n_or_tree.depth if isinstance(n_or_tree, ProtocolTree) else n_or_tree
    plan = SimPlan.non_adaptive(n, eps)
    return PartyPair(
        alice=lambda side, seed: NonAdaptiveParty(side, plan, mode),
        bob=lambda side, seed: NonAdaptiveParty(side, plan, mode),
        rounds=plan.rounds,
        schedule=alternating_schedule(plan.rounds),
        message_size_limit=4 * plan.rounds,
    )


class AdaptiveParty(Party):
    """Alternating exchange up to the boundary, then a one-way tail.

    After the boundary ``safe`` tells whether the party's leading leaf had at
    most ``rounds / 7`` competing votes and ``boundary_leaf`` holds that leaf.
    """

    def __init__(self, side: PreferredEdges, plan: SimPlan, max_len: Optional[int] = None):
        if plan.boundary is None or plan.rounds % 14:
            raise ValueError("adaptive plans need a round count divisible by 14")
        self.state = SimState(side, max_len=max_len if max_len is not None else 4 * plan.rounds)
        self.plan = plan
        self.round = 0
        self._next: Optional[Transmit] = None
        self.safe: Optional[bool] = None
        self.boundary_leaf: Optional[str] = None
        self.boundary_votes: Optional[tuple[int, int]] = None

    def act(self):
        self.round += 1
        r = self.round
        if r <= self.plan.boundary:
            if (r % 2 == 1) != (self.state.party == "A"):
                return LISTEN
            if self._next is None:
                self._next = alg1_step(self.state, None)
            return self._next
        if self.safe is None:
            self._decide()
        return Transmit(self.state.message()) if self.safe else LISTEN

    def _decide(self) -> None:
        votes = self.state.votes
        t = sum(votes.values())
        ranked = _ranked(votes, self.state.side.depth, self.state.side.branching)
        s = votes[ranked[0]] if ranked else 0
        self.boundary_votes = (s, t)
        self.boundary_leaf = ranked[0] if ranked else None
        self.safe = bool(ranked) and s >= t - self.plan.rounds / 7

    def receive(self, symbol) -> None:
        if self.round <= self.plan.boundary:
            self._next = alg1_step(self.state, symbol)
        else:
            self.state.receptions += 1
            absorb(self.state, symbol, extend=False)

    def finalize(self):
        if self.safe is None:
            self._decide()
        if self.safe:
            return self.boundary_leaf
        return alg1_decode(self.state)


def alg2_run(n_or_tree, eps: float) -> PartyPair:
    n = n_or_tree.depth if isinstance(n_or_tree, ProtocolTree) else n_or_tree
    plan = SimPlan.adaptive(n, eps)
    return PartyPair(
        alice=lambda side, seed: AdaptiveParty(side, plan),
        bob=lambda side, seed: AdaptiveParty(side, plan),
        rounds=plan.rounds,
        message_size_limit=4 * plan.rounds,
    )


def forge_wrong_path(receiver: PreferredEdges, counterpart: PreferredEdges, choice: int = 0) -> frozenset:
    """An edge set that sends ``receiver`` to a leaf off the common path.

    The path follows the receiver's own preferred edges (so the union with
    any subset of them never conflicts) and the counterpart's, except at the first counterpart node
    where it takes a different label; ``choice`` picks among those labels and
    among later free branches.
    """
    depth, b = receiver.depth, receiver.branching
    node, edges, deviated = ROOT, set(), False
    offset = choice
    while len(node) < depth:
        if receiver.owns(node):
            label = receiver.edges[node]
        else:
            true = counterpart.edges[node]
            if not deviated:
                label = (true + 1 + offset % (b - 1)) % b
                offset //= (b - 1)
                deviated = True
            else:
                label = true
        edges.add((node, label))
        node = child(node, label)
    return frozenset(edges)


def wrong_leaf(receiver: PreferredEdges, counterpart: PreferredEdges, choice: int = 0) -> str:
    forged = forge_wrong_path(receiver, counterpart, choice)
    res = merge_and_follow(receiver.as_edge_set(), forged, receiver.depth, receiver.branching)
    assert isinstance(res, Leaf)
    return res.leaf


__all__ = [
    "AdaptiveParty", "NonAdaptiveParty", "SimPlan", "SimState", "absorb", "alg1_decode", "alg1_pair",
    "alg1_step", "alg2_run", "alternating_schedule", "forge_wrong_path", "wrong_leaf",
]
