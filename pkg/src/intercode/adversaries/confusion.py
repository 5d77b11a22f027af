"""Lockstep simulation of several settings for indistinguishability attacks.

A *world* is one input assignment ``(alice_input, bob_input)``.  A
:class:`Link` ties a target party to two worlds that differ only in the
counterpart's input.  Every round the engine looks at what the counterpart
does in both worlds and hands the target the same symbol in both:

* no counterpart transmits: the target gets the fixed both-listen symbol;
* exactly one transmits: the target gets that symbol in both worlds (free in
  the world where both parties listen, untouched in the other);
* both transmit: the link's policy picks a world and the other world pays for
  the replacement (nothing is paid when the two symbols agree).

Parties not covered by a link hear the true symbol, or the both-listen symbol.
As long as each world's cost stays within its budget the target's receptions
coincide across the linked worlds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from ..channel import (
    LISTEN, Adversary, Intervention, PartyPair, RoundContext, SessionInfo, Transmit, spawn_simulated_party,
)

Policy = Callable[[int, int, int], bool]  # (round, k, rounds) -> prefer the lo world


def prefer_lo_while_count_at_most(limit: float) -> Policy:
    """The first ``limit`` contested receptions come from the lo world."""
    return lambda r, k, n: k <= limit + 1e-9


def prefer_lo_until_round(last: float) -> Policy:
    return lambda r, k, n: r <= last + 1e-9


@dataclass(frozen=True)
class Link:
    target: str
    lo: int
    hi: int
    policy: Policy


@dataclass
class LinkStats:
    contested: int = 0
    contested_by_round: list = field(default_factory=list)
    target_listens: int = 0
    broken_at: Optional[int] = None


def _symbol(action):
    return action.symbol if isinstance(action, Transmit) else None


class ConfusionEngine:
    """Advances every world by one round per :meth:`step`.

    Worlds listed in ``external`` have no simulated parties; their actions are
    passed to :meth:`step` by the caller (the live session).
    """

    def __init__(self, pair: PartyPair, worlds: Sequence[tuple], links: Sequence[Link], rounds: int,
                 seeds: Sequence[tuple] = (), external: Sequence[int] = (), both_listen_symbol=0):
        self.pair = pair
        self.worlds = list(worlds)
        self.links = list(links)
        self.rounds = rounds
        self.default = both_listen_symbol
        self.round = 0
        self.parties: list = []
        for w, (a_in, b_in) in enumerate(self.worlds):
            if w in external:
                self.parties.append(None)
                continue
            sa, sb = seeds[w] if w < len(seeds) else (0, 0)
            self.parties.append((spawn_simulated_party(pair.alice, a_in, sa),
                                 spawn_simulated_party(pair.bob, b_in, sb)))
        self.costs = [0] * len(self.worlds)
        self.views = [([], []) for _ in self.worlds]
        self.stats = [LinkStats() for _ in self.links]

    def step(self, given: Optional[dict] = None) -> list:
        """Return ``[(to_alice, to_bob)]`` per world for the next round."""
        self.round += 1
        r = self.round
        actions = []
        for w in range(len(self.worlds)):
            if given and w in given:
                actions.append(given[w])
            elif self.parties[w] is not None:
                actions.append((self.parties[w][0].act(), self.parties[w][1].act()))
            else:
                raise ValueError(f"world {w} needs externally supplied actions")

        # link decisions, made once per round and shared by both worlds of the link
        chosen: dict = {}
        for i, link in enumerate(self.links):
            st = self.stats[i]
            t, c = (0, 1) if link.target == "A" else (1, 0)
            lo_act, hi_act = actions[link.lo], actions[link.hi]
            if st.broken_at is not None:
                continue
            if (lo_act[t] is LISTEN) != (hi_act[t] is LISTEN):
                # the target already behaves differently in the two worlds
                st.broken_at = r
                continue
            if lo_act[t] is not LISTEN:
                continue
            st.target_listens += 1
            s_lo, s_hi = _symbol(lo_act[c]), _symbol(hi_act[c])
            if s_lo is None and s_hi is None:
                sym = self.default
            elif s_hi is None:
                sym = s_lo
            elif s_lo is None:
                sym = s_hi
            else:
                st.contested += 1
                st.contested_by_round.append(r)
                sym = s_lo if link.policy(r, st.contested, self.rounds) else s_hi
            chosen[(link.lo, link.target)] = sym
            chosen[(link.hi, link.target)] = sym

        out = []
        for w, (a_act, b_act) in enumerate(actions):
            deliveries = []
            for who, mine, theirs in (("A", a_act, b_act), ("B", b_act, a_act)):
                if mine is not LISTEN:
                    deliveries.append(None)
                    continue
                true = _symbol(theirs)
                sym = chosen.get((w, who))
                if sym is None:
                    sym = true if true is not None else self.default
                if true is not None and not _equal(sym, true):
                    self.costs[w] += 1
                deliveries.append(sym)
            out.append(tuple(deliveries))
            for idx, sym in enumerate(deliveries):
                if sym is not None:
                    self.views[w][idx].append((r, sym))
            if self.parties[w] is not None:
                for party, sym in zip(self.parties[w], deliveries):
                    if sym is not None:
                        party.receive(sym)
        return out

    def run(self) -> "ConfusionEngine":
        while self.round < self.rounds:
            self.step()
        return self


def _equal(a, b) -> bool:
    try:
        return bool(a == b)
    except (TypeError, ValueError):
        return False


class ConfusionAdversary(Adversary):
    """Live adversary for one world of a confusion setup.

    The live parties supply the actions of world ``world``; every other world
    runs on simulated parties spawned with the adversary's own seeds.
    """

    def __init__(self, pair: PartyPair, worlds: Sequence[tuple], links: Sequence[Link], world: int,
                 sim_seeds: Sequence[tuple] = ()):
        self.pair = pair
        self.worlds = list(worlds)
        self.links = list(links)
        self.world = world
        self.sim_seeds = list(sim_seeds)

    def start(self, info: SessionInfo) -> None:
        super().start(info)
        if (info.alice_input, info.bob_input) != self.worlds[self.world]:
            raise ValueError("live inputs do not match the adversary's world")
        self.engine = ConfusionEngine(self.pair, self.worlds, self.links, info.config.rounds,
                                      self.sim_seeds, external=(self.world,))

    def intervene(self, ctx: RoundContext) -> Optional[Intervention]:
        deliveries = self.engine.step({self.world: (ctx.alice_action, ctx.bob_action)})
        to_a, to_b = deliveries[self.world]
        return Intervention(to_alice=to_a, to_bob=to_b)


__all__ = [
    "ConfusionAdversary", "ConfusionEngine", "Link", "LinkStats", "Policy",
    "prefer_lo_until_round", "prefer_lo_while_count_at_most",
]
