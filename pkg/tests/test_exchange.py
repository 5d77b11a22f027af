from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from intercode.channel import ERASURE, LISTEN, Adversary, Intervention, run_session
from intercode.exchange import (
    ExchangePhasePlan, exchange_quarter_baseline, exchange_two_sevenths, exchange_two_thirds_shared,
)


class OnRounds(Adversary):
    """Replaces the listener's reception with ``symbol`` on the given rounds."""

    def __init__(self, rounds, symbol):
        self.rounds = set(rounds)
        self.symbol = symbol

    def intervene(self, ctx):
        if ctx.index not in self.rounds:
            return None
        who = ctx.listener()
        if who == "A":
            return Intervention(to_alice=self.symbol)
        if who == "B":
            return Intervention(to_bob=self.symbol)
        return None


def run(pair, rate, a, b, adversary=None):
    return run_session(pair.alice, pair.bob, adversary, pair.config(rate), a, b)


def test_plan_matches_oracle():
    plan = ExchangePhasePlan.for_params(4, 0.2)
    ref = oracles.two_sevenths_plan(4, Fraction(1, 5))
    assert (plan.codeword_length, plan.rounds, plan.alice_phase_end, plan.boundary, plan.threshold) == \
        (ref["L"], ref["N"], ref["alice_end"], ref["boundary"], ref["threshold"]) == (20, 140, 60, 120, 20)
    pair = exchange_two_sevenths(4, 0.2)
    assert pair.config(2 / 7 - 0.2).budget == ref["budget"] == 12
    assert pair.config(2 / 7).budget == 40


@pytest.mark.parametrize("eps", [0.0, 2 / 7, -0.1])
def test_plan_rejects_bad_eps(eps):
    with pytest.raises(ValueError):
        ExchangePhasePlan.for_params(4, eps)


def test_two_sevenths_noiseless():
    pair = exchange_two_sevenths(4, 0.2)
    res = run(pair, 0.0, 9, 6)
    assert res.outputs == (6, 9)
    a, b = res.parties
    assert a.estimate == b.estimate == 0
    assert a.tail_mode == b.tail_mode == "transmit"


def test_two_sevenths_absorbs_twelve_corruptions_in_alice_phase():
    pair = exchange_two_sevenths(4, 0.2)
    res = run(pair, 2 / 7 - 0.2, 13, 2, OnRounds(range(1, 13), 0))
    assert res.cost_total == 12
    a, b = res.parties
    assert b.estimate == 12 and b.tail_mode == "transmit"
    assert res.outputs == (2, 13)


def test_two_sevenths_listen_branch():
    pair = exchange_two_sevenths(4, 0.2)
    # twenty forged symbols in Bob's phase push Alice's estimate to the threshold
    res = run(pair, 1 / 7, 5, 11, OnRounds(range(61, 81), 3))
    assert res.cost_total == 20
    a, b = res.parties
    assert a.estimate == 20 and a.tail_mode == "listen"
    assert b.tail_mode == "transmit"
    assert res.outputs == (11, 5)


def test_two_sevenths_rejects_wide_inputs():
    pair = exchange_two_sevenths(2, 0.2)
    with pytest.raises(ValueError):
        run(pair, 0.0, 4, 0)


@given(st.integers(0, 15), st.integers(0, 15),
       st.lists(st.tuples(st.integers(1, 140), st.integers(0, 15)), max_size=40), st.integers(0, 1))
@settings(max_examples=150, deadline=None)
def test_tail_exclusivity_and_correctness_under_budget(a_in, b_in, hits, layout):
    pair = exchange_two_sevenths(4, 0.2)

    class Hits(Adversary):
        def __init__(self):
            self.plan = dict(hits)

        def intervene(self, ctx):
            sym = self.plan.get(ctx.index)
            if sym is None:
                return None
            return Intervention(to_alice=sym) if ctx.listener() == "A" else Intervention(to_bob=sym)

    res = run(pair, 2 / 7 - 0.2, a_in, b_in, Hits())
    assert res.cost_total <= 12
    a, b = res.parties
    assert not (a.tail_mode == "listen" and b.tail_mode == "listen")
    assert res.outputs == (b_in, a_in)


# -- quarter baseline -------------------------------------------------------------------

def test_quarter_baseline_is_scheduled_and_correct():
    pair = exchange_quarter_baseline(4, 0.2)
    assert pair.rounds == 40 and pair.schedule == "A" * 20 + "B" * 20
    assert run(pair, 0.0, 3, 12).outputs == (12, 3)


def test_quarter_baseline_worst_case_concentration():
    pair = exchange_quarter_baseline(4, 0.1)
    budget = pair.config(0.15).budget
    assert (pair.rounds, budget) == (80, 12)
    res = run(pair, 0.15, 9, 4, OnRounds(range(1, budget + 1), 0))
    assert res.cost_total == budget
    assert res.outputs == (4, 9)


def test_quarter_baseline_split_at_a_quarter_is_ambiguous():
    pair = exchange_quarter_baseline(4, 0.2)
    assert pair.config(0.25).budget == 10
    res = run(pair, 0.25, 5, 1, OnRounds(range(1, 11), 0))
    # ten genuine and ten forged symbols: the decoder cannot tell 5 from 0
    assert res.outputs[1] == 0


def test_quarter_baseline_rejects_bad_eps():
    with pytest.raises(ValueError):
        exchange_quarter_baseline(4, 0.25)


# -- two thirds, erasures ---------------------------------------------------------------

@pytest.mark.parametrize("blank", [range(1, 4), range(4, 7)])
def test_two_thirds_survives_a_blanked_part(blank):
    pair = exchange_two_thirds_shared(1 / 3)
    assert pair.rounds == 9 and pair.config(1 / 3).budget == 3
    res = run(pair, 1 / 3, 0, 1, OnRounds(blank, ERASURE))
    assert res.cost_total == 3
    assert res.outputs == (1, 0)


def test_two_thirds_noiseless_and_validation():
    pair = exchange_two_thirds_shared(1 / 6, q=4)
    res = run(pair, 0.0, 3, 2)
    assert res.outputs == (2, 3)
    with pytest.raises(ValueError):
        exchange_two_thirds_shared(0.3)
    with pytest.raises(ValueError):
        run(pair, 0.0, 4, 0)


@given(st.sets(st.integers(1, 18), max_size=9), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=200, deadline=None)
def test_two_thirds_pigeonhole(erased, a_in, b_in):
    pair = exchange_two_thirds_shared(1 / 6)
    res = run(pair, 2 / 3 - 1 / 6, a_in, b_in, OnRounds(erased, ERASURE))
    heard = [r for r in res.records[:12]
             if (r.alice_action is LISTEN) != (r.bob_action is LISTEN)
             and ERASURE is not (r.delivered_to_bob if r.alice_action is not LISTEN else r.delivered_to_alice)]
    assert heard
    assert res.outputs == (b_in, a_in)
