import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intercode.adversaries import (
    ConfusionEngine, IncompatibleScheme, Link, NotNonAdaptive, OneSidedAdversary, PrefixBurstAdversary,
    UniformAdversary, adaptive_list_attack, erase, erasure_two_thirds_attack, list_block_attack,
    prefer_lo_while_count_at_most, quarter_attack, shifted_symbol, third_attack, two_sevenths_attack,
)
from intercode.channel import ERASURE, LISTEN, Party, PartyPair, Transmit, run_session
from intercode.exchange import exchange_quarter_baseline, exchange_two_sevenths, exchange_two_thirds_shared
from intercode.harness import run_attack


def _run(pair, adv, rate, a=3, b=12):
    return run_session(pair.alice, pair.bob, adv, pair.config(rate), a, b)


# -- generic adversaries ----------------------------------------------------------------

def test_zero_budget_means_no_interventions():
    pair = exchange_quarter_baseline(4, 0.2)
    res = _run(pair, UniformAdversary(shifted_symbol(16), seed=1), 0.0)
    assert res.cost_total == 0 and all(r.intervention == "none" for r in res.records)


@given(st.floats(0, 1), st.integers(0, 1 << 16))
@settings(max_examples=40, deadline=None)
def test_uniform_spends_exactly_its_budget(rate, seed):
    pair = exchange_quarter_baseline(4, 0.2)
    res = _run(pair, UniformAdversary(shifted_symbol(16), seed=seed), rate)
    assert res.cost_total == min(pair.config(rate).budget, pair.rounds)
    assert not any(r.dropped for r in res.records)


def test_uniform_online_mode_spends_its_budget():
    pair = exchange_two_sevenths(4, 0.2)
    res = _run(pair, UniformAdversary(shifted_symbol(16), seed=2), 2 / 7)
    assert res.cost_total == 40


def test_adversaries_are_deterministic_per_seed():
    pair = exchange_two_sevenths(4, 0.2)
    a = _run(pair, UniformAdversary(shifted_symbol(16), seed=5), 0.2)
    b = _run(pair, UniformAdversary(shifted_symbol(16), seed=5), 0.2)
    c = _run(pair, UniformAdversary(shifted_symbol(16), seed=6), 0.2)
    assert a.trace() == b.trace() != c.trace()


def test_burst_and_one_sided_placement():
    pair = exchange_two_sevenths(4, 0.2)
    res = _run(pair, PrefixBurstAdversary(shifted_symbol(16), start=61), 2 / 7 - 0.2)
    hit = [r.index for r in res.records if r.cost]
    assert hit == list(range(61, 73))
    res = _run(pair, OneSidedAdversary(shifted_symbol(16), "A"), 2 / 7 - 0.2)
    assert all(r.alice_action is LISTEN for r in res.records if r.cost)
    with pytest.raises(ValueError):
        OneSidedAdversary(erase, "C")


def test_erasure_adversaries_emit_only_erasures():
    pair = exchange_two_thirds_shared(1 / 6)
    res = _run(pair, UniformAdversary(erase, seed=4), 0.5, 0, 1)
    assert 0 < res.cost_total <= 9
    for r in res.records:
        if r.cost:
            assert ERASURE in (r.delivered_to_alice, r.delivered_to_bob)


# -- confusion engine -------------------------------------------------------------------

class Alternator(Party):
    """Alice on odd rounds, Bob on even; always sends its input."""

    def __init__(self, role, value):
        self.role, self.value, self.r, self.heard = role, value, 0, []

    def act(self):
        self.r += 1
        return Transmit(self.value) if (self.r % 2 == 1) == (self.role == "A") else LISTEN

    def receive(self, s):
        self.heard.append(s)

    def finalize(self):
        return tuple(self.heard)


def alternating_pair(rounds):
    return PartyPair(lambda v, s: Alternator("A", v), lambda v, s: Alternator("B", v), rounds, alphabet=range(2))


def test_engine_keeps_linked_views_equal():
    pair = alternating_pair(14)
    eng = ConfusionEngine(pair, [(0, 0), (0, 1)], [Link("A", 0, 1, prefer_lo_while_count_at_most(4))], 14,
                          [(0, 0), (0, 0)]).run()
    heard = [[sym for _, sym in eng.views[w][0]] for w in (0, 1)]
    assert heard[0] == heard[1] == [0] * 4 + [1] * 3
    assert eng.costs == [3, 4]
    assert eng.stats[0].contested == 7 and eng.stats[0].broken_at is None


def test_two_sevenths_attack_on_alternating_party():
    pair = alternating_pair(14)
    rep = two_sevenths_attack().run(pair, 2 / 7)
    assert rep.branch == "target-A"
    assert rep.measures["x_A"] == 7 <= 8
    assert rep.views_identical and rep.holds


# -- attacks ---------------------------------------------------------------------------

def test_two_sevenths_attack_against_the_scheme():
    pair = exchange_two_sevenths(4, 0.2)
    rep = two_sevenths_attack().run(pair, 2 / 7, "exchange-27")
    assert (rep.measures["x_A"], rep.measures["x_B"]) == (80, 80)
    assert rep.branch == "target-A" and rep.budget == rep.nominal_budget == 40
    assert rep.views_identical and rep.claimed and rep.holds
    assert all(s.cost <= math.ceil(2 * 140 / 7) for s in rep.settings)


def test_two_sevenths_attack_at_design_rate_fails_to_confuse():
    pair = exchange_two_sevenths(4, 0.2)
    rep = two_sevenths_attack().run(pair, 2 / 7 - 0.2, "exchange-27")
    assert not rep.claimed and rep.holds
    for s in rep.settings:
        assert s.result.outputs == (s.bob_input, s.alice_input)


def test_quarter_attack():
    pair = exchange_quarter_baseline(4, 0.2)
    rep = quarter_attack().run(pair, 0.25, "exchange-14")
    assert rep.rounds == 40 and rep.budget == 10
    assert rep.views_identical and rep.holds
    low = quarter_attack().run(pair, 0.05, "exchange-14")
    assert not low.views_identical
    with pytest.raises(NotNonAdaptive):
        quarter_attack().run(exchange_two_sevenths(4, 0.2), 0.25)


def test_third_attack():
    pair = exchange_two_sevenths(4, 0.2)
    rep = third_attack().run(pair, 1 / 3, "exchange-27")
    assert rep.budget == 46 and rep.measures["x_A_first"] == 34
    assert rep.gamble_held and rep.views_identical and rep.holds
    assert all(s.cost <= 46 for s in rep.settings)


def test_list_block_attack_hides_the_counterpart():
    pair = exchange_quarter_baseline(3, 0.1)
    rep = list_block_attack().run(pair, 0.5, "exchange-14")
    assert rep.rounds == 60
    assert len(rep.settings) == 8
    assert all(c[3] for c in rep.comparisons) and rep.holds
    assert all(s.cost <= 30 for s in rep.settings)
    with pytest.raises(NotNonAdaptive):
        list_block_attack().run(exchange_two_sevenths(3, 0.2), 0.5)


def test_adaptive_list_attack():
    pair = exchange_two_sevenths(3, 0.2)
    rep = adaptive_list_attack(samples=50).run(pair, 0.5, "exchange-27")
    assert rep.views_identical and rep.holds


def test_erasure_attack():
    pair = exchange_two_thirds_shared(1 / 6)
    rep = erasure_two_thirds_attack().run(pair, 2 / 3, "exchange-23")
    assert rep.measures["x_A"] == 12 and rep.measures["pr_A"] == 1.0
    assert rep.gamble_held and rep.holds
    target = rep.targets[0]
    for s in rep.settings:
        assert all(sym is ERASURE for _, sym in s.result.view(target))
        assert s.cost <= 12
    with pytest.raises(ValueError):
        erasure_two_thirds_attack().run(exchange_two_sevenths(2, 0.2), 2 / 3)


def test_attack_registry_rejects_mismatched_schemes():
    with pytest.raises(IncompatibleScheme):
        run_attack("quarter", "exchange-27", 4, 0.2)
    with pytest.raises(KeyError):
        run_attack("nope", "exchange-27", 4, 0.2)
    text = run_attack("two-sevenths", "exchange-27", 4, 0.2).to_text()
    assert "views_identical: true" in text and text.endswith("holds: true\n")
