"""
Exchanging inputs over a corrupting channel
===========================================

Alice and Bob each hold four bits and want the other's.  The adaptive scheme
below survives corruption of a (2/7 - eps) fraction of the rounds; at exactly
2/7 an adversary can make one party's view independent of the other's input.
"""

from intercode.adversaries import OneSidedAdversary, shifted_symbol, two_sevenths_attack
from intercode.channel import run_session
from intercode.exchange import ExchangePhasePlan, exchange_two_sevenths

n, eps = 4, 0.2
plan = ExchangePhasePlan.for_params(n, eps)
print(f"rounds {plan.rounds}, Alice sends until {plan.alice_phase_end}, Bob until {plan.boundary}, "
      f"estimate threshold {plan.threshold}")

pair = exchange_two_sevenths(n, eps)

# Spend the whole budget on Alice's receptions.  Twelve forged symbols keep her
# estimate below the threshold, so both parties still transmit in the tail.
cfg = pair.config(2 / 7 - eps)
res = run_session(pair.alice, pair.bob, OneSidedAdversary(shifted_symbol(1 << n), "A"), cfg, 9, 6)
alice, bob = res.parties
print(f"budget {cfg.budget}, spent {res.cost_total}")
print(f"Alice: estimate {alice.estimate}, tail {alice.tail_mode}, learned {res.outputs[0]}")
print(f"Bob:   estimate {bob.estimate}, tail {bob.tail_mode}, learned {res.outputs[1]}")

# At rate 2/7 the attack runs the two settings (Bob holds 0 or 1) side by side
# and hands the target identical receptions in both.
report = two_sevenths_attack().run(pair, 2 / 7, "exchange-27")
print()
print(report.to_text())
