"""
Simulating a protocol tree by exchanging edge sets
==================================================

Any deterministic protocol is a tree where Alice picks the edge at even depths
and Bob at odd depths.  The simulators send whole edge sets and vote for the
leaf that the merged sets reach.
"""

from intercode.adversaries import OneSidedAdversary, UniformAdversary, wrong_path_forger
from intercode.canonical import build_random_protocol, encode_edge_set
from intercode.channel import run_session
from intercode.simulator import alg1_pair, alg2_run

tree = build_random_protocol(6, 2, seed=1)
print("".join(tree.to_text().splitlines(keepends=True)[:6]), "...")
print("common leaf:", tree.common_leaf)
print("Alice's side on the wire:", encode_edge_set(tree.alice_side.as_edge_set()))

# Alternating exchange with no noise: each party ends up voting for the common
# leaf on almost every reception.
pair = alg1_pair(6, 1 / 8)
res = run_session(pair.alice, pair.bob, None, pair.config(0.0), tree.alice_side, tree.bob_side)
for p in res.parties:
    print(p.state.party, "votes", dict(p.state.votes), "of", p.state.receptions, "receptions")

# Forged edge sets that lead to a wrong leaf, spread over a quarter minus eps.
res = run_session(pair.alice, pair.bob, UniformAdversary(wrong_path_forger(), seed=4), pair.config(1 / 8),
                  tree.alice_side, tree.bob_side)
print("uniform forgery, cost", res.cost_total, "->", res.outputs)
for p in res.parties:
    print(" ", p.state.party, dict(p.state.votes.most_common(3)))

# The adaptive version stops alternating after six sevenths of the rounds.
# A party whose leading leaf clearly dominates keeps talking; the other listens.
pair = alg2_run(4, 1 / 8)
small = build_random_protocol(4, 2, seed=5)
res = run_session(pair.alice, pair.bob, OneSidedAdversary(wrong_path_forger(), "A", seed=3),
                  pair.config(2 / 7 - 1 / 8), small.alice_side, small.bob_side)
for p in res.parties:
    s, t = p.boundary_votes
    print(f"{p.state.party}: leading {s} of {t} votes, safe={p.safe}")
print("outputs", res.outputs, "truth", small.common_leaf)
