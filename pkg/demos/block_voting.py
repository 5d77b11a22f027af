"""
Weighted votes over a small alphabet
====================================

Each edge set becomes one Reed-Solomon block.  A received block may mix
coordinates from several codewords; every candidate within the list-decoding
radius votes with weight max(1 - 2*delta, 0).
"""

import numpy as np

from intercode.adversaries import BlockOneSidedAdversary
from intercode.canonical import build_random_protocol
from intercode.channel import run_block_session
from intercode.ecc import ReceivedBlock, list_decode, vote_weight
from intercode.simulator import block_scheme

scheme = block_scheme(4, 0.25, mode="adaptive")
code = scheme.code
print(f"{scheme.plan.blocks} blocks of length {code.length} (k={code.k}), boundary at {scheme.plan.boundary}")

tree = build_random_protocol(4, 2, seed=5)
true = tree.bob_side.as_edge_set()
fake = frozenset({("", 1 - tree.preferred[""])})

# Forty percent of the coordinates copied from a competing codeword.
rng = np.random.default_rng(0)
word = code.encode(true).copy()
idx = rng.choice(code.length, size=96, replace=False)
word[idx] = code.encode(fake)[idx]
for cand, delta in list_decode(code, ReceivedBlock(word, [true, fake]), 1 - 0.25 / 3):
    print(f"candidate at distance {delta:.2f}, weight {vote_weight(delta):.2f}")

# Full sessions: confidence at the boundary decides who keeps transmitting.
for label, adv in (("clean", None), ("one-sided", BlockOneSidedAdversary("B", seed=2))):
    res = run_block_session(scheme.alice, scheme.bob, adv, scheme.config(2 / 7 - 0.25),
                            tree.alice_side, tree.bob_side)
    psi = ", ".join(f"{p.state.party} psi={p.psi:.3f} safe={p.safe}" for p in res.parties)
    print(f"{label}: cost {res.cost_total}, {psi}, outputs {res.outputs}")
