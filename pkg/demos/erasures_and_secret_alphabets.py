"""
Erasures, and corruptions turned into erasures
==============================================

With erasures only, three equal parts suffice: Alice talks, Bob talks, then
whoever heard something repeats.  When the parties share randomness they can
hide their symbols in a larger alphabet so most corruptions become detectable.
"""

import random

from intercode.adversaries import PrefixBurstAdversary, erase, erasure_two_thirds_attack
from intercode.blueberry import BlueberryCodec, adaptive_exchange_block
from intercode.channel import Adversary, Intervention, run_session
from intercode.exchange import exchange_two_thirds_shared

pair = exchange_two_thirds_shared(1 / 6, q=4)
cfg = pair.config(2 / 3 - 1 / 6)
for part in (1, 2, 3):
    adv = PrefixBurstAdversary(erase, start=6 * (part - 1) + 1, stop=6 * part)
    res = run_session(pair.alice, pair.bob, adv, cfg, 2, 3)
    print(f"part {part} blanked: cost {res.cost_total}/{cfg.budget}, outputs {res.outputs}")

report = erasure_two_thirds_attack().run(pair, 2 / 3, "exchange-23")
print(f"\nat rate 2/3: branch {report.branch}, gamble held {report.gamble_held}, holds {report.holds}")

codec = BlueberryCodec(inner_size=2, delta=0.05, seed=11)
print(f"\n{codec.inner_size} symbols hidden in {codec.outer_size}; round 1 image {codec.injection(1)}")


class Scramble(Adversary):
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def intervene(self, ctx):
        return Intervention(to_alice=self.rng.randrange(40), to_bob=self.rng.randrange(40))


wrong = 0
for seed in range(5000):
    res = adaptive_exchange_block(1, 0, BlueberryCodec(2, 0.05, seed), Scramble(seed))
    wrong += res.wrong(1, 0)
print(f"every round scrambled: wrong symbol in {wrong / 5000:.3%} of blocks")
