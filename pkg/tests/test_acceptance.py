"""The twelve acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line in ``RESULTS``; ``conftest.py``
prints them at the end of the run.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

import oracles
from intercode.adversaries import erasure_two_thirds_attack, two_sevenths_attack
from intercode.blueberry import BlueberryCodec, adaptive_exchange_block
from intercode.canonical import build_random_protocol
from intercode.channel import ERASURE, Adversary, Intervention, run_session
from intercode.ecc import (
    JUNK, ReceivedBlock, brute_force_list_decode, list_decode, make_repetition_code, make_rs_code,
    min_distance_decode, vote_weight,
)
from intercode.exchange import exchange_two_sevenths, exchange_two_thirds_shared
from intercode.harness import SCHEMES, make_adversary, run_trial
from intercode.harness.cli import main as cli_main
from intercode.simulator import alg1_pair

RESULTS = {}


@contextmanager
def criterion(number, title):
    """Record one result line; the body sets ``info["detail"]`` and raises on failure."""
    info = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        took = time.perf_counter() - start
        RESULTS[number] = f"[{number:2d}] FAIL {title}: {info['detail']} {exc!s:.120} ({took:.1f}s)"
        raise
    took = time.perf_counter() - start
    RESULTS[number] = f"[{number:2d}] PASS {title}: {info['detail']} ({took:.1f}s)"


def trials(name, n, eps, rate, adversaries, count, seed=0):
    scheme = SCHEMES[name]
    built = scheme.build(n, eps)
    for adv in adversaries:
        for i in range(count):
            yield run_trial(scheme, built, n, rate, adv, seed, i)


def test_01_two_sevenths_exchange():
    with criterion(1, "2/7 exchange, 500 trials x 4 adversaries") as info:
        start = time.perf_counter()
        failures = clashes = total = 0
        for out in trials("exchange-27", 4, 0.2, 2 / 7 - 0.2, ["uniform", "burst", "one-sided-A", "one-sided-B"], 500):
            total += 1
            assert out.result.budget == 12
            failures += not out.success
            a, b = out.result.parties
            clashes += a.tail_mode == b.tail_mode == "listen"
        took = time.perf_counter() - start
        info["detail"] = f"{total} trials, {failures} failures, {clashes} double-listen tails"
        assert failures == 0 and clashes == 0 and took < 10


def test_02_two_sevenths_attack():
    with criterion(2, "2/7 attack at rate 2/7") as info:
        start = time.perf_counter()
        rng = random.Random(2)
        runs = confused = 0
        for n in (1, 2, 3, 4):
            for eps in (0.05, 0.1, 0.2, 0.25):
                pair = exchange_two_sevenths(n, eps)
                cap = math.ceil(2 * pair.rounds / 7 - 1e-9)
                for _ in range(6):
                    t, lo, hi = rng.randrange(1 << n), *rng.sample(range(1 << n), 2)
                    rep = two_sevenths_attack(target_input=t, lo=lo, hi=hi).run(pair, 2 / 7, "exchange-27")
                    runs += 1
                    ok = rep.views_identical and all(s.cost <= cap for s in rep.settings)
                    confused += ok
        took = time.perf_counter() - start
        info["detail"] = f"{confused}/{runs} runs with an identical target view within budget"
        assert confused == runs and took < 30


def test_03_alg1_unique():
    with criterion(3, "alternating tree simulation, unique, n=6 eps=1/8") as info:
        failures = total = 0
        for out in trials("alg1-unique", 6, 1 / 8, 1 / 8, ["suite"], 500):
            total += 1
            assert out.result.budget == oracles.budget(Fraction(1, 8), 96) == 12
            failures += not out.success
        short = 0
        pair = alg1_pair(6, 1 / 8)
        for seed in range(200):
            t = build_random_protocol(6, 2, seed)
            res = run_session(pair.alice, pair.bob, None, pair.config(0.0), t.alice_side, t.bob_side)
            ref = oracles.alternating_votes(dict(t.preferred), 6, 96)
            for p, want in zip(res.parties, ref):
                assert dict(p.state.votes) == want
                short += p.state.votes[t.common_leaf] < 48 - 6
        info["detail"] = f"{failures}/{total} failures; {short} noiseless parties below N/2-n votes"
        assert failures == 0 and short == 0


def test_04_alg1_list():
    with criterion(4, "alternating tree simulation, top-8 list") as info:
        missing = total = 0
        for out in trials("alg1-list", 6, 1 / 8, 3 / 8, ["suite"], 500):
            total += 1
            assert out.result.budget == 36
            assert all(len(o) == 8 for o in out.result.outputs)
            missing += not out.success
        info["detail"] = f"common leaf in both lists in {total - missing}/{total} trials"
        assert missing == 0


def test_05_alg2():
    with criterion(5, "adaptive tree simulation, n=4 eps=1/8 N=896") as info:
        failures = unsound = none_safe = total = 0
        for out in trials("alg2", 4, 1 / 8, 2 / 7 - 1 / 8, ["suite"], 500):
            total += 1
            assert out.result.budget == 144
            failures += not out.success
            leaf = out.inputs.truth
            unsound += any(p.safe and p.boundary_leaf != leaf for p in out.result.parties)
            none_safe += not any(p.safe for p in out.result.parties)
        info["detail"] = f"{failures} failures, {unsound} unsound safe decisions, {none_safe} trials with no safe party"
        assert failures == unsound == none_safe == 0


def _blend(code, msgs, rng, junk=True):
    words = np.stack([code.encode(m) for m in msgs])
    share = rng.dirichlet(np.ones(len(msgs) + junk))
    pick = rng.choice(len(share), size=code.length, p=share)
    word = np.full(code.length, JUNK, dtype=np.int64)
    for i in range(len(msgs)):
        word[pick == i] = words[i][pick == i]
    return word


def test_06_weighted_voting():
    with criterion(6, "weighted votes and list decoding") as info:
        rng = np.random.default_rng(6)
        eps = 0.25
        code = make_rs_code(1, 40, 41)
        worst = -1.0
        for _ in range(10_000):
            count = int(rng.integers(1, 4))
            msgs = [[int(m)] for m in rng.choice(41, size=count, replace=False)]
            word = _blend(code, msgs, rng)
            block = ReceivedBlock(word, msgs)
            rho = np.count_nonzero(word != code.encode(msgs[0])) / code.length
            total = sum(vote_weight(d) for _, d in list_decode(code, block, 1 - eps / 3))
            worst = max(worst, total - (abs(1 - 2 * rho) + 3 * eps / 5))
        # relative distance 29/30 >= 1 - eps/10 for eps = 1/2, so constituent tracking is exact
        code = make_rs_code(2, 30, 31)
        radius = 1 - 0.5 / 3
        mismatches = 0
        for _ in range(1000):
            count = int(rng.integers(1, 4))
            ids = [int(m) for m in rng.choice(31 * 31, size=count, replace=False)]
            msgs = [code.symbols(m) for m in ids]
            word = _blend(code, msgs, rng, junk=bool(rng.integers(2)))
            fast = [(code.message_id(m), d) for m, d in list_decode(code, ReceivedBlock(word, msgs), radius)]
            mismatches += fast != brute_force_list_decode(code, word, radius)
        info["detail"] = f"max excess over bound {worst:+.4f} on 10^4 blends; {mismatches} mismatches on 10^3"
        assert worst <= 1e-12 and mismatches == 0


def test_07_block_schemes():
    with criterion(7, "block schemes, n=4 eps=1/4") as info:
        start = time.perf_counter()
        parts = []
        for name, rate in (("block-unique", 0.0), ("block-list", 0.25), ("block-adaptive", 2 / 7 - 0.25)):
            fails = sum(not out.success for out in trials(name, 4, 0.25, rate, ["suite"], 200))
            parts.append(f"{name} {fails}/200")
            assert fails == 0, parts
        took = time.perf_counter() - start
        info["detail"] = f"failures {', '.join(parts)}"
        assert took < 120


class _Overwrite(Adversary):
    """Replaces every transmission in the block by a uniform outer symbol."""

    def __init__(self, outer, rng):
        self.outer, self.rng = outer, rng

    def intervene(self, ctx):
        return Intervention(to_alice=self.rng.randrange(self.outer), to_bob=self.rng.randrange(self.outer))


class _Once(Adversary):
    """Replaces one random single-listener transmission by a different outer symbol."""

    def __init__(self, outer, rng):
        self.outer, self.rng = outer, rng
        self.when = rng.randrange(1, 3)

    def intervene(self, ctx):
        who = ctx.listener()
        if ctx.index != self.when or who is None:
            return None
        sent = (ctx.alice_action if who == "B" else ctx.bob_action).symbol
        sym = (sent + self.rng.randrange(1, self.outer)) % self.outer
        return Intervention(to_bob=sym) if who == "B" else Intervention(to_alice=sym)


def test_08_blueberry():
    with criterion(8, "blue-berry block, delta=0.05, 10^5 blocks each") as info:
        delta, blocks = 0.05, 100_000
        rng = random.Random(8)
        wrong = correct = 0
        for seed in range(blocks):
            codec = BlueberryCodec(2, delta, seed)
            a, b = seed & 1, (seed >> 1) & 1
            wrong += adaptive_exchange_block(a, b, codec, _Overwrite(codec.outer_size, rng)).wrong(a, b)
        for seed in range(blocks, 2 * blocks):
            codec = BlueberryCodec(2, delta, seed)
            a, b = seed & 1, (seed >> 1) & 1
            res = adaptive_exchange_block(a, b, codec, _Once(codec.outer_size, rng), error_rate=1 / 3)
            correct += res.both_correct(a, b)
        wrong_bound = 3 * delta + 3 * math.sqrt(3 * delta / blocks)
        right_bound = 1 - delta - 3 * math.sqrt(delta / blocks)
        info["detail"] = (f"wrong rate {wrong / blocks:.5f} <= {wrong_bound:.5f}; "
                          f"both-correct rate {correct / blocks:.5f} >= {right_bound:.5f}")
        assert wrong / blocks <= wrong_bound and correct / blocks >= right_bound


def test_09_shared_randomness_exchange():
    with criterion(9, "2/3 exchange, eps=1/6") as info:
        fails = total = 0
        for out in trials("exchange-23", 1, 1 / 6, 2 / 3 - 1 / 6, ["uniform", "one-sided-A", "one-sided-B", "burst"],
                          125):
            total += 1
            assert out.result.budget == 9 and len(out.result.records) == 18
            fails += not out.success
        scheme = SCHEMES["exchange-23"]
        pair = scheme.build(3, 1 / 6)
        fixture_fails = fixtures = 0
        for part in (1, 2, 3):
            for a, b in itertools.product(range(8), repeat=2):
                adv = make_adversary(scheme, pair, 3, f"blank-part-{part}", 0)
                res = run_session(pair.alice, pair.bob, adv, pair.config(2 / 3 - 1 / 6), a, b)
                fixtures += 1
                fixture_fails += res.outputs != (b, a)
        info["detail"] = f"{fails}/{total} random-erasure failures, {fixture_fails}/{fixtures} part-blanking failures"
        assert fails == 0 and fixture_fails == 0


def test_10_erasure_attack():
    with criterion(10, "2/3 erasure attack") as info:
        gambled = good = 0
        for n in (1, 2, 3):
            pair = exchange_two_thirds_shared(1 / 6, q=1 << n)
            cap = math.floor(2 * pair.rounds / 3 + 1e-9)
            for seed in range(8):
                lo, hi = random.Random(seed).sample(range(1 << n), 2)
                rep = erasure_two_thirds_attack(seed=seed, lo=lo, hi=hi).run(pair, 2 / 3, "exchange-23")
                if not rep.gamble_held:
                    continue
                gambled += 1
                ok = True
                for s in rep.settings:
                    for who in rep.targets:
                        ok &= all(sym is ERASURE for _, sym in s.result.view(who))
                    ok &= s.cost <= cap
                good += ok
        info["detail"] = f"{good}/{gambled} gambled runs with all-erasure target views within 2N/3"
        assert gambled > 0 and good == gambled


def test_11_oracle_equivalence():
    with criterion(11, "minimum-distance decoding vs exhaustive search") as info:
        checked = 0
        rep = make_repetition_code(3, 6)
        book = oracles.repetition_codebook(3, 6)
        for word in itertools.product(range(8), repeat=6):
            ref = oracles.nearest(book, word)
            if 2 * ref[1] < rep.min_distance:
                assert min_distance_decode(rep, word) == ref
                checked += 1
        rs = make_rs_code(2, 8, 11)
        book = oracles.rs_codebook(2, 8, 11)
        rng = np.random.default_rng(11)
        for _ in range(1000):
            word = list(book[int(rng.integers(len(book)))])
            for pos in rng.choice(8, size=int(rng.integers(0, 4)), replace=False):
                word[pos] = (word[pos] + int(rng.integers(1, 11))) % 11
            ref = oracles.nearest(book, word)
            assert 2 * ref[1] < rs.min_distance
            assert min_distance_decode(rs, word) == ref
            checked += 1
        info["detail"] = f"{checked} words agree"


def test_12_determinism(tmp_path):
    with criterion(12, "sweep determinism") as info:
        same = 0
        cases = [
            ["--scheme", "exchange-27", "--rates", "0,0.1,0.2,0.28,0.33", "--adversary", "uniform,burst"],
            ["--scheme", "alg1-list", "--n", "4", "--eps", "1/8", "--rates", "0,3/8", "--adversary", "suite"],
            ["--scheme", "exchange-23", "--n", "2", "--eps", "1/6", "--rates", "0.5,2/3", "--adversary", "burst"],
            ["--scheme", "block-unique", "--eps", "1/4", "--rates", "0,0.2", "--adversary", "junk", "--trials", "5"],
        ]
        for i, args in enumerate(cases):
            outs = []
            for j in range(2):
                path = tmp_path / f"{i}-{j}.csv"
                cli_main(["sweep", "--seed", "12", "--trials", "20", *args, "--out", str(path)])
                outs.append(path.read_bytes())
            same += outs[0] == outs[1]
        info["detail"] = f"{same}/{len(cases)} repeated sweeps byte-identical"
        assert same == len(cases)
