"""
Failure rate against error rate
===============================

Sweeps a few schemes across error rates and prints one column per adversary.
Failures should appear only above each scheme's designed rate.
"""

from intercode.harness import SCHEMES, ExperimentSpec, sweep

runs = [
    ("exchange-27", 4, 0.2, (0.0, 0.05, 0.1, 0.2, 0.28, 0.33, 0.4)),
    ("alg1-unique", 5, 0.125, (0.0, 0.125, 0.2, 0.25, 0.3)),
    ("exchange-23", 2, 1 / 6, (0.3, 0.5, 0.6, 0.67)),
]
adversaries = {"exchange-23": ["uniform", "burst"]}

for name, n, eps, rates in runs:
    names = adversaries.get(name, ["uniform", "burst", "one-sided-A"])
    rows = sweep(ExperimentSpec(name, n, eps, rates, trials=40, seed=3), names)
    print(f"\n{name} (designed rate {SCHEMES[name].designed_rate(eps):.4f})")
    print("rho      " + "".join(f"{a:>14}" for a in names))
    for i, rho in enumerate(rates):
        cells = rows[i * len(names):(i + 1) * len(names)]
        print(f"{rho:<9.4f}" + "".join(f"{r.failure_rate:>14.3f}" for r in cells))
