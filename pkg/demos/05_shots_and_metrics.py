#!/usr/bin/env python3
"""Finite-measurement estimators, cumulative probability and histograms.

With a limited shot budget the exact minimiser may never be measured even
when it is the most probable string; the cumulative probability over a
ratio threshold shows how often an acceptable string appears instead.
"""

import numpy as np

from qantenna import (
    CostTable,
    QaaConfig,
    brute_force,
    build_instance,
    cumulative_probability,
    exact_report,
    generate_sites,
    qaa_run,
    ratio_histogram,
    sample,
    shot_estimators,
)

inst = build_instance(generate_sites(12, (0, 0, 5, 5), 1.0, seed=7), lam=1.0)
spectrum = brute_force(inst)
table = CostTable.from_instance(inst)
state = qaa_run(inst, QaaConfig(60, 0.2), table).state

exact = exact_report(state, inst, spectrum, table)
print(f"exact:  alpha={exact.alpha:.4f} alpha_mp={exact.alpha_mp:.4f} p_gs={exact.p_gs:.5f}")

counts = sample(state, n_meas=4000, seed_or_rng=0)
shots = shot_estimators(counts, inst, spectrum)
print(f"shots:  alpha={shots.alpha:.4f} alpha_mp={shots.alpha_mp:.4f} "
      f"gs fraction={shots.gs_counts_fraction:.5f}  ({shots.n_meas} measurements)")

print("\ncumulative probability of measuring a string with ratio >= a:")
curve = cumulative_probability(state, inst, spectrum, np.arange(0.5, 1.001, 0.1), table)
for t, v in zip(curve.thresholds, curve.values):
    print(f"  CP({t:.1f}) = {v:.4f}")

bin_lo, mass = ratio_histogram(state, inst, spectrum, table=table)
top = np.argsort(mass)[-5:][::-1]
print("\nheaviest ratio bins (width 0.01):")
for k in top:
    print(f"  [{bin_lo[k]:+.2f}, {bin_lo[k] + 0.01:+.2f}): {mass[k]:.4f}")
