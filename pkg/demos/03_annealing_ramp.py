#!/usr/bin/env python3
"""Discretised adiabatic runs: depth convergence and the time-step sweep.

The ramp has two knobs: depth p and time step delta.  More depth always
helps at a good delta; delta itself trades discretisation error against
total annealing time, giving the characteristic dip in <H>(delta).
"""

from qantenna import (
    CostTable,
    QaaConfig,
    best_delta,
    brute_force,
    build_instance,
    delta_sweep,
    generate_sites,
    ground_probability,
    qaa_run,
)

inst = build_instance(generate_sites(10, (0, 0, 5, 5), 1.0, seed=7), lam=0.0)
spectrum = brute_force(inst)
table = CostTable.from_instance(inst)
print(f"n={inst.n}, h_min={spectrum.h_min:.4f}")

print("\ndepth convergence at delta=0.5:")
for p in (10, 50, 100, 200, 500):
    result = qaa_run(inst, QaaConfig(p, 0.5), table)
    print(f"  p={p:4d}: alpha={result.h_exp / spectrum.h_min:.4f}  "
          f"p_gs={ground_probability(result.state, spectrum):.4f}")

print("\ntime-step sweep at p=200:")
rows = delta_sweep(inst, [200], [0.1 * k for k in range(1, 31)], table)
for row in rows[::5]:
    print(f"  delta={row.delta:.1f}: <H>={row.h_exp:8.4f}")
print(f"  best delta: {best_delta(rows):.1f}")
