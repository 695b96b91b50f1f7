#!/usr/bin/env python3
"""Gate-count estimates: what fits on a few-thousand-gate device.

One two-qubit interaction per nonzero coupling pair per layer plus 2N
single-qubit gates per layer.  The soft count penalty makes the graph
complete, which dominates the budget.
"""

from qantenna import (
    build_instance,
    generate_sites,
    max_depth,
    max_sites,
    resource_estimate,
    resource_formula,
)

sites = generate_sites(16, (0, 0, 5, 5), 1.0, seed=7)
for lam, label in ((0.0, "sparse"), (1.0, "complete")):
    inst = build_instance(sites, lam=lam)
    est = resource_estimate(inst, p=20)
    print(f"n=16 {label}: per layer g1={est.g1_per_layer} g2={est.g2_per_layer}; "
          f"at p=20 total={est.total}")

BUDGET = 2880  # gate count of a recent utility-scale superconducting run
print(f"\nwith a {BUDGET}-gate budget at p=1:")
print(f"  sparse case (deg ~5): up to {max_sites(BUDGET, False, 1)} sites")
print(f"  complete case:       up to {max_sites(BUDGET, True, 1)} sites")
print(f"  100 sites, sparse:   depth up to {max_depth(BUDGET, 100, False)}")
full100 = resource_formula(100, True, 1).total
print(f"  100 sites, complete: needs {full100} gates for a single layer")
