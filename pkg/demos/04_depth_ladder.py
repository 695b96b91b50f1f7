#!/usr/bin/env python3
"""Variational depth ladder: interpolated restarts plus perturbed walkers.

Each depth starts from the interpolation of the previous optimum; a cloud
of perturbed walkers explores around it and a zero-padded copy of the
previous optimum guarantees the best value never regresses.
"""

from qantenna import (
    OptimizerConfig,
    brute_force,
    build_instance,
    generate_sites,
    qaoa_ladder,
)

inst = build_instance(generate_sites(10, (0, 0, 5, 5), 1.0, seed=7), lam=1.0)
spectrum = brute_force(inst)
print(f"n={inst.n} constrained, h_min={spectrum.h_min:.4f}")

ladder = qaoa_ladder(inst, p_max=6, walkers=4, rho=0.1,
                     cfg=OptimizerConfig(max_evals=50, seed=1),
                     spectrum=spectrum)
print(f"{'p':>3} {'alpha':>8} {'value':>10} {'walker':>7} {'evals':>6} {'p_tot':>6}")
for rec in ladder.records:
    print(f"{rec.p:>3} {rec.alpha:>8.4f} {rec.value:>10.4f} "
          f"{rec.walker_id:>7} {rec.evals:>6} {rec.p_tot:>6}")

print("\nbest schedule at the final depth:")
print("  beta :", " ".join(f"{b:+.3f}" for b in ladder.final.schedule.beta))
print("  gamma:", " ".join(f"{g:+.3f}" for g in ladder.final.schedule.gamma))
