#!/usr/bin/env python3
"""Generate candidate antenna sites and inspect the areas behind the model.

Each site is a disk; its area rewards coverage and pairwise lens
(intersection) areas penalise overlap.
"""

import tempfile

from qantenna import circle_area, generate_sites, lens_area, load_sites, save_sites

sites = generate_sites(n=12, bbox=(0, 0, 5, 5), r_max=1.0, seed=7, label="demo")
print(f"generated {len(sites)} sites, first three:")
for s in sites.sites[:3]:
    print(f"  ({s.x:6.3f}, {s.y:6.3f})  r={s.r:.3f}  area={circle_area(s.r):.3f}")

print("\npairwise lens areas over 0.1:")
for i in range(len(sites)):
    for j in range(i + 1, len(sites)):
        area = lens_area(sites[i], sites[j])
        if area > 0.1:
            print(f"  sites {i:2d},{j:2d}: {area:.3f}")

with tempfile.NamedTemporaryFile(suffix=".json") as fh:
    save_sites(sites, fh.name)
    again = load_sites(fh.name)
    print(f"\nround-tripped through JSON: {again == sites}")
