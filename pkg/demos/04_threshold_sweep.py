"""Sweep the rejection threshold and see why 1/e is the classic choice.

All thresholds share the same simulated trials (common random numbers), so
the resulting curve is smooth and differences between neighbouring
thresholds are real, not noise.
"""

import math

from poset_secretary import chain, random_poset, threshold_sweep

TRIALS = 200_000
taus = [k / 20 for k in range(20)]

for label, p in [("chain(12)", chain(12)), ("random(8, 0.4)", random_poset(8, 0.4, seed=5))]:
    rows = threshold_sweep(p, taus, TRIALS, master_seed=11)
    best = max(rows, key=lambda r: r.p_hat)
    print(f"{label}: best tau {best.tau:.2f} with p_hat {best.p_hat:.4f} "
          f"(1/e = {1 / math.e:.3f})")
    for r in rows:
        bar = "#" * round(r.p_hat * 60)
        print(f"  tau={r.tau:.2f}  {r.p_hat:.4f}  {bar}")
    print()
