"""
What does "95% confident" buy you?
==================================

Two simulations. Fix the truth and count how often intervals cover it. Then
draw the truth uniformly, state a confidence for x > 0, and check that
statements of 80% come true about 80% of the time.
"""

from conflevel import Normal, ParameterGrid, StudentT, SummaryShape, coverage_experiment, posterior_calibration

shape = SummaryShape(StudentT(40), 1.0)
for level in (0.8, 0.9, 0.95, 0.99):
    r = coverage_experiment(true_param=2.0, shape=shape, level=level, trials=100_000, seed=0)
    print(f"level {level:.2f}: coverage {r.coverage:.4f} (+/- {3 * r.standard_error:.4f})")

rep = posterior_calibration(ParameterGrid(-10, 10, 0.01), SummaryShape(Normal(), 1.0), threshold=0.0, seed=0)
print(f"\n{'stated':>14} {'n':>7} {'mean stated':>12} {'came true':>10}")
for b in rep.bins:
    flag = "" if b.calibrated() else "  <-- off"
    print(f"[{b.lo:.1f}, {b.hi:.1f}) {b.count:>7} {b.mean_confidence:>12.3f} {b.hit_fraction:>10.3f}{flag}")
print("calibrated:", rep.calibrated)

# squeeze the truth into [-1, 1] while estimates still wander by about 1: the flat-prior story breaks
narrow = posterior_calibration(ParameterGrid(-1, 1, 0.01), SummaryShape(Normal(), 1.0), 0.0, seed=0)
print("narrow grid calibrated:", narrow.calibrated)
