"""
A Bayesian check on the shortcut
================================

Chop the parameter range into hypotheses -3.0, -2.9, ..., 3.0, give each the
same prior weight and apply Bayes' rule. The posterior should reproduce the
confidence distribution, getting closer as the grid gets finer.
"""

import time

import numpy as np

from conflevel import (
    ConfidenceDistribution,
    GreaterThan,
    Normal,
    ParameterGrid,
    StudentT,
    confidence_level,
    grid_confidence,
    posterior,
    verify_shift_identity,
)

x, se, t40 = 1.07, 1.07 / 2.40, StudentT(40)
cd = ConfidenceDistribution(x, se, t40)

for step in (0.1, 0.01, 0.001):
    grid = ParameterGrid(-3.0, 3.0, step)
    t = time.perf_counter()
    post = posterior(grid, x, t40, se)
    gap = verify_shift_identity(grid, x, t40, se)
    print(f"step {step:<6} hypotheses {grid.n:<5} "
          f"conf(x>0) {grid_confidence(post, GreaterThan(0)):.6f} "
          f"conf(x>1) {grid_confidence(post, GreaterThan(1)):.6f} "
          f"max gap {gap:.1e}  ({time.perf_counter() - t:.2f} s)")

print("continuous           ",
      f"conf(x>0) {confidence_level(cd, GreaterThan(0)).confidence:.6f}",
      f"conf(x>1) {confidence_level(cd, GreaterThan(1)).confidence:.6f}")

# the remaining gap is mass the t(40) tail puts beyond +3, outside every hypothesis
print("truncation at step 0.01:", posterior(ParameterGrid(-3, 3, 0.01), x, t40, se).truncation)

# with negligible truncation the two routes agree to rounding
print("normal, x = 0:", verify_shift_identity(ParameterGrid(-3, 3, 0.01), 0.0, Normal(), se))

# a prior that is not flat breaks the agreement
grid = ParameterGrid(-6, 6, 0.1)
tilted = np.exp(-grid.values**2)
print("flat prior gap  ", verify_shift_identity(grid, 1.0, Normal(), 0.5))
print("tilted prior gap", verify_shift_identity(grid, 1.0, Normal(), 0.5, prior=tilted))
