"""
Chebyshev sums by Frobenius class
=================================

psi_C(x) adds log p over unramified p <= x with Frobenius class C.  The
density theorem says psi_C(x) / psi(x) tends to |C|/|G|.  The error
delta_C(x) = psi_C(x) - (|C|/|G|) psi(x) is tracked at log-spaced
checkpoints, and a least-squares slope of log|delta_C| against log x
gives a rough growth exponent.
"""

import numpy as np

from cheblab.chebstats import run_stats
from cheblab.frobenius import make_scenario

np.set_printoptions(precision=5, suppress=True)

rep = run_stats(make_scenario("cyclo:4"), 10**6)
print("cyclo:4, classes", rep.class_names)
for x, row in zip(rep.x, rep.rel_err):
    print(f"  x = {x:>8d}  delta/psi = {row}")
print("fitted exponents:", rep.exponents)

rep = run_stats(make_scenario("cubic:2"), 10**6)
print()
print("cubic:2 proportions at 1e6:", rep.proportions[-1], "target", rep.densities)

# CSV for an external plotter
print()
print("\n".join(rep.to_csv(["demo"]).splitlines()[:6]))
