"""Oscillation and rho-variation of the truncated Riesz transforms.

The truncations T_eps f(theta) converge as eps -> 0; the oscillation
operator (l2 over fixed bands of the in-band spread) and the rho-variation
(sup over decreasing radius subsequences of the l^rho jump sum) measure how
fast.  Both are exact on a finite radius grid, and their L^p norms against
dm_lambda stay stable when the grid is refined.
"""

import math

import numpy as np

from ultrariesz import (
    DyadicBands,
    SpectralCoefficients,
    TruncationSchedule,
    build_rule,
    convergence_report,
    oscillation,
    rho_variation,
)
from ultrariesz.variation import TruncationTrace

print("hand-sized examples first:")
trace = TruncationTrace(
    epsilons=np.array([0.4, 0.2, 0.1]), values=np.array([0.0, 1.0, 0.0]), theta=1.0
)
print(f"  zigzag (0,1,0):  V_3 = {rho_variation(trace, 3.0):.6f}  (= 2^(1/3))")
trace = TruncationTrace(
    epsilons=np.array([0.9, 0.6, 0.4, 0.3]),
    values=np.array([0.0, 1.0, 0.0, 1.0]),
    theta=1.0,
)
bands = DyadicBands(np.array([1.0, 0.5, 0.25]))
print(f"  two unit swings in two bands: O = {oscillation(trace, bands):.6f}  (= sqrt 2)")

print("\nconvergence report for the order-1 transform, lambda = 1:")
lam, k, rho = 1.0, 1, 3.0
rule = build_rule(lam, 48)
coeffs = SpectralCoefficients(lam, [0.0, 0.0, 1.0, 0.0, 0.5])
# sqrt(2)-spaced radii put two grid points in every dyadic band; with
# ratio exactly 1/2 each band would hold a single point and the
# oscillation would degenerate to zero
schedule = TruncationSchedule.geometric(0.5, 2.0 ** -0.5, 21)
report = convergence_report(
    coeffs,
    lam,
    k,
    np.linspace(0.5, math.pi - 0.5, 5),
    schedule,
    DyadicBands.dyadic(1.0, 12),
    rho,
    rule,
    n_max=10,
)
print(f"  {'theta':>6} {'oscillation':>12} {'variation':>12} {'maximal':>12} {'pv-vs-spectral':>15}")
for record in report.records:
    print(
        f"  {record.theta:6.3f} {record.oscillation:12.6f} {record.variation:12.6f} "
        f"{record.maximal:12.6f} {record.abs_error:15.2e}"
    )
print("  L2 norms over the theta grid:")
print(f"    ||f|| = {report.norms['p2']['f']:.6f}")
print(f"    ||O(f)|| = {report.norms['p2']['oscillation']:.6f}")
print(f"    ||V_rho(f)|| = {report.norms['p2']['variation']:.6f}")
print(f"    ||sup_eps |T_eps f||| = {report.norms['p2']['maximal']:.6f}")
