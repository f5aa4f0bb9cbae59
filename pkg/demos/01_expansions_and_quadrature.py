"""Gegenbauer expansions and the quadrature underneath them.

Walks through the measure dm_lambda, the Gaussian rules built for it, the
closed-form polynomial norms, and round-trip analysis/synthesis of a
band-limited function.
"""

import math

import numpy as np

from ultrariesz import (
    SpectralCoefficients,
    analyze,
    band_limited,
    beta,
    build_rule,
    gegenbauer_eval,
    integrate,
    norm_sq,
    singular_integrate,
    synthesize,
    total_mass,
)

lam = 0.8
rule = build_rule(lam, 32)

print(f"ultraspherical parameter lambda = {lam}")
print(f"total mass of dm_lambda:  quadrature {rule.weights.sum():.15f}")
print(f"                          closed form {total_mass(lam):.15f}")

print("\nGaussian rule vs closed-form norms ||P_n||^2:")
for n in (0, 3, 10, 25):
    quad = integrate(rule, lambda th: gegenbauer_eval(n, lam, np.cos(th)) ** 2)
    print(f"  n={n:2d}: quadrature {quad:.12e}   closed form {norm_sq(n, lam):.12e}")

print("\nEndpoint-singular integrals go through tanh-sinh quadrature:")
value = singular_integrate(lambda t: np.sin(t) ** (2 * lam - 1.0), 0.0, math.pi)
print(f"  integral of (sin t)^(2 lam - 1) = {value:.12f}")
print(f"  Beta(lam, 1/2)                  = {beta(lam, 0.5):.12f}")

print("\nAnalysis/synthesis round trip for a band-limited function:")
coeffs = SpectralCoefficients(lam, [0.0, 1.0, 0.0, -0.6, 0.0, 0.25])
f = band_limited(coeffs)
recovered = analyze(f, lam, 8, rule)
print(f"  input coefficients:     {np.round(coeffs.coeffs, 12)}")
print(f"  recovered (degree <=8): {np.round(recovered.coeffs, 12)}")
for theta in (0.6, 1.5, 2.8):
    print(f"  f({theta}) = {f(theta):+.12f}   synthesized {synthesize(recovered, theta):+.12f}")
