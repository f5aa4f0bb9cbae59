"""Exact coefficients of the theta-derivative expansion of D_r**-(lam+1).

With a = cos(theta - phi) - sigma (1 - cos t), b = da/dtheta and
D_r = 1 - 2 r a + r**2, the l-th theta-derivative of D_r**-(lam+1) is a
finite sum of terms c * r**(i+j) * a**i * b**j * D_r**-(lam+1+s).  The
integer-indexed coefficient table is computed here in exact rational
arithmetic by enumerating derivative partitions; an independent jet-based
differentiator of the same quantity serves as the oracle.

The printed table carries no dependence on the exponent parameter: it is
exact for lam = 0 and acquires a per-term Pochhammer factor
(lam+1)_s / s! otherwise.  Both readings are exposed through an explicit
``mode`` argument, and the test suite fails loudly if the corrected form
ever disagrees with the jet oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .jets import Jet

__all__ = [
    "MAX_ORDER",
    "CORRECTION_MODES",
    "FaaTable",
    "KernelPoint",
    "coefficients",
    "pochhammer_factor",
    "jet_oracle",
    "expansion_eval",
    "sample_points",
]

MAX_ORDER = 12

CORRECTION_MODES = ("as-printed", "pochhammer-corrected")


@dataclass(frozen=True)
class FaaTable:
    """Coefficients of the order-``ell`` expansion, keyed by (s, i, j)."""

    ell: int
    entries: dict[tuple[int, int, int], Fraction]

    def support_ok(self) -> bool:
        """True iff every key satisfies s in [1, ell], j >= 2s - ell, i + j = s."""
        return all(
            1 <= s <= self.ell and j >= 2 * s - self.ell and i + j == s
            for (s, i, j) in self.entries
        )


@dataclass(frozen=True)
class KernelPoint:
    """A point (theta, phi, r, t) of the kernel integrand with its derived
    quantities."""

    theta: float
    phi: float
    r: float
    t: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi or not 0.0 < self.phi < math.pi:
            raise ValueError("theta and phi must lie in (0, pi)")
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        if not 0.0 <= self.t <= math.pi:
            raise ValueError(f"t must lie in [0, pi], got {self.t}")
        if abs(self.d_r - (1.0 - 2.0 * self.r * self.a + self.r**2)) > 1e-14 * max(1.0, self.d_r):
            raise ValueError("inconsistent point: D_r != 1 - 2 r a + r^2")

    @property
    def sigma(self) -> float:
        return math.sin(self.theta) * math.sin(self.phi)

    @property
    def a(self) -> float:
        return math.cos(self.theta - self.phi) - self.sigma * (1.0 - math.cos(self.t))

    @property
    def b(self) -> float:
        return -math.sin(self.theta - self.phi) - math.cos(self.theta) * math.sin(self.phi) * (
            1.0 - math.cos(self.t)
        )

    @property
    def delta_r(self) -> float:
        return (1.0 - self.r) ** 2 + 2.0 * self.r * (1.0 - math.cos(self.theta - self.phi))

    @property
    def d_r(self) -> float:
        return self.delta_r + 2.0 * self.r * self.sigma * (1.0 - math.cos(self.t))


def _partition_vectors(ell: int):
    """All (k_1, ..., k_ell) >= 0 with sum r*k_r = ell, lexicographically."""

    def rec(position: int, remaining: int, prefix: list[int]):
        if position == ell:
            if remaining == 0:
                yield tuple(prefix)
            return
        r = position + 1
        for count in range(remaining // r + 1):
            yield from rec(position + 1, remaining - r * count, prefix + [count])

    yield from rec(0, ell, [])


@lru_cache(maxsize=None)
def coefficients(ell: int) -> FaaTable:
    """Exact rational coefficient table for derivative order ``ell``."""
    if not 1 <= ell <= MAX_ORDER:
        raise ValueError(f"derivative order must lie in [1, {MAX_ORDER}], got {ell}")
    entries: dict[tuple[int, int, int], Fraction] = {}
    fact = [math.factorial(m) for m in range(ell + 1)]
    for ks in _partition_vectors(ell):
        s = sum(ks)
        i = sum(ks[r - 1] for r in range(2, ell + 1, 2))
        j = sum(ks[r - 1] for r in range(1, ell + 1, 2))
        alpha = sum((r - 1) * (ks[2 * r - 2] + ks[2 * r - 1]) for r in range(2, ell // 2 + 1))
        if ell % 2 == 1:
            alpha += (ell - 1) * ks[ell - 1] // 2
        denom = 1
        for r, k_r in enumerate(ks, start=1):
            denom *= fact[k_r] * fact[r] ** k_r
        term = Fraction(
            (-1) ** ((s + j + alpha) % 2) * 2**s * fact[ell] * fact[s], denom
        )
        key = (s, i, j)
        entries[key] = entries.get(key, Fraction(0)) + term
    entries = {key: value for key, value in entries.items() if value != 0}
    table = FaaTable(ell=ell, entries=entries)
    assert table.support_ok()
    return table


def pochhammer_factor(lam: float, s: int) -> float:
    """(lam+1)_s / s!, the per-term exponent correction; equals 1 at lam = 0."""
    value = 1.0
    for m in range(s):
        value *= (lam + 1.0 + m) / (m + 1.0)
    return value


def _validate_mode(mode: str) -> str:
    if mode not in CORRECTION_MODES:
        raise ValueError(f"mode must be one of {CORRECTION_MODES}, got {mode!r}")
    return mode


def expansion_eval(ell: int, lam: float, point: KernelPoint, mode: str = "pochhammer-corrected") -> float:
    """Evaluate the finite expansion of the ell-th derivative of D_r**-(lam+1).

    ``as-printed`` uses the table verbatim (exact at lam = 0);
    ``pochhammer-corrected`` multiplies each (s, i, j) term by
    (lam+1)_s / s!, the form validated against the jet oracle.
    """
    _validate_mode(mode)
    if lam < 0.0:
        raise ValueError(f"exponent parameter must be nonnegative, got {lam}")
    table = coefficients(ell)
    r, a, b, d = point.r, point.a, point.b, point.d_r
    value = 0.0
    for (s, i, j), coeff in sorted(table.entries.items()):
        factor = pochhammer_factor(lam, s) if mode == "pochhammer-corrected" else 1.0
        value += float(coeff) * factor * r ** (i + j) * a**i * b**j * d ** -(lam + 1.0 + s)
    return value


def jet_oracle(ell: int, lam: float, point: KernelPoint) -> float:
    """ell-th theta-derivative of D_r**-(lam+1) by jet arithmetic alone."""
    if ell < 0:
        raise ValueError(f"derivative order must be nonnegative, got {ell}")
    if lam < 0.0:
        raise ValueError(f"exponent parameter must be nonnegative, got {lam}")
    theta = Jet.variable(point.theta, ell)
    a = theta.cos() * math.cos(point.phi) + theta.sin() * (
        math.sin(point.phi) * math.cos(point.t)
    )
    d = 1.0 - 2.0 * point.r * a + point.r**2
    return float(d.power(-(lam + 1.0)).coeffs[ell])


def sample_points(count: int, seed: int = 1729) -> list[KernelPoint]:
    """Deterministic pseudo-random kernel points for checks and reports."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        points.append(
            KernelPoint(
                theta=float(rng.uniform(0.2, math.pi - 0.2)),
                phi=float(rng.uniform(0.2, math.pi - 0.2)),
                r=float(rng.uniform(0.05, 0.95)),
                t=float(rng.uniform(0.0, math.pi)),
            )
        )
    return points
