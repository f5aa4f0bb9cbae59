import math
from fractions import Fraction

import numpy as np
import pytest

from ultrariesz import (
    KernelPoint,
    coefficients,
    expansion_eval,
    jet_oracle,
    pochhammer_factor,
    sample_points,
)
from ultrariesz.faa_di_bruno import MAX_ORDER


class TestCoefficients:
    def test_order_one(self):
        table = coefficients(1)
        assert table.entries == {(1, 0, 1): Fraction(2)}

    def test_order_two(self):
        table = coefficients(2)
        assert table.entries == {(1, 1, 0): Fraction(-2), (2, 0, 2): Fraction(8)}

    def test_order_three_pure_chain_entry(self):
        assert coefficients(3).entries[(3, 0, 3)] == Fraction(48)

    def test_support_constraints(self):
        for ell in range(1, 9):
            table = coefficients(ell)
            assert table.support_ok()
            for (s, i, j) in table.entries:
                assert 1 <= s <= ell
                assert j >= 2 * s - ell
                assert i + j == s

    def test_rational_exactness(self):
        # every coefficient of D_r^(-1) derivatives is an even integer
        for ell in range(1, 7):
            for coeff in coefficients(ell).entries.values():
                assert coeff.denominator == 1
                assert coeff.numerator % 2 == 0

    def test_order_validation(self):
        with pytest.raises(ValueError):
            coefficients(0)
        with pytest.raises(ValueError):
            coefficients(MAX_ORDER + 1)

    def test_tables_cached(self):
        assert coefficients(4) is coefficients(4)


class TestKernelPoint:
    def test_identity_d_r(self):
        point = KernelPoint(theta=1.1, phi=0.5, r=0.7, t=2.0)
        direct = 1.0 - 2.0 * point.r * point.a + point.r**2
        assert point.d_r == pytest.approx(direct, rel=1e-14)
        assert point.d_r > 0.0
        assert abs(point.a) <= 1.0 + 1e-12

    def test_b_is_theta_derivative_of_a(self):
        h = 1e-6
        base = dict(phi=0.5, r=0.7, t=2.0)
        plus = KernelPoint(theta=1.1 + h, **base)
        minus = KernelPoint(theta=1.1 - h, **base)
        point = KernelPoint(theta=1.1, **base)
        assert point.b == pytest.approx((plus.a - minus.a) / (2 * h), abs=1e-9)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            KernelPoint(theta=0.0, phi=1.0, r=0.5, t=1.0)
        with pytest.raises(ValueError):
            KernelPoint(theta=1.0, phi=1.0, r=1.0, t=1.0)


class TestJetOracle:
    def test_order_zero(self):
        point = KernelPoint(theta=1.2, phi=0.8, r=0.4, t=1.5)
        assert jet_oracle(0, 1.0, point) == pytest.approx(point.d_r ** -2.0, rel=1e-14)

    def test_order_one_chain_rule(self):
        lam = 0.7
        point = KernelPoint(theta=1.2, phi=0.8, r=0.4, t=1.5)
        expected = 2.0 * (lam + 1.0) * point.r * point.b * point.d_r ** -(lam + 2.0)
        assert jet_oracle(1, lam, point) == pytest.approx(expected, rel=1e-13)

    def test_against_finite_differences(self):
        lam = 0.0
        h = 1e-4
        base = dict(phi=0.9, r=0.6, t=1.1)
        f = lambda th: KernelPoint(theta=th, **base).d_r ** -(lam + 1.0)
        fd2 = (f(1.3 + h) - 2 * f(1.3) + f(1.3 - h)) / h**2
        assert jet_oracle(2, lam, KernelPoint(theta=1.3, **base)) == pytest.approx(fd2, rel=1e-6)


class TestExpansion:
    def test_as_printed_exact_at_lambda_zero(self):
        for point in sample_points(10):
            for ell in range(1, 7):
                printed = expansion_eval(ell, 0.0, point, "as-printed")
                oracle = jet_oracle(ell, 0.0, point)
                assert printed == pytest.approx(oracle, rel=1e-10)

    def test_pochhammer_corrected_matches_oracle(self):
        # the correction conjecture: if this fails the tables cannot be used
        points = sample_points(50)
        for lam in (0.0, 0.5, 1.0, 2.5):
            for ell in range(1, 7):
                for point in points:
                    corrected = expansion_eval(ell, lam, point, "pochhammer-corrected")
                    oracle = jet_oracle(ell, lam, point)
                    assert corrected == pytest.approx(
                        oracle, rel=1e-10
                    ), f"correction conjecture fails at ell={ell}, lam={lam}"

    def test_as_printed_disagrees_for_positive_lambda(self):
        point = sample_points(1)[0]
        printed = expansion_eval(2, 1.0, point, "as-printed")
        oracle = jet_oracle(2, 1.0, point)
        assert abs(printed - oracle) > 1e-6 * abs(oracle)

    def test_pochhammer_factor_values(self):
        assert pochhammer_factor(0.0, 3) == pytest.approx(1.0)
        assert pochhammer_factor(1.0, 2) == pytest.approx((2.0 * 3.0) / 2.0)

    def test_reflection_parity(self):
        # reflecting both angles flips the sign of b and hence multiplies
        # each (s, i, j) term by (-1)^j; the jet oracle must track it
        rng = np.random.default_rng(3)
        for _ in range(10):
            theta = float(rng.uniform(0.3, math.pi - 0.3))
            phi = float(rng.uniform(0.3, math.pi - 0.3))
            r = float(rng.uniform(0.1, 0.9))
            t = float(rng.uniform(0.1, math.pi - 0.1))
            point = KernelPoint(theta=theta, phi=phi, r=r, t=t)
            mirror = KernelPoint(theta=math.pi - theta, phi=math.pi - phi, r=r, t=t)
            assert mirror.a == pytest.approx(point.a, rel=1e-12)
            assert mirror.b == pytest.approx(-point.b, rel=1e-12)
            for ell in (1, 2, 3):
                direct = expansion_eval(ell, 0.5, mirror)
                flipped = sum(
                    float(c)
                    * pochhammer_factor(0.5, s)
                    * point.r ** (i + j)
                    * point.a**i
                    * (-point.b) ** j
                    * point.d_r ** -(0.5 + 1.0 + s)
                    for (s, i, j), c in coefficients(ell).entries.items()
                )
                assert direct == pytest.approx(flipped, rel=1e-11)

    def test_mode_validation(self):
        point = sample_points(1)[0]
        with pytest.raises(ValueError):
            expansion_eval(2, 1.0, point, "apply-twice")
