"""Scalar special-function kernel tests.

Oracles: math.lgamma (libm), a Richardson finite difference of lgamma for
digamma, a Kahan-compensated series for 2F1, and constants frozen from
40-digit arithmetic.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import digamma_fd, hyp2f1_series_kahan
from sechbloch.specfun import (
    ConvergenceError,
    Hyp2F1Params,
    cospi,
    digamma,
    gamma,
    hyp2f1,
    hyp2f1_at_unity,
    ln_gamma,
    pochhammer,
    recip_gamma,
    signed_ln_gamma,
    signed_ln_recip_gamma,
    sinpi,
)


class TestLnGamma:
    def test_against_libm_grid(self):
        for i in range(1, 1000):
            x = 0.05 * i
            assert ln_gamma(x) == pytest.approx(math.lgamma(x), abs=1e-12, rel=1e-13)

    def test_small_argument_frozen(self):
        # 40-digit arithmetic: lgamma(0.07) = 2.6227537606032154926
        assert ln_gamma(0.07) == pytest.approx(2.6227537606032154926, abs=5e-14)

    def test_half_integer(self):
        assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)

    def test_rejects_nonpositive(self):
        for x in (0.0, -1.0, -3.5):
            with pytest.raises(ValueError):
                ln_gamma(x)

    @settings(max_examples=200)
    @given(st.floats(min_value=0.5, max_value=50.0))
    def test_recurrence(self, x):
        assert abs(ln_gamma(x + 1.0) - ln_gamma(x) - math.log(x)) <= 1e-12


class TestSignedForms:
    def test_negative_arguments(self):
        # G(-0.5) = -2 sqrt(pi), G(-1.5) = 4 sqrt(pi)/3
        s, ln_m = signed_ln_gamma(-0.5)
        assert s == -1.0
        assert math.exp(ln_m) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-14)
        s, ln_m = signed_ln_gamma(-1.5)
        assert s == 1.0
        assert math.exp(ln_m) == pytest.approx(4.0 * math.sqrt(math.pi) / 3.0, rel=1e-14)

    def test_poles_raise(self):
        for x in (0.0, -2.0):
            with pytest.raises(ValueError):
                signed_ln_gamma(x)

    def test_recip_signs_and_zeros(self):
        s, _ = signed_ln_recip_gamma(-0.5)
        assert s == -1.0
        s, ln_m = signed_ln_recip_gamma(-4.0)
        assert s == 0.0 and ln_m == -math.inf

    def test_gamma_and_recip(self):
        assert gamma(5.0) == pytest.approx(24.0, rel=1e-13)
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)
        for n in (0.0, -1.0, -7.0):
            assert recip_gamma(n) == 0.0
        assert recip_gamma(3.0) == pytest.approx(0.5, rel=1e-14)

    @settings(max_examples=200)
    @given(st.floats(min_value=0.01, max_value=0.99))
    def test_reflection_identity(self, x):
        # recip(x) recip(1-x) pi / sin(pi x) = 1
        prod = recip_gamma(x) * recip_gamma(1.0 - x) * math.pi / sinpi(x)
        assert abs(prod - 1.0) <= 1e-11


class TestDigamma:
    def test_classical_values(self):
        euler = 0.5772156649015329
        assert digamma(1.0) == pytest.approx(-euler, abs=1e-14)
        assert digamma(0.5) == pytest.approx(-euler - 2.0 * math.log(2.0), abs=1e-13)
        # psi(n + 1/2) = psi(1/2) + 2 (1 + 1/3 + ... + 1/(2n-1))
        assert digamma(3.5) == pytest.approx(
            -euler - 2.0 * math.log(2.0) + 2.0 * (1.0 + 1.0 / 3.0 + 1.0 / 5.0),
            abs=1e-13)

    def test_frozen_spots(self):
        # 40-digit arithmetic
        assert digamma(0.37) == pytest.approx(-2.7953014108905639616, abs=1e-13)
        assert digamma(7.77) == pytest.approx(1.9845420583479447693, abs=1e-13)
        assert digamma(23.456) == pytest.approx(3.133658381209460093, abs=1e-13)
        assert digamma(0.05) == pytest.approx(-20.497844991299870371, abs=1e-12)

    def test_against_fd_oracle(self):
        for x in (0.3, 0.9, 1.7, 4.2, 11.0, 33.3):
            assert digamma(x) == pytest.approx(digamma_fd(x), abs=1e-10)

    def test_rejects_nonpositive(self):
        for x in (0.0, -2.0):
            with pytest.raises(ValueError):
                digamma(x)

    @settings(max_examples=200)
    @given(st.floats(min_value=0.25, max_value=50.0))
    def test_recurrence(self, x):
        assert abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-11


class TestPochhammer:
    def test_basic(self):
        assert pochhammer(1.0, 5) == 120.0
        assert pochhammer(0.5, 0) == 1.0
        # frozen: (0.3)_7 from 40-digit arithmetic
        assert pochhammer(0.3, 7) == pytest.approx(425.0022777, rel=1e-12)

    def test_negative_base_terminates(self):
        assert pochhammer(-2.0, 3) == 0.0
        assert pochhammer(-2.5, 2) == pytest.approx(3.75, rel=1e-15)


class TestTrigExact:
    def test_exact_zeros_and_signs(self):
        for n in range(-6, 7):
            assert sinpi(float(n)) == 0.0
            assert cospi(n + 0.5) == 0.0
        assert cospi(0.0) == 1.0
        assert cospi(1.0) == -1.0
        assert sinpi(0.5) == 1.0
        assert sinpi(-0.5) == -1.0
        assert sinpi(2.5) == 1.0

    @settings(max_examples=200)
    @given(st.floats(min_value=-30.0, max_value=30.0))
    def test_matches_libm_away_from_reduction_gains(self, x):
        assert sinpi(x) == pytest.approx(math.sin(math.pi * x), abs=1e-13)
        assert cospi(x) == pytest.approx(math.cos(math.pi * x), abs=1e-13)


class TestHyp2F1Params:
    def test_rejects_nonpositive_integer_nu(self):
        for nu in (0.0, -1.0, -2.0, 1e-13):
            with pytest.raises(ValueError):
                Hyp2F1Params(lam=0.3, mu=-0.3, nu=nu)

    def test_for_inversion(self):
        p = Hyp2F1Params.for_inversion(1.5, 0.2)
        assert (p.lam, p.mu, p.nu) == (1.5, -1.5, 0.7)


class TestHyp2F1:
    # Frozen reference values from 40-digit arithmetic.
    SERIES_CASES = [
        ((0.7, -0.3, 1.1), 0.35, 0.92508828281177538813),
        ((1.5, -2.5, 0.8), 0.6, -0.29968764557948767789),
        ((2.0, -2.0, 1.5), 0.9, -0.104),
    ]
    TRANSFORM_CASES = [
        ((0.31, 0.27, 1.11), 0.93, 1.1422632729561183552),
        ((0.45, -0.45, 0.83), 0.97, 0.6443713632552430352),
        ((1.3, -1.3, 0.62), 0.999, -0.54709264554849418288),
    ]

    @pytest.mark.parametrize("abc,z,expected", SERIES_CASES + TRANSFORM_CASES)
    def test_frozen_values(self, abc, z, expected):
        got = hyp2f1(Hyp2F1Params(*abc), z)
        assert got == pytest.approx(expected, abs=1e-13)

    def test_z_zero_and_terminating(self):
        p = Hyp2F1Params(0.4, -0.4, 0.9)
        assert hyp2f1(p, 0.0) == 1.0
        # F(1, -1; 3/2; 1) = 1 - 1/(3/2) = 1/3 exactly (one term)
        got = hyp2f1(Hyp2F1Params(1.0, -1.0, 1.5), 1.0)
        assert got == pytest.approx(1.0 / 3.0, abs=2e-16)

    def test_domain_errors(self):
        p = Hyp2F1Params(0.4, -0.4, 0.9)
        for z in (-0.1, 1.0000001, math.nan):
            with pytest.raises(ValueError):
                hyp2f1(p, z)

    def test_against_series_oracle_across_dispatch(self):
        # Covers both the direct-series region and the transformed region.
        for z in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            for lam, mu, nu in ((0.8, -0.8, 0.75), (1.7, -1.7, 1.3),
                                (0.35, 0.6, 2.2)):
                got = hyp2f1(Hyp2F1Params(lam, mu, nu), z)
                ref = hyp2f1_series_kahan(lam, mu, nu, z)
                assert got == pytest.approx(ref, abs=1e-9), (lam, mu, nu, z)

    def test_documented_degenerate_gap(self):
        # Non-integer parameters whose nu - lam - mu is an exact integer
        # force the slow direct series near z = 1; the term budget can run
        # out. This is the documented edge of the evaluation strategy.
        p = Hyp2F1Params(0.3, -0.3, 1.0)  # s = 1.0 exactly, non-terminating
        with pytest.raises(ConvergenceError):
            hyp2f1(p, 1.0 - 1e-10)

    def test_degenerate_family_still_fine_in_series_region(self):
        p = Hyp2F1Params(0.3, -0.3, 1.0)
        ref = hyp2f1_series_kahan(0.3, -0.3, 1.0, 0.7)
        assert hyp2f1(p, 0.7) == pytest.approx(ref, abs=1e-12)


class TestHyp2F1AtUnity:
    def test_frozen_value(self):
        # 40-digit arithmetic: F(1.2, -1.2; 1.7; 1)
        got = hyp2f1_at_unity(Hyp2F1Params(1.2, -1.2, 1.7))
        assert got == pytest.approx(0.25490867174658332608, abs=1e-14)

    def test_gauss_summation_identity(self):
        # F(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)) for generic values
        a, b, c = 0.3, -0.7, 1.9
        expected = (gamma(c) * gamma(c - a - b)) / (gamma(c - a) * gamma(c - b))
        assert hyp2f1_at_unity(Hyp2F1Params(a, b, c)) == pytest.approx(
            expected, rel=1e-13)

    def test_pole_in_denominator_gives_zero(self):
        # nu - lam = -2 here: the reciprocal gamma vanishes and the value
        # is an exact zero (this is how the inversion nodes arise).
        assert hyp2f1_at_unity(Hyp2F1Params.for_inversion(2.7, 0.2)) == 0.0

    def test_divergent_raises(self):
        # c - a - b <= 0 diverges
        with pytest.raises(ValueError):
            hyp2f1_at_unity(Hyp2F1Params(1.0, 1.0, 1.5))

    @settings(max_examples=150, deadline=None)
    @given(st.floats(min_value=0.0, max_value=6.0),
           st.floats(min_value=0.05, max_value=3.0))
    def test_boundary_consistency_with_hyp2f1(self, alpha, gam):
        p = Hyp2F1Params.for_inversion(alpha, gam)
        assert abs(hyp2f1(p, 1.0) - hyp2f1_at_unity(p)) <= 1e-9
