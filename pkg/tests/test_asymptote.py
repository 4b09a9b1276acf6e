"""Tests for the closed-form rank-frequency laws."""

import math

import numpy as np
import pytest
from scipy import integrate

from rankfreq import (
    GeometricRankLaw,
    PowerAsymptote,
    TuringAsymptote,
    ZipfAsymptote,
    beta_of_theta,
    converges,
    cumulative,
    cumulative_discrete,
    frequency_at,
    geometric_pmf,
    normalize,
    theta_of_beta,
)

ALL_SPECS = [
    TuringAsymptote(10.0),
    TuringAsymptote(1.0),
    PowerAsymptote(1.5),
    PowerAsymptote(2.0, scale=0.3),
    PowerAsymptote(2.5),
    ZipfAsymptote(1.0),
    ZipfAsymptote(2.0, b=3.0),
    GeometricRankLaw(0.25),
]


class TestFrequencyAt:
    def test_turing_top_frequency_is_exactly_one_over_n1(self):
        spec = TuringAsymptote(10.0)
        assert frequency_at(spec, 1.0) == 1.0 / 10.0

    def test_turing_decay(self):
        spec = TuringAsymptote(10.0)
        assert frequency_at(spec, 11.0) == pytest.approx(0.1 * math.exp(-1.0), rel=1e-15)

    def test_zipf_substitution(self):
        assert frequency_at(ZipfAsymptote(1.0, 0.0), 4.0) == 0.25

    def test_rejects_sub_unit_rank(self):
        for spec in ALL_SPECS:
            with pytest.raises(ValueError):
                frequency_at(spec, 0.5)

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_strictly_decreasing(self, spec):
        r = np.linspace(1.0, 500.0, 2000)
        f = frequency_at(spec, r)
        assert np.all(f > 0.0)
        assert np.all(np.diff(f) < 0.0)

    def test_zipf_and_power_theta2_agree(self):
        zipf = ZipfAsymptote(0.7, 0.0)
        power = PowerAsymptote(2.0, scale=0.7)
        for r in (1.0, 2.0, 10.0, 100.0):
            assert frequency_at(zipf, r) == pytest.approx(
                frequency_at(power, r), rel=1e-12)


class TestBetaTheta:
    def test_zipf_exponent(self):
        assert beta_of_theta(2.0) == 1.0

    def test_substitution(self):
        assert theta_of_beta(2.0) == 1.5

    def test_inverse_pair(self):
        assert theta_of_beta(beta_of_theta(1.7)) == pytest.approx(1.7, rel=1e-12)
        assert beta_of_theta(theta_of_beta(3.2)) == pytest.approx(3.2, rel=1e-12)

    def test_domains(self):
        with pytest.raises(ValueError):
            beta_of_theta(1.0)
        with pytest.raises(ValueError):
            beta_of_theta(0.5)
        with pytest.raises(ValueError):
            theta_of_beta(0.0)
        with pytest.raises(ValueError):
            theta_of_beta(-1.0)


class TestGeometricPmf:
    def test_substitution(self):
        assert geometric_pmf(0.5, 1) == 0.5
        assert geometric_pmf(0.5, 2) == 0.25

    def test_partial_sum_reaches_one(self):
        total = math.fsum(geometric_pmf(0.5, r) for r in range(1, 201))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_mode_at_one_and_non_increasing(self):
        values = [geometric_pmf(0.1, r) for r in range(1, 50)]
        assert values[0] == 0.1
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            geometric_pmf(0.0, 1)
        with pytest.raises(ValueError):
            geometric_pmf(1.0, 1)
        with pytest.raises(ValueError):
            geometric_pmf(0.5, 0)


class TestCumulative:
    def test_turing_tends_to_one(self):
        spec = TuringAsymptote(7.0)
        assert cumulative(spec, 1e9) == pytest.approx(1.0, rel=1e-12)

    def test_zipf_is_log_and_unbounded(self):
        spec = ZipfAsymptote(1.0, 0.0)
        for r in (2.0, 10.0, 1e6):
            assert cumulative(spec, r) == pytest.approx(math.log(r), rel=1e-12)

    def test_power_theta_15_closed_form(self):
        # analytic integral of r^-2 from 1 to r is 1 - 1/r
        spec = PowerAsymptote(1.5, scale=1.0)
        assert cumulative(spec, 2.0) == pytest.approx(0.5, rel=1e-12)
        for r in (1.5, 3.0, 20.0):
            assert cumulative(spec, r) == pytest.approx(1.0 - 1.0 / r, rel=1e-12)

    @pytest.mark.parametrize("spec", [
        TuringAsymptote(5.0),
        PowerAsymptote(1.5),
        PowerAsymptote(2.0, scale=0.4),
        PowerAsymptote(3.0),
        ZipfAsymptote(1.3, 2.0),
    ])
    def test_matches_numeric_quadrature(self, spec):
        for r in (2.0, 7.5, 40.0):
            numeric, _ = integrate.quad(lambda t: float(frequency_at(spec, t)), 1.0, r)
            assert cumulative(spec, r) == pytest.approx(numeric, rel=1e-9)

    def test_geometric_partial_sum(self):
        spec = GeometricRankLaw(0.3)
        for r in (1, 2, 10):
            assert cumulative(spec, r) == pytest.approx(
                cumulative_discrete(spec, r), rel=1e-12)

    def test_discrete_summation_utility(self):
        spec = ZipfAsymptote(1.0)
        assert cumulative_discrete(spec, 3) == pytest.approx(1.0 + 0.5 + 1 / 3, rel=1e-14)


class TestConverges:
    @pytest.mark.parametrize("theta,expected", [
        (0.5, False), (1.0, True), (1.5, True), (1.9, True),
        (2.0, False), (2.5, False),
    ])
    def test_region(self, theta, expected):
        assert converges(theta) is expected

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            converges(float("nan"))


class TestNormalization:
    @pytest.mark.parametrize("n1", [1.0, 5.0, 50.0])
    def test_turing_total_mass_is_one(self, n1):
        spec = TuringAsymptote(n1)
        total, _ = integrate.quad(lambda t: float(frequency_at(spec, t)),
                                  1.0, 50.0 * n1)
        assert total == pytest.approx(1.0, abs=1e-6)
        assert frequency_at(spec, 1.0) == 1.0 / n1

    def test_rate_and_scale_forms_agree(self):
        spec = TuringAsymptote(4.0)
        alt = TuringAsymptote.from_rate(spec.rate)
        assert alt == spec
        r = np.array([1.0, 3.0, 9.0])
        np.testing.assert_allclose(spec.scale * np.exp(-spec.rate * r),
                                   frequency_at(spec, r), rtol=1e-12)

    @pytest.mark.parametrize("theta", [1.2, 1.5, 1.9])
    def test_normalize_inside_the_region(self, theta):
        spec = normalize(PowerAsymptote(theta, scale=3.0))
        beta = beta_of_theta(theta)
        # the cumulative limit C/(beta-1) becomes exactly 1
        assert spec.scale / (beta - 1.0) == pytest.approx(1.0, rel=1e-12)
        grid = [1e3, 1e6, 1e9]
        values = [float(cumulative(spec, r)) for r in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))  # saturates at 1
        assert all(v <= 1.0 for v in values)
        # closed-form remainder restores the unit limit at any truncation
        for r, v in zip(grid, values):
            assert v + spec.scale * r ** (1.0 - beta) / (beta - 1.0) == \
                pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("theta", [2.0, 2.5])
    def test_normalize_rejects_divergent_members(self, theta):
        with pytest.raises(ValueError):
            normalize(PowerAsymptote(theta))
        with pytest.raises(ValueError):
            normalize(ZipfAsymptote(1.0))

    def test_normalize_is_identity_on_normalized_laws(self):
        for spec in (TuringAsymptote(5.0), GeometricRankLaw(0.4)):
            assert normalize(spec) is spec


class TestClassifierAgreement:
    def test_converges_matches_probe_boundedness_across_the_grid(self):
        from rankfreq import integral_convergence_probe, is_bounded_sequence
        for theta10 in range(10, 26):
            theta = theta10 / 10.0
            if theta == 1.0:
                values = [float(cumulative(TuringAsymptote(5.0), r))
                          for r in (1e5, 1e6, 1e7)]
            else:
                alpha = -1.0 / (theta - 1.0)
                values = [v for _, v in
                          integral_convergence_probe(alpha, [1e5, 1e6, 1e7])]
            assert is_bounded_sequence(values) is converges(theta), theta


class TestSpecValidation:
    def test_power_rejects_theta_at_or_below_one(self):
        with pytest.raises(ValueError):
            PowerAsymptote(1.0)
        with pytest.raises(ValueError):
            PowerAsymptote(0.7)

    def test_zipf_shift_range(self):
        with pytest.raises(ValueError):
            ZipfAsymptote(1.0, b=-1.0)
        ZipfAsymptote(1.0, b=-0.5)

    def test_turing_needs_positive_n1(self):
        with pytest.raises(ValueError):
            TuringAsymptote(0.0)
