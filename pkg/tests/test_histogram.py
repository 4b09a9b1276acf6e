"""Tests for the frequency-of-frequencies table and the reestimation rule."""

import math
from fractions import Fraction

import numpy as np
import pytest

from rankfreq import (
    FrequencyHistogram,
    UndefinedReestimateError,
    build_histogram,
    ideal_histogram,
)


class TestBuildHistogram:
    def test_direct_counting(self):
        h = build_histogram({"a": 1, "b": 1, "c": 2})
        assert h.entries == {1: 2.0, 2: 1.0}

    def test_empty(self):
        h = build_histogram({})
        assert h.entries == {}
        assert h.max_count == 0
        assert h.total_population() == 0.0

    def test_random_corpus_conserves_species_and_tokens(self):
        # oracle: recount everything in a second, independent pass
        rng = np.random.default_rng(2024)
        counts = {f"w{i}": int(c) for i, c in
                  enumerate(rng.integers(1, 11, size=1000))}
        h = build_histogram(counts)
        assert math.fsum(h.entries.values()) == 1000
        expected_tokens = 0
        for c in counts.values():
            expected_tokens += c
        assert h.total_population() == expected_tokens

    def test_rejects_non_positive_counts(self):
        with pytest.raises(ValueError):
            build_histogram({"a": 0})
        with pytest.raises(ValueError):
            build_histogram({"a": 1.5})


class TestRankOf:
    def test_tail_sums(self):
        h = FrequencyHistogram({1: 6.0, 2: 3.0, 3: 2.0})
        assert h.rank_of(1) == 11.0
        assert h.rank_of(2) == 5.0
        assert h.rank_of(3) == 2.0

    def test_at_and_beyond_the_top(self):
        h = FrequencyHistogram({1: 6.0, 2: 3.0, 3: 2.0})
        assert h.rank_of(h.max_count) == h.n(h.max_count)
        assert h.rank_of(h.max_count + 1) == 0.0

    def test_duality_exact_on_integer_tables(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            support = rng.choice(np.arange(1, 40), size=8, replace=False)
            h = FrequencyHistogram(
                {int(x): float(rng.integers(1, 1000)) for x in support})
            for x in range(1, h.max_count + 1):
                assert h.n(x) == h.rank_of(x) - h.rank_of(x + 1)

    def test_duality_on_real_tables(self):
        # real-valued cells make the identity exact only up to roundoff
        h = ideal_histogram(1.7, 5.3, 40)
        for x in range(1, 40):
            lhs = h.n(x)
            rhs = h.rank_of(x) - h.rank_of(x + 1)
            assert rhs == pytest.approx(lhs, rel=1e-12)


class TestTotalPopulation:
    def test_hand_sum(self):
        assert FrequencyHistogram({1: 6.0, 2: 3.0, 3: 2.0}).total_population() == 18.0

    def test_ideal_turing_population_is_top_count_times_n1(self):
        h = ideal_histogram(1.0, 6.0, 3)
        assert h.total_population() == 3 * 6.0

    def test_empty(self):
        assert FrequencyHistogram({}).total_population() == 0.0


class TestReestimate:
    def test_ideal_turing_is_fixed_point(self):
        h = FrequencyHistogram({1: 6.0, 2: 3.0, 3: 2.0})
        assert h.reestimate(1, 1.0) == 1.0
        assert h.reestimate(2, 1.0) == 2.0

    def test_ideal_zipf_by_hand(self):
        h = FrequencyHistogram({1: 6.0, 2: 2.0, 3: 1.0})
        assert h.reestimate(1, 2.0) == 3 * 2.0 / 6.0
        assert h.reestimate(2, 2.0) == 4 * 1.0 / 2.0

    def test_absent_next_cell_reads_zero(self):
        h = FrequencyHistogram({1: 6.0, 2: 3.0, 3: 2.0})
        assert h.reestimate(3, 1.0) == 0.0

    def test_zero_or_absent_cell_is_an_error(self):
        h = FrequencyHistogram({1: 6.0, 3: 2.0})
        with pytest.raises(UndefinedReestimateError):
            h.reestimate(2, 1.0)
        with pytest.raises(UndefinedReestimateError):
            h.reestimate(9, 1.0)

    def test_theta_one_matches_direct_turing_evaluation(self):
        # definitional identity, checked against an independent expression
        rng = np.random.default_rng(3)
        for _ in range(10):
            entries = {x: float(rng.integers(1, 500)) for x in range(1, 12)}
            h = FrequencyHistogram(entries)
            for x in range(1, 11):
                direct = (x + 1) * entries.get(x + 1, 0.0) / entries[x]
                assert h.reestimate(x, 1.0) == pytest.approx(direct, rel=1e-15)

    def test_any_finite_theta_accepted(self):
        h = FrequencyHistogram({1: 4.0, 2: 1.0})
        assert h.reestimate(1, -0.5) == 0.5 * 1.0 / 4.0
        with pytest.raises(ValueError):
            h.reestimate(1, float("inf"))


class TestIdealHistogram:
    def test_turing_member_is_n1_over_x(self):
        h = ideal_histogram(1.0, 6.0, 3)
        assert h.entries == {1: 6.0, 2: 3.0, 3: 2.0}

    def test_zipf_member_closed_form(self):
        h = ideal_histogram(2.0, 6.0, 3)
        assert h.entries == {1: 6.0, 2: 2.0, 3: 1.0}
        # closed form 2*N_1/((x+2)(x+1)) at every cell
        for x in range(0, 3):
            assert h.n(x + 1) == pytest.approx(2 * 6.0 / ((x + 2) * (x + 1)), rel=1e-12)

    def test_theta_three_by_hand(self):
        h = ideal_histogram(3.0, 4.0, 3)
        assert h.n(1) == 4.0
        assert h.n(2) == pytest.approx(1.0, rel=1e-15)
        assert h.n(3) == pytest.approx(0.4, rel=1e-15)

    @pytest.mark.parametrize("theta", [0.5, 1.0, 1.3, 2.0, 3.7])
    def test_fixed_point_property(self, theta):
        h = ideal_histogram(theta, 11.0, 60)
        for x in range(1, 60):
            assert h.reestimate(x, theta) == pytest.approx(x, rel=1e-12)

    @pytest.mark.parametrize("theta", [0.5, 1.0, 1.5, 2.0, 2.5])
    def test_matches_factorial_closed_form(self, theta):
        # oracle: exact rational product n1 * prod k/(k+theta), theta taken
        # at its binary value so both sides describe the same recurrence
        n1 = 7.0
        h = ideal_histogram(theta, n1, 30)
        theta_frac = Fraction(theta)
        product = Fraction(1)
        for x in range(1, 30):
            product *= Fraction(x) / (Fraction(x) + theta_frac)
            expected = float(Fraction(n1) * product)
            assert h.n(x + 1) == pytest.approx(expected, rel=1e-12)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            ideal_histogram(0.0, 1.0, 5)
        with pytest.raises(ValueError):
            ideal_histogram(-2.0, 1.0, 5)
        with pytest.raises(ValueError):
            ideal_histogram(1.0, 0.0, 5)
        with pytest.raises(ValueError):
            ideal_histogram(1.0, 1.0, 0)


class TestValidation:
    def test_rejects_non_integer_keys(self):
        with pytest.raises(ValueError):
            FrequencyHistogram({1.5: 2.0})

    def test_rejects_negative_cells(self):
        with pytest.raises(ValueError):
            FrequencyHistogram({1: -1.0})

    def test_rejects_counts_below_one(self):
        with pytest.raises(ValueError):
            FrequencyHistogram({0: 3.0})

    def test_zero_cells_allowed_but_not_at_the_top(self):
        h = FrequencyHistogram({1: 2.0, 5: 0.0})
        assert h.max_count == 1
        assert h.support == (1,)
