"""
Tests for the seeded property trials and the adjustment suite helpers.
"""

from dataclasses import replace
from fractions import Fraction
from unittest.mock import patch

import pytest

from seymour_verifier.config import DEFAULT_SEED
from seymour_verifier.csp import adjust, check_csp_a, eval_F
from seymour_verifier.digraph import OrientedDigraph, partition_counts
from seymour_verifier.harness import (
    TRIAL_COLUMNS, _check_instance, perturbed_points, property_failures, run_adjust_suite,
    run_property_trials,
)

WEIGHTS = [Fraction(1), Fraction(56, 45)]
PROBABILITIES = [Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)]


@pytest.fixture(scope="module")
def trials():
    return run_property_trials(20, 10, [Fraction(3, 10), Fraction(7, 10)], seed=5,
                               weights=WEIGHTS, tournaments=3, max_tournament_n=12)


class TestPropertyTrials:
    """Random instances checked against the extraction identities and Seymour bounds."""

    def test_shape(self, trials):
        assert list(trials.columns) == TRIAL_COLUMNS
        assert len(trials) == (20 + 3) * len(WEIGHTS)
        assert set(trials['family']) == {'random_oriented', 'tournament'}

    def test_vertex_counts_in_range(self, trials):
        random_rows = trials[trials['family'] == 'random_oriented']
        assert random_rows['n'].between(2, 10).all()
        assert trials[trials['family'] == 'tournament']['n'].between(3, 12).all()

    def test_no_failures(self, trials):
        failures = property_failures(trials)
        assert failures == dict.fromkeys(failures, 0)
        print(f"✓ {len(trials)} property rows, no failures")

    def test_same_seed_same_frame(self, trials):
        again = run_property_trials(20, 10, [Fraction(3, 10), Fraction(7, 10)], seed=5,
                                    weights=WEIGHTS, tournaments=3, max_tournament_n=12)
        assert again.equals(trials)

    def test_one_seymour_only_for_tournaments(self, trials):
        assert trials[trials['family'] == 'random_oriented']['one_seymour'].isna().all()
        assert trials[trials['family'] == 'tournament']['one_seymour'].all()

    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            run_property_trials(1, 1, [Fraction(1, 2)], seed=0, weights=WEIGHTS)


class TestFullScaleTrials:
    """200 random digraphs up to n = 50 and 50 tournaments up to n = 30."""

    @pytest.fixture(scope="class")
    def full(self):
        return run_property_trials(200, 50, PROBABILITIES, seed=DEFAULT_SEED, weights=WEIGHTS,
                                   tournaments=50, max_tournament_n=30)

    def test_shape(self, full):
        assert len(full) == (200 + 50) * len(WEIGHTS)
        assert full[full['family'] == 'random_oriented']['n'].between(2, 50).all()
        assert full[full['family'] == 'tournament']['n'].between(3, 30).all()
        assert set(full['p'].dropna()) >= set(PROBABILITIES)

    def test_no_failures(self, full):
        failures = property_failures(full)
        assert failures == dict.fromkeys(failures, 0)
        assert full['f_applicable'].sum() > 0
        print(f"✓ {len(full)} full-scale rows, {int(full['f_applicable'].sum())} with F applicable")


class TestSinkRows:
    """Instances with a zero out-degree vertex still check the partition."""

    @pytest.fixture
    def path(self):
        return OrientedDigraph.from_arcs(3, [(0, 1), (1, 2)])

    def test_x31_measured(self, path):
        rows = _check_instance(path, WEIGHTS, 0, 'random_oriented', Fraction(1, 2), 0)
        assert [r['x31_zero'] for r in rows] == [True, True]
        assert all(r['identities_ok'] for r in rows)
        assert not any(r['f_applicable'] for r in rows)

    def test_nonzero_x31_is_reported(self, path):
        def with_x31(D, u, v):
            return replace(partition_counts(D, u, v), x31=1)

        with patch('seymour_verifier.harness.partition_counts', side_effect=with_x31):
            rows = _check_instance(path, WEIGHTS, 0, 'random_oriented', Fraction(1, 2), 0)
        assert [r['x31_zero'] for r in rows] == [False, False]


class TestPerturbedPoints:
    """A-feasible points built around a B-feasible witness."""

    def test_scaled_and_bumped(self, hand_point, hand_params):
        witness, _ = adjust(hand_point, hand_params)
        eps = Fraction(1, 1000)
        points = perturbed_points(witness, hand_params.mu, hand_params.w, 3, eps)
        assert len(points) == 3
        assert points[0].x11 == witness.x11 + eps
        assert points[1].x21 == 2 * witness.x21
        for x in points:
            assert eval_F(x, hand_params.w) > 0
            assert check_csp_a(x, hand_params).satisfied

    def test_suite_skips_missing_witness(self):
        frame = run_adjust_suite([Fraction(0)], Fraction(56, 45), per_mu=2)
        assert frame['status'].tolist() == ['skipped_no_witness']

    def test_suite_row_per_point(self):
        frame = run_adjust_suite([Fraction(73, 100)], Fraction(56, 45), per_mu=2)
        assert len(frame) == 2
        assert (frame['status'] == 'ok').all()
        assert frame['b_feasible'].all() and frame['f_monotone'].all()
        assert (frame['f_after'] >= frame['f_before']).all()
