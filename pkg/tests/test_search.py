"""
Tests for the numeric search over the CSP-B region: exact face enumeration,
the float heuristic, the mu* bisection and the w scan.
"""

from fractions import Fraction

import pytest

from seymour_verifier.certificate import build_constants
from seymour_verifier.config import DEFAULT_W_GRID
from seymour_verifier.csp import AssignmentX, eval_F
from seymour_verifier.errors import NoSignChangeError, PreconditionError
from seymour_verifier.search import (
    EMPTY_REGION, EXACT, FEASIBLE_POSITIVE, FLOAT, LIVE, NONPOSITIVE_MAX, POSITIVE_UNWITNESSED,
    SearchConfig, _solve_affine, certify_witness, enumerate_candidates, feasible_region, live_form,
    maximize_F, scan_w, threshold, to_assignment,
)

W = Fraction(56, 45)
MU_ABOVE = Fraction(73, 100)
QUICK_FLOAT = SearchConfig(mode='float', starts=4, iterations=100, projection_sweeps=50, seed=11)


@pytest.fixture(scope="module")
def exact_above():
    return maximize_F(MU_ABOVE, W, SearchConfig(mode='exact'))


class TestFeasibleRegion:
    """The normalized closed region the search runs over."""

    def test_row_counts(self):
        region = feasible_region(Fraction(7, 10))
        assert len(region.equalities) == 4
        assert len(region.inequalities) == 8
        assert len(region.inequality_names) == 8

    def test_negative_mu(self):
        with pytest.raises(PreconditionError):
            feasible_region(-1)

    def test_contains(self):
        region = feasible_region(0)
        assert region.contains([1, 0, 0, 0, 0, 0, 0])
        assert not region.contains([0, 0, 0, 0, 0, 0, 0])

    def test_to_assignment_zeroes_dead_variables(self):
        x = to_assignment([1, 2, 3, 4, 5, 6, 7])
        assert x.x14 == 0 and x.x23 == 0 and x.x24 == 0 and x.x34 == 0
        assert [getattr(x, name) for name in LIVE] == [1, 2, 3, 4, 5, 6, 7]

    def test_live_form_matches_F(self):
        form = live_form(W)
        point = [Fraction(1, 2), Fraction(-1, 3), 2, Fraction(5, 7), 1, Fraction(1, 9), 3]
        assert form(point) == eval_F(to_assignment(point), W)

    def test_live_form_hessian_is_symmetric(self):
        h = live_form(W).hessian()
        assert all(h[i][j] == h[j][i] for i in range(len(LIVE)) for j in range(len(LIVE)))
        # F carries -w/2 x11^2
        assert h[0][0] == -W

    def test_solve_affine(self):
        x0, basis = _solve_affine([((1, 1), 2), ((1, -1), 0)], 2)
        assert x0 == [1, 1] and basis == []
        assert _solve_affine([((1, 1), 2), ((1, 1), 3)], 2) is None
        x0, basis = _solve_affine([((1, 1, 0), 1)], 3)
        assert len(basis) == 2


class TestExactSearch:
    """Face enumeration in exact arithmetic."""

    def test_mu_zero_collapses_to_a_point(self):
        result = maximize_F(0, W)
        assert result.status == NONPOSITIVE_MAX
        assert result.method == EXACT
        assert result.max_value == Fraction(-28, 45)
        assert result.argmax == AssignmentX(x11=1)
        assert result.witness is None

    def test_candidates_over_mu_zero_region(self):
        region = feasible_region(0)
        points = enumerate_candidates(region, live_form(W).hessian())
        assert points and all(p == [1, 0, 0, 0, 0, 0, 0] for p in points)

    def test_positive_above_gamma(self, exact_above):
        assert exact_above.status == FEASIBLE_POSITIVE
        assert exact_above.max_value > 0
        assert exact_above.witness.x11 > 0
        assert certify_witness(exact_above.witness, MU_ABOVE, W)
        assert not exact_above.heuristic

    def test_argmax_is_in_the_closed_region(self, exact_above):
        region = feasible_region(MU_ABOVE)
        assert region.contains([getattr(exact_above.argmax, name) for name in LIVE])
        assert eval_F(exact_above.argmax, W) == exact_above.max_value

    def test_zero_is_never_a_witness(self):
        assert not certify_witness(AssignmentX(), MU_ABOVE, W)

    def test_deterministic(self, exact_above):
        again = maximize_F(MU_ABOVE, W)
        assert again.max_value == exact_above.max_value
        assert again.argmax == exact_above.argmax

    @pytest.mark.slow
    def test_nonpositive_at_gamma(self):
        consts = build_constants()
        result = maximize_F(consts.gamma, consts.w)
        assert result.status in (NONPOSITIVE_MAX, EMPTY_REGION)
        if result.max_value is not None:
            assert not result.max_value > 0


class TestFloatSearch:
    """The multi-start heuristic is a lower bound and never certifies."""

    def test_float_is_a_lower_bound(self, exact_above):
        result = maximize_F(MU_ABOVE, W, QUICK_FLOAT)
        assert result.method == FLOAT
        assert result.heuristic
        assert result.witness is None
        assert result.max_value <= float(exact_above.max_value) + 1e-6

    def test_positive_float_max_is_unwitnessed(self):
        result = maximize_F(MU_ABOVE, W, QUICK_FLOAT)
        assert result.max_value > QUICK_FLOAT.float_tolerance
        assert result.status == POSITIVE_UNWITNESSED
        assert result.status != FEASIBLE_POSITIVE

    @pytest.mark.parametrize("config", [SearchConfig(mode='exact'), QUICK_FLOAT], ids=['exact', 'float'])
    @pytest.mark.parametrize("mu", [Fraction(0), Fraction(7, 10), MU_ABOVE])
    def test_feasible_positive_always_certifies(self, mu, config):
        result = maximize_F(mu, W, config)
        if result.status == FEASIBLE_POSITIVE:
            assert result.witness is not None
            assert certify_witness(result.witness, mu, W)

    def test_unknown_mode(self):
        with pytest.raises(PreconditionError):
            SearchConfig(mode='annealing')

    @pytest.mark.slow
    def test_float_just_below_gamma(self):
        result = maximize_F(Fraction(715538, 10 ** 6), Fraction(12447, 10000), QUICK_FLOAT)
        assert result.max_value <= 1e-6


class TestThreshold:
    """Bisection on mu and the scan over w."""

    def test_wide_tolerance_returns_initial_bracket(self):
        result = threshold(W, Fraction(13, 20), Fraction(4, 5), tol=1)
        assert result.bracket == (Fraction(13, 20), Fraction(4, 5))
        assert result.mu_star == Fraction(29, 40)
        assert result.evaluations == 2

    def test_no_sign_change(self):
        with pytest.raises(NoSignChangeError):
            threshold(W, MU_ABOVE, Fraction(4, 5))

    def test_bracket_order(self):
        with pytest.raises(PreconditionError):
            threshold(W, Fraction(4, 5), Fraction(13, 20))

    def test_empty_grid(self):
        with pytest.raises(PreconditionError):
            scan_w([])

    @pytest.mark.slow
    def test_exact_threshold_near_gamma(self):
        result = threshold(W)
        lo, hi = result.bracket
        assert hi - lo <= Fraction(1, 1000)
        assert abs(float(result.mu_star) - 0.715538) < 2e-3
        assert not maximize_F(lo, W).max_value > 0
        assert maximize_F(hi, W).max_value > 0

    @pytest.mark.slow
    def test_scan_finds_weight_near_optimum(self):
        scan = scan_w([Fraction(6, 5), W, Fraction(13, 10)], tol=Fraction(1, 200))
        assert list(scan.table.columns) == ['w', 'w_float', 'mu_star', 'mu_star_float', 'lo', 'hi']
        assert len(scan.table) == 3
        assert abs(float(scan.best_w) - 1.2447) < 0.05

    @pytest.mark.slow
    def test_default_grid_peaks_at_five_quarters(self):
        scan = scan_w(DEFAULT_W_GRID)
        assert len(scan.table) == len(DEFAULT_W_GRID)
        assert scan.best_w == Fraction(5, 4)
        assert abs(float(scan.best_mu) - 0.7155) < 1e-3
        peak = scan.table.loc[scan.table['mu_star_float'].idxmax()]
        assert peak['w'] == '5/4'
