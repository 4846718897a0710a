"""
Reproducibility harness: seeded property trials over random digraphs and
tournaments, and the CSP-A to CSP-B adjustment suite built from search
witnesses.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

from .config import DEFAULT_EPSILON, GAMMA_LOWER_BOUND
from .csp import (
    AssignmentX, CSPParams, adjust, check_csp_a, check_csp_b, eval_F, extract_assignment,
    extraction_identities, gradient_F,
)
from .digraph import (
    OrientedDigraph, Selection, best_seymour_ratio, partition_counts, weighted_minimizer,
)
from .generators import SplitMix64, random_oriented, random_tournament
from .search import SearchConfig, maximize_F

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = [
    'trial', 'family', 'n', 'p', 'seed', 'w', 'arcs', 'min_out_degree', 'u', 'v',
    'identities_ok', 'x31_zero', 'x21_bound', 'f_applicable', 'f_positive',
    'best_ratio', 'gamma_seymour', 'one_seymour',
]


def _check_instance(D: OrientedDigraph, weights: Sequence, trial: int, family: str,
                    p, seed: int) -> List[Dict]:
    vertex, ratio = best_seymour_ratio(D)
    base = {
        'trial': trial, 'family': family, 'n': D.n, 'p': p, 'seed': seed,
        'arcs': D.arc_count, 'min_out_degree': D.min_out_degree(),
        'best_ratio': float(ratio),
        'gamma_seymour': bool(ratio >= GAMMA_LOWER_BOUND),
        'one_seymour': bool(ratio >= 1) if family == 'tournament' else None,
    }
    rows = []
    for w in weights:
        row = dict(base, w=str(w))
        if D.min_out_degree() >= 1:
            selection, x = extract_assignment(D, w)
            identities = extraction_identities(D, selection, x)
            row.update({
                'u': selection.u, 'v': selection.v,
                'identities_ok': all(identities.values()),
                'x31_zero': partition_counts(D, selection.u, selection.v).x31 == 0,
                'x21_bound': bool(x.x21 >= x.x12 + x.x13 + x.x14),
                'f_applicable': bool(x.x11 > 0),
                'f_positive': bool(eval_F(x, w) > 0) if x.x11 > 0 else None,
            })
        else:
            # no extraction; still check the partition against some arc
            tails = [u for u in range(D.n) if D.out_degree(u) > 0]
            if tails:
                u = min(tails, key=lambda t: (D.out_degree(t), t))
                v = weighted_minimizer(D, u, w)
                counts = partition_counts(D, u, v).as_dict()
                x31 = counts.pop('x31')
                x = AssignmentX(**counts)
                identities = extraction_identities(D, Selection(u, v, w), x)
                row.update({'u': u, 'v': v, 'identities_ok': all(identities.values()),
                            'x31_zero': x31 == 0})
            row.update({'x21_bound': None, 'f_applicable': False, 'f_positive': None})
        rows.append(row)
    return rows


def run_property_trials(trials: int, max_n: int, probabilities: Sequence, seed: int,
                        weights: Sequence, tournaments: int = 0,
                        max_tournament_n: int = 30) -> pd.DataFrame:
    """One row per (instance, w). Vertex counts and instance seeds derive from `seed`."""
    if max_n < 2 or (tournaments and max_tournament_n < 3):
        raise ValueError("max_n must be >= 2 and max_tournament_n >= 3")
    rng = SplitMix64(seed)
    rows: List[Dict] = []
    for trial in range(trials):
        n = 2 + rng.next_u64() % (max_n - 1)
        p = probabilities[trial % len(probabilities)]
        instance_seed = rng.next_u64()
        D = random_oriented(n, p, instance_seed)
        rows.extend(_check_instance(D, weights, trial, 'random_oriented', p, instance_seed))
    for trial in range(trials, trials + tournaments):
        n = 3 + rng.next_u64() % (max_tournament_n - 2)
        instance_seed = rng.next_u64()
        D = random_tournament(n, instance_seed)
        rows.extend(_check_instance(D, weights, trial, 'tournament', 1, instance_seed))
    logger.info("ran %d property rows", len(rows))
    return pd.DataFrame.from_records(rows, columns=TRIAL_COLUMNS)


def property_failures(frame: pd.DataFrame) -> Dict[str, int]:
    """Number of rows violating each property (missing values count as not applicable)."""
    def failures(column):
        values = frame[column].dropna()
        return int((values == False).sum())  # noqa: E712

    return {
        'identities_ok': failures('identities_ok'),
        'x31_zero': failures('x31_zero'),
        'x21_bound': failures('x21_bound'),
        'f_positive': failures('f_positive'),
        'gamma_seymour': failures('gamma_seymour'),
        'one_seymour': failures('one_seymour'),
    }


def perturbed_points(witness: AssignmentX, mu, w, count: int,
                     epsilon=DEFAULT_EPSILON) -> List[AssignmentX]:
    """Scaled copies t*witness with x11 raised by epsilon.

    The scales start at the smallest power of two for which F stays positive
    after the bump, so the strict inequalities of CSP-A can all hold.
    """
    f0 = eval_F(witness, w)
    g = gradient_F(witness, w)['x11']
    scale = Fraction(1)

    def bumped_F(t):
        return t * t * f0 + t * epsilon * g - epsilon * epsilon * w / 2

    for _ in range(200):
        if bumped_F(scale) > 0:
            break
        scale *= 2
    points = []
    for k in range(1, count + 1):
        t = scale * k
        values = {name: t * value for name, value in witness.as_dict().items()}
        values['x11'] += epsilon
        points.append(AssignmentX(**values))
    return points


def run_adjust_suite(mus: Iterable, w, per_mu: int, epsilon=DEFAULT_EPSILON,
                     config: Optional[SearchConfig] = None) -> pd.DataFrame:
    """Build A-feasible points from exact search witnesses and push each through adjust."""
    config = config or SearchConfig(mode='exact')
    rows = []
    for mu in mus:
        result = maximize_F(mu, w, config)
        if result.witness is None:
            logger.warning("no witness at mu=%s, w=%s (%s); skipping", mu, w, result.status)
            rows.append({'mu': str(mu), 'index': None, 'status': 'skipped_no_witness'})
            continue
        params = CSPParams(mu, w)
        for index, x in enumerate(perturbed_points(result.witness, mu, w, per_mu, epsilon)):
            row = {'mu': str(mu), 'index': index}
            if not check_csp_a(x, params).satisfied:
                logger.warning("perturbed point %d at mu=%s is not A-feasible; skipping", index, mu)
                row['status'] = 'skipped_not_a_feasible'
                rows.append(row)
                continue
            adjusted, trace = adjust(x, params)
            monotone = all(step.f_after >= step.f_before for step in trace)
            row.update({
                'status': 'ok',
                'b_feasible': check_csp_b(adjusted, params).satisfied,
                'f_monotone': monotone,
                'f_before': float(eval_F(x, w)),
                'f_after': float(eval_F(adjusted, w)),
            })
            rows.append(row)
    return pd.DataFrame.from_records(
        rows, columns=['mu', 'index', 'status', 'b_feasible', 'f_monotone', 'f_before', 'f_after'])
