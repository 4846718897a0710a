"""
Maximization of F over the closed CSP-B region and the mu-threshold search.

With x14 = x24 = x34 = x23 = 0 the live variables are x11, x12, x13, x21,
x22, x32, x33. All constraints and F are homogeneous, so the region is
normalized by x11 + x12 + x13 = 1, which makes it a bounded polytope.

Exact mode enumerates active sets of at most dim(affine hull) inequality
rows; on each resulting affine subspace the stationary point of F (when the
reduced Hessian is nonsingular) is a candidate, and the largest feasible
candidate is the maximum. A face whose reduced Hessian is singular has its
maximum on its boundary, which a larger active set already covers.

Float mode runs projected gradient ascent from seeded random starts with
numpy; it only ever gives a lower bound on the maximum.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .config import (
    DEFAULT_BRACKET, DEFAULT_ITERATIONS, DEFAULT_PROJECTION_SWEEPS, DEFAULT_SEED,
    DEFAULT_STARTS, DEFAULT_TOL, FLOAT_TOLERANCE,
)
from .csp import AssignmentX, CSPParams, check_csp_b, eval_F
from .errors import NoSignChangeError, PreconditionError
from .forms import LinearForm

logger = logging.getLogger(__name__)

LIVE = ('x11', 'x12', 'x13', 'x21', 'x22', 'x32', 'x33')

FEASIBLE_POSITIVE = 'feasible_positive'
NONPOSITIVE_MAX = 'nonpositive_max'
EMPTY_REGION = 'empty_region'
POSITIVE_UNWITNESSED = 'positive_unwitnessed'

EXACT = 'exact_face_enumeration'
FLOAT = 'float_multistart'

Row = Tuple[Tuple[object, ...], object]


@dataclass(frozen=True)
class SearchConfig:
    mode: str = 'exact'
    starts: int = DEFAULT_STARTS
    seed: int = DEFAULT_SEED
    iterations: int = DEFAULT_ITERATIONS
    projection_sweeps: int = DEFAULT_PROJECTION_SWEEPS
    float_tolerance: float = FLOAT_TOLERANCE

    def __post_init__(self):
        if self.mode not in ('exact', 'float'):
            raise PreconditionError(f"unknown search mode {self.mode!r}")
        if self.starts < 1 or self.iterations < 0:
            raise PreconditionError("starts must be positive and iterations nonnegative")


@dataclass(frozen=True, eq=False)
class Polytope:
    """Rows are (coefficients over LIVE, constant): c.x + const = 0 or >= 0."""

    equalities: Tuple[Row, ...]
    inequalities: Tuple[Row, ...]
    equality_names: Tuple[str, ...] = ()
    inequality_names: Tuple[str, ...] = ()

    def contains(self, point: Sequence) -> bool:
        return (all(_row_value(r, point) == 0 for r in self.equalities)
                and all(_row_value(r, point) >= 0 for r in self.inequalities))


@dataclass(frozen=True, eq=False)
class SearchResult:
    status: str
    max_value: object
    argmax: Optional[AssignmentX]
    method: str
    witness: Optional[AssignmentX] = None
    heuristic: bool = False
    candidates: int = 0


@dataclass(frozen=True, eq=False)
class ThresholdResult:
    mu_star: Fraction
    bracket: Tuple[Fraction, Fraction]
    tol: Fraction
    w: object
    evaluations: int = 0


@dataclass(frozen=True, eq=False)
class ScanResult:
    best_w: object
    best_mu: Fraction
    table: pd.DataFrame = field(repr=False)


def _row_value(row: Row, point: Sequence):
    coeffs, const = row
    total = const
    for c, v in zip(coeffs, point):
        if c != 0:
            total = total + c * v
    return total


def feasible_region(mu, w=None) -> Polytope:
    """The closed, normalized CSP-B region at (mu, w); w does not enter the rows."""
    if mu < 0:
        raise PreconditionError("mu must be nonnegative")
    mu2 = mu * mu
    equalities = (
        ((mu, mu, mu, -1, -1, 0, 0), 0),
        ((mu2, mu2, mu2, 0, 0, -1, -1), 0),
        ((mu, -1, 0, mu, -1, -1, 0), 0),
        ((1, 1, 1, 0, 0, 0, 0), -1),
    )
    inequalities = (
        ((0, 0, 1, 0, 0, 0, 0), 0),
        ((0, 0, 0, 0, 1, 0, 0), 0),
        ((0, 0, 0, 0, 0, 1, 0), 0),
        ((0, 0, 0, 0, 0, 0, 1), 0),
        ((0, 1, 1, 0, 0, 0, 0), 0),
        ((0, 1, 0, 0, 1, 0, 0), 0),
        ((1, 0, 0, 0, 0, 0, 0), 0),
        ((0, -1, -1, 1, 0, 0, 0), 0),
    )
    return Polytope(
        equalities, inequalities,
        ('(1=)', '(2=)', '(3=)', 'x11+x12+x13 = 1'),
        ('x13 >= 0', 'x22 >= 0', 'x32 >= 0', 'x33 >= 0', 'x12+x13 >= 0',
         'x12+x22 >= 0', 'x11 >= 0', 'x21 >= x12+x13'),
    )


def to_assignment(point: Sequence) -> AssignmentX:
    zero = point[0] * 0
    values = dict(zip(LIVE, point))
    return AssignmentX(x14=zero, x23=zero, x24=zero, x34=zero, **values)


def live_form(w):
    """F restricted to the live variables, as a QuadraticForm in 7 variables."""
    return eval_F(to_assignment(LinearForm.basis(len(LIVE))), w)


def _solve_affine(rows: Sequence[Tuple[Sequence, object]], n: int):
    """Solve rows (coeffs, rhs) meaning coeffs.x = rhs.

    Returns None if inconsistent, else (x0, basis) with solutions x0 + sum t_k basis[k].
    """
    m = [list(coeffs) + [rhs] for coeffs, rhs in rows]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    if any(row[n] != 0 for row in m[r:]):
        return None
    zero = Fraction(0)
    x0 = [zero] * n
    for i, c in enumerate(pivots):
        x0[c] = m[i][n]
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = [zero] * n
        vec[free] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -m[i][free]
        basis.append(vec)
    return x0, basis


def _matvec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec) if a != 0), 0) for row in matrix]


def _dot(a, b):
    return sum((u * v for u, v in zip(a, b)), 0)


def _stationary_point(hessian, rows, n):
    """Unique stationary point of F on the affine subspace cut out by rows, if any."""
    solved = _solve_affine(rows, n)
    if solved is None:
        return None
    x0, basis = solved
    k = len(basis)
    if k == 0:
        return x0
    h_basis = [_matvec(hessian, b) for b in basis]
    h_x0 = _matvec(hessian, x0)
    reduced = [
        ([_dot(basis[i], h_basis[j]) for j in range(k)], -_dot(basis[i], h_x0))
        for i in range(k)
    ]
    sol = _solve_affine(reduced, k)
    if sol is None or sol[1]:
        return None
    t = sol[0]
    return [x0[c] + sum((t[i] * basis[i][c] for i in range(k)), 0) for c in range(n)]


def _lex_less(a: Sequence, b: Sequence) -> bool:
    for u, v in zip(a, b):
        if u == v:
            continue
        return u < v
    return False


def _affine_dimension(polytope: Polytope, n: int) -> int:
    solved = _solve_affine([(c, -k) for c, k in polytope.equalities], n)
    return -1 if solved is None else len(solved[1])


def enumerate_candidates(polytope: Polytope, hessian) -> List[List[object]]:
    """Feasible stationary points over all faces of the polytope."""
    n = len(LIVE)
    dim = _affine_dimension(polytope, n)
    if dim < 0:
        return []
    eq_rows = [(c, -k) for c, k in polytope.equalities]
    candidates = []
    for size in range(dim + 1):
        for active in itertools.combinations(polytope.inequalities, size):
            rows = eq_rows + [(c, -k) for c, k in active]
            point = _stationary_point(hessian, rows, n)
            if point is not None and polytope.contains(point):
                candidates.append(point)
    return candidates


def _interior_witness(argmax, candidates, mu, w) -> Optional[AssignmentX]:
    if certify_witness(to_assignment(argmax), mu, w):
        return to_assignment(argmax)
    interior = [c for c in candidates if c[0] > 0]
    if not interior:
        return None
    centre = [sum((c[i] for c in interior), 0) / len(interior) for i in range(len(LIVE))]
    eps = Fraction(1, 2)
    for _ in range(64):
        point = [(1 - eps) * a + eps * b for a, b in zip(argmax, centre)]
        x = to_assignment(point)
        if certify_witness(x, mu, w):
            return x
        eps /= 2
    return None


def _maximize_exact(mu, w) -> SearchResult:
    polytope = feasible_region(mu, w)
    form = live_form(w)
    candidates = enumerate_candidates(polytope, form.hessian())
    if not candidates:
        return SearchResult(EMPTY_REGION, None, None, EXACT)
    best, best_value = None, None
    for point in candidates:
        value = form(point)
        if (best is None or value > best_value
                or (value == best_value and _lex_less(point, best))):
            best, best_value = point, value
    argmax = to_assignment(best)
    if not best_value > 0:
        return SearchResult(NONPOSITIVE_MAX, best_value, argmax, EXACT, candidates=len(candidates))
    witness = _interior_witness(best, candidates, mu, w)
    status = FEASIBLE_POSITIVE if witness is not None else POSITIVE_UNWITNESSED
    if witness is None:
        logger.warning("max F > 0 at mu=%s but no witness with x11 > 0 was found", mu)
    return SearchResult(status, best_value, argmax, EXACT, witness, candidates=len(candidates))


def _as_float_rows(rows) -> Tuple[np.ndarray, np.ndarray]:
    a = np.array([[float(c) for c in coeffs] for coeffs, _ in rows])
    b = np.array([float(k) for _, k in rows])
    return a, b


def _dykstra(z: np.ndarray, a: np.ndarray, c: np.ndarray, sweeps: int) -> np.ndarray:
    """Project z onto {t : a t >= c} by Dykstra's alternating projections."""
    x = z.copy()
    increments = np.zeros((a.shape[0], z.shape[0]))
    norms = np.einsum('ij,ij->i', a, a)
    for _ in range(sweeps):
        for i in range(a.shape[0]):
            if norms[i] < 1e-18:
                continue
            y = x + increments[i]
            violation = c[i] - a[i] @ y
            projected = y + (violation / norms[i]) * a[i] if violation > 0 else y
            increments[i] = y - projected
            x = projected
    return x


def _maximize_float(mu, w, config: SearchConfig) -> SearchResult:
    polytope = feasible_region(mu, w)
    hessian = np.array([[float(v) for v in row] for row in live_form(w).hessian()])
    e, e_const = _as_float_rows(polytope.equalities)
    g, g_const = _as_float_rows(polytope.inequalities)
    x0 = np.linalg.lstsq(e, -e_const, rcond=None)[0]
    _, s, vt = np.linalg.svd(e)
    rank = int(np.sum(s > 1e-12 * s[0]))
    basis = vt[rank:].T
    a = g @ basis
    c = -(g @ x0 + g_const)
    reduced = basis.T @ hessian @ basis
    lipschitz = max(float(np.max(np.abs(np.linalg.eigvalsh(reduced)))), 1.0)

    rng = np.random.default_rng(config.seed)
    best_value, best_x = None, None
    for _ in range(config.starts):
        t = _dykstra(rng.normal(size=basis.shape[1]), a, c, config.projection_sweeps)
        for _ in range(config.iterations):
            gradient = basis.T @ (hessian @ (x0 + basis @ t))
            t = _dykstra(t + gradient / lipschitz, a, c, config.projection_sweeps)
        x = x0 + basis @ t
        if np.min(g @ x + g_const) < -1e-7:
            continue
        value = 0.5 * float(x @ hessian @ x)
        key = tuple(np.round(x, 12))
        if (best_value is None or value > best_value + config.float_tolerance
                or (abs(value - best_value) <= config.float_tolerance and key < best_x[0])):
            best_value, best_x = value, (key, x)
    if best_value is None:
        return SearchResult(EMPTY_REGION, None, None, FLOAT, heuristic=True)
    # float argmaxes are never certified
    status = POSITIVE_UNWITNESSED if best_value > config.float_tolerance else NONPOSITIVE_MAX
    argmax = to_assignment([float(v) for v in best_x[1]])
    return SearchResult(status, best_value, argmax, FLOAT, heuristic=True, candidates=config.starts)


def maximize_F(mu, w, config: Optional[SearchConfig] = None) -> SearchResult:
    """Maximum of F over the normalized closed CSP-B region."""
    config = config or SearchConfig()
    if config.mode == 'exact':
        result = _maximize_exact(mu, w)
    else:
        result = _maximize_float(mu, w, config)
    logger.debug("max F at mu=%s, w=%s: %s (%s)", mu, w, result.max_value, result.status)
    return result


def certify_witness(x: AssignmentX, mu, w) -> bool:
    """Exact recheck of every CSP-B constraint, strict ones included."""
    return check_csp_b(x, CSPParams(mu, w)).satisfied


def threshold(w, lo=DEFAULT_BRACKET[0], hi=DEFAULT_BRACKET[1], tol=DEFAULT_TOL,
              config: Optional[SearchConfig] = None) -> ThresholdResult:
    """Bisect on mu: max F <= 0 at the low end, > 0 at the high end."""
    if not lo < hi:
        raise PreconditionError("threshold bracket needs lo < hi")
    config = config or SearchConfig()

    def positive(mu) -> bool:
        value = maximize_F(mu, w, config).max_value
        return value is not None and value > 0

    evaluations = 2
    if positive(lo) or not positive(hi):
        raise NoSignChangeError(f"max F does not change sign on [{lo}, {hi}] for w={w}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        evaluations += 1
        if positive(mid):
            hi = mid
        else:
            lo = mid
        logger.debug("threshold bracket for w=%s: [%s, %s]", w, lo, hi)
    return ThresholdResult((lo + hi) / 2, (lo, hi), tol, w, evaluations)


def scan_w(grid: Sequence, bracket=DEFAULT_BRACKET, tol=DEFAULT_TOL,
           config: Optional[SearchConfig] = None, strict: bool = False) -> ScanResult:
    """Threshold for each w in grid; the best w maximizes mu* (first on ties).

    Grid points without a sign change are recorded and skipped unless strict.
    """
    if not grid:
        raise PreconditionError("scan_w needs a nonempty grid")
    records = []
    best_w, best_mu = None, None
    for w in grid:
        try:
            result = threshold(w, bracket[0], bracket[1], tol, config)
        except NoSignChangeError as exc:
            if strict:
                raise
            logger.warning("skipping w=%s: %s", w, exc)
            records.append({'w': str(w), 'w_float': float(w), 'mu_star': None,
                            'mu_star_float': float('nan'), 'lo': None, 'hi': None})
            continue
        records.append({
            'w': str(w), 'w_float': float(w),
            'mu_star': str(result.mu_star), 'mu_star_float': float(result.mu_star),
            'lo': str(result.bracket[0]), 'hi': str(result.bracket[1]),
        })
        if best_mu is None or result.mu_star > best_mu:
            best_w, best_mu = w, result.mu_star
    if best_w is None:
        raise NoSignChangeError("no grid point has a sign change on the bracket")
    return ScanResult(best_w, best_mu, pd.DataFrame.from_records(records))
