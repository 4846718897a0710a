"""
The quadratic constraint systems CSP-A and CSP-B, the quantity F, the
adjustment turning an A-solution into a B-solution, extraction of an
assignment from a digraph, and the y-substitution used by the certificate.

Everything here is generic over the exact scalar type: ints, Fractions,
FieldElements, and (for eval_F and from_y) LinearForms, which turns the same
code into a symbolic expansion.
"""

import logging
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .digraph import (
    OrientedDigraph, Selection, degree_minimizer, neighborhoods, partition_counts,
    weighted_minimizer,
)
from .errors import AdjustmentError, PreconditionError, ZeroOutDegreeError

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

STRICT = 'strict'
NONSTRICT = 'nonstrict'
EQUALITY = 'equality'


@dataclass(frozen=True)
class AssignmentX:
    """Sizes of the cells X_ij (X_31 is always empty and has no variable)."""

    x11: object = 0
    x12: object = 0
    x13: object = 0
    x14: object = 0
    x21: object = 0
    x22: object = 0
    x23: object = 0
    x24: object = 0
    x32: object = 0
    x33: object = 0
    x34: object = 0

    @classmethod
    def names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_dict(self) -> Dict[str, object]:
        return {name: getattr(self, name) for name in self.names()}

    def values(self) -> Tuple[object, ...]:
        return tuple(getattr(self, name) for name in self.names())

    @property
    def first_total(self):
        return self.x11 + self.x12 + self.x13 + self.x14

    @property
    def second_total(self):
        return self.x21 + self.x22 + self.x23 + self.x24

    @property
    def third_total(self):
        return self.x32 + self.x33 + self.x34


@dataclass(frozen=True)
class AssignmentY:
    y1: object
    y2: object
    y3: object
    y4: object

    def values(self) -> Tuple[object, ...]:
        return (self.y1, self.y2, self.y3, self.y4)


@dataclass(frozen=True)
class CSPParams:
    mu: object
    w: object

    def __post_init__(self):
        if self.mu < 0:
            raise PreconditionError("mu must be nonnegative")


@dataclass(frozen=True)
class ConstraintRecord:
    label: str
    name: str
    kind: str
    satisfied: bool
    slack: object


@dataclass(frozen=True)
class ConstraintReport:
    system: str
    records: Tuple[ConstraintRecord, ...]

    @property
    def satisfied(self) -> bool:
        return all(r.satisfied for r in self.records)

    def failed(self) -> List[ConstraintRecord]:
        return [r for r in self.records if not r.satisfied]

    def failed_labels(self) -> List[str]:
        labels = []
        for r in self.failed():
            if r.label not in labels:
                labels.append(r.label)
        return labels


def eval_F(x: AssignmentX, w):
    """F(x; w), the two-way arc count difference over Y = X11 + X12 + X21 + X22."""
    s = x.x21 + x.x22
    return (
        x.x21 * (x.x32 - x.x11 - x.x13)
        + x.x22 * (x.x32 + x.x23 + x.x33)
        + x.x23 * x.x12
        - x.x14 * (x.x12 + x.x21 + x.x22)
        + HALF * s * s
        - HALF * (w * x.x11 * x.x11 + x.x12 * x.x12)
        + (w - 1) * x.x11 * x.x12
    )


def gradient_F(x: AssignmentX, w) -> Dict[str, object]:
    """Analytic partial derivatives of eval_F."""
    s = x.x21 + x.x22
    return {
        'x11': -x.x21 - w * x.x11 + (w - 1) * x.x12,
        'x12': x.x23 - x.x14 - x.x12 + (w - 1) * x.x11,
        'x13': -x.x21,
        'x14': -(x.x12 + x.x21 + x.x22),
        'x21': x.x32 - x.x11 - x.x13 - x.x14 + s,
        'x22': x.x32 + x.x23 + x.x33 - x.x14 + s,
        'x23': x.x22 + x.x12,
        'x24': 0 * x.x11,
        'x32': s,
        'x33': x.x22,
        'x34': 0 * x.x11,
    }


def _record(label: str, name: str, kind: str, slack) -> ConstraintRecord:
    if kind == STRICT:
        ok = slack > 0
    elif kind == NONSTRICT:
        ok = slack >= 0
    else:
        ok = slack == 0
    return ConstraintRecord(label, name, kind, bool(ok), slack)


def _shared_records(x: AssignmentX, params: CSPParams) -> List[ConstraintRecord]:
    return [
        _record('4', 'x21 >= x12 + x13 + x14', NONSTRICT, x.x21 - x.x12 - x.x13 - x.x14),
        _record('6', 'x11 > 0', STRICT, x.x11),
        _record('6', 'x13 >= 0', NONSTRICT, x.x13),
        _record('6', 'x22 >= 0', NONSTRICT, x.x22),
        _record('6', 'x32 >= 0', NONSTRICT, x.x32),
        _record('6', 'x33 >= 0', NONSTRICT, x.x33),
        _record('6', 'x12 + x13 >= 0', NONSTRICT, x.x12 + x.x13),
        _record('6', 'x12 + x22 >= 0', NONSTRICT, x.x12 + x.x22),
        _record('7', 'F > 0', STRICT, eval_F(x, params.w)),
    ]


def _degree_slacks(x: AssignmentX, params: CSPParams):
    mu = params.mu
    return (
        mu * x.first_total - x.second_total,
        mu * mu * x.first_total - x.third_total,
        mu * (x.x11 + x.x21) - (x.x12 + x.x22 + x.x32),
    )


def check_csp_a(x: AssignmentX, params: CSPParams) -> ConstraintReport:
    """Constraints (1)-(7) with strict degree inequalities."""
    s1, s2, s3 = _degree_slacks(x, params)
    shared = _shared_records(x, params)
    records = [
        _record('1', 'mu*sum(x1j) > sum(x2j)', STRICT, s1),
        _record('2', 'mu^2*sum(x1j) > x32 + x33 + x34', STRICT, s2),
        _record('3', 'mu*(x11 + x21) > x12 + x22 + x32', STRICT, s3),
        shared[0],
    ] + [
        _record('5', f'{name} >= 0', NONSTRICT, getattr(x, name))
        for name in ('x14', 'x24', 'x34', 'x23')
    ] + shared[1:]
    return ConstraintReport('A', tuple(records))


def check_csp_b(x: AssignmentX, params: CSPParams) -> ConstraintReport:
    """Constraints (1=)-(7): degree equalities and x14 = x24 = x34 = x23 = 0."""
    s1, s2, s3 = _degree_slacks(x, params)
    shared = _shared_records(x, params)
    records = [
        _record('1', 'mu*sum(x1j) = sum(x2j)', EQUALITY, s1),
        _record('2', 'mu^2*sum(x1j) = x32 + x33 + x34', EQUALITY, s2),
        _record('3', 'mu*(x11 + x21) = x12 + x22 + x32', EQUALITY, s3),
        shared[0],
    ] + [
        _record('5', f'{name} = 0', EQUALITY, getattr(x, name))
        for name in ('x14', 'x24', 'x34', 'x23')
    ] + shared[1:]
    return ConstraintReport('B', tuple(records))


@dataclass(frozen=True)
class StepRecord:
    name: str
    delta: object
    f_before: object
    f_after: object
    assignment: AssignmentX


StepTrace = Tuple[StepRecord, ...]


def _require(step: str, x: AssignmentX, params: CSPParams, equal=(), closed=()):
    """Raise AdjustmentError unless x satisfies CSP-A with the given relaxations."""
    for record in check_csp_a(x, params).records:
        if record.label in equal:
            ok = record.slack == 0
        elif record.label in closed:
            ok = record.slack >= 0
        else:
            ok = record.satisfied
        if not ok:
            logger.warning("adjust step %s left constraint (%s) %s with slack %s",
                           step, record.label, record.name, record.slack)
            raise AdjustmentError(step, f"constraint ({record.label}) {record.name} broken")


def _require_increase(step: str, delta, before, after):
    if delta > 0 and not after > before:
        raise AdjustmentError(step, f"F did not increase ({before} -> {after})")
    if not after >= before:
        raise AdjustmentError(step, f"F decreased ({before} -> {after})")


def adjust(x: AssignmentX, params: CSPParams) -> Tuple[AssignmentX, StepTrace]:
    """Move a CSP-A solution to a CSP-B solution without decreasing F.

    The degree constraints (1)-(3) of the input may be tight. Each step is
    applied in closed form and checked exactly afterwards.
    """
    mu, w = params.mu, params.w
    if not (1 < w < 1 + mu * mu):
        raise PreconditionError("adjust needs 1 < w < 1 + mu^2")
    _check_adjust_input(x, params)
    trace: List[StepRecord] = []

    # 1. fold x14 into x13 and drop x24, x34
    f0 = eval_F(x, w)
    delta = x.x14
    gain = (x.x12 + x.x22) * x.x14
    x = replace(x, x13=x.x13 + x.x14, x14=0 * delta, x24=0 * delta, x34=0 * delta)
    f1 = eval_F(x, w)
    if f1 - f0 != gain:
        raise AdjustmentError('move_x14', f"F changed by {f1 - f0}, expected {gain}")
    _require('move_x14', x, params, closed=('1', '2', '3'))
    trace.append(StepRecord('move_x14', delta, f0, f1, x))

    # 2. raise x23 and x33 until (1) and (2) are equalities
    delta = mu * x.first_total - x.second_total
    x = replace(x, x23=x.x23 + delta, x33=mu * mu * x.first_total - x.x32 - x.x34)
    f2 = eval_F(x, w)
    _require_increase('fill_equalities', 0 * delta, f1, f2)
    _require('fill_equalities', x, params, equal=('1', '2'), closed=('3',))
    trace.append(StepRecord('fill_equalities', delta, f1, f2, x))

    # 3. drain x23: (x13, x22) up, (x12, x23) down
    delta = x.x23
    x = replace(x, x13=x.x13 + delta, x22=x.x22 + delta, x12=x.x12 - delta, x23=x.x23 - delta)
    f3 = eval_F(x, w)
    _require_increase('drain_x23', delta, f2, f3)
    _require('drain_x23', x, params, equal=('1', '2'), closed=('3',))
    trace.append(StepRecord('drain_x23', delta, f2, f3, x))

    # 4a. move weight from x21 to x22 until (3) or (4) is tight
    gap = mu * (x.x11 + x.x21) - (x.x12 + x.x22 + x.x32)
    room = x.x21 - x.x12 - x.x13 - x.x14
    delta = min(gap / (1 + mu), room)
    x = replace(x, x21=x.x21 - delta, x22=x.x22 + delta)
    f4 = eval_F(x, w)
    _require_increase('shift_x21_to_x22', delta, f3, f4)
    _require('shift_x21_to_x22', x, params, equal=('1', '2'), closed=('3',))
    trace.append(StepRecord('shift_x21_to_x22', delta, f3, f4, x))

    # 4b. close the remaining gap in (3) by moving x13 into x12
    delta = mu * (x.x11 + x.x21) - (x.x12 + x.x22 + x.x32)
    x = replace(x, x12=x.x12 + delta, x13=x.x13 - delta)
    f5 = eval_F(x, w)
    _require_increase('shift_x13_to_x12', delta, f4, f5)
    trace.append(StepRecord('shift_x13_to_x12', delta, f4, f5, x))

    report = check_csp_b(x, params)
    if not report.satisfied:
        failed = ', '.join(r.name for r in report.failed())
        raise AdjustmentError('shift_x13_to_x12', f"result is not B-feasible: {failed}")
    for record in trace:
        logger.debug("adjust %s: delta=%s F %s -> %s", record.name, record.delta,
                     record.f_before, record.f_after)
    return x, tuple(trace)


def _check_adjust_input(x: AssignmentX, params: CSPParams):
    for record in check_csp_a(x, params).records:
        ok = record.slack >= 0 if record.label in ('1', '2', '3') else record.satisfied
        if not ok:
            raise PreconditionError(f"input violates constraint ({record.label}) {record.name}")


def extract_assignment(D: OrientedDigraph, w) -> Tuple[Selection, AssignmentX]:
    """Select u, v as in the counting argument and return the cell sizes."""
    if D.n == 0 or D.min_out_degree() < 1:
        raise ZeroOutDegreeError("digraph has a vertex with out-degree 0; it is trivially Seymour")
    u = degree_minimizer(D)
    v = weighted_minimizer(D, u, w)
    counts = partition_counts(D, u, v).as_dict()
    counts.pop('x31')
    x = AssignmentX(**{name: Fraction(value) for name, value in counts.items()})
    return Selection(u, v, w), x


def extraction_identities(D: OrientedDigraph, selection: Selection, x: AssignmentX) -> Dict[str, bool]:
    """The five degree identities linking cell sizes to neighborhood sizes."""
    at_u = neighborhoods(D, selection.u).stats
    at_v = neighborhoods(D, selection.v).stats
    return {
        'd+(u)': x.first_total == at_u.d1,
        'd++(u)': x.second_total == at_u.d2,
        'd+++(u)': x.third_total == at_u.d3,
        'd+(v)': x.x11 + x.x21 == at_v.d1,
        'd++(v)': x.x12 + x.x22 + x.x32 == at_v.d2,
    }


def to_y(x: AssignmentX, consts) -> AssignmentY:
    """y-coordinates of a CSP-B point at mu = gamma (consts carries gamma, theta, gamma_inv)."""
    gamma = consts.gamma
    params = CSPParams(gamma, 0)
    report = check_csp_b(x, params)
    for record in report.records:
        if record.label in ('1', '2', '3', '5') and not record.satisfied:
            raise PreconditionError(f"to_y needs ({record.label}) {record.name}")
    y3 = x.x32 * consts.gamma_inv / consts.theta
    y4 = x.x33 * consts.gamma_inv * consts.gamma_inv
    return AssignmentY(
        y1=y3 - x.x12 * consts.gamma_inv,
        y2=x.x22 * consts.gamma_inv - y4,
        y3=y3,
        y4=y4,
    )


def from_y(y: AssignmentY, consts) -> AssignmentX:
    """The linear map back from y-coordinates; works on LinearForms too."""
    g, theta = consts.gamma, consts.theta
    y1, y2, y3, y4 = y.values()
    zero = y1 * 0
    return AssignmentX(
        x11=(1 + g) * y2 + y3 + y4 - y1,
        x12=g * (y3 - y1),
        x13=(1 + g) * (y1 - y2) + (theta * consts.gamma_inv - g - 1) * y3,
        x14=zero,
        x21=theta * y3 - g * y2,
        x22=g * (y2 + y4),
        x23=zero,
        x24=zero,
        x32=g * theta * y3,
        x33=g * g * y4,
        x34=zero,
    )
