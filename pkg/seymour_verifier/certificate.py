"""
Exact verification of the unsatisfiability certificate for CSP-B at mu = gamma.

With w = gamma^2 + 2gamma^3 and theta = 2 + 2gamma - 4gamma^3, substituting
the y-coordinates into F gives a quadratic form sum c_ij y_i y_j. Adding
nonnegative multiples of four products P1..P4 (each >= 0 on CSP-B) leaves

    c11 y1^2 + (c12 - c14) y1 y2 + (c22 + c14) y2^2

which is negative definite. So F <= 0 on CSP-B, contradicting F > 0.

verify_all() re-derives every piece of that argument in Q(gamma) and reports
each check separately. Identity checks are exact equalities of field elements
or quadratic forms; sign checks are exact but use interval refinement.
"""

import logging
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .csp import AssignmentY, eval_F, from_y
from .errors import CertificateError, SeymourError
from .field import (
    FieldElement, IsolatingInterval, NumberField, P_GAMMA, Poly, Q_GAMMA, Q_LAMBDA, approx,
    is_squarefree, is_zero, isolate_root, sign_of, Sign, sturm_count,
)
from .forms import LinearForm, QuadraticForm

logger = logging.getLogger(__name__)

IDENTITY = 'identity'
SIGN = 'sign'
ROOT = 'root'

Y_NAMES = ('y1', 'y2', 'y3', 'y4')
_REPORT_BITS = 40


@dataclass(frozen=True, eq=False)
class FieldConstants:
    gamma: FieldElement
    w: FieldElement
    theta: FieldElement
    rho: FieldElement
    gamma_inv: FieldElement
    gamma_interval: IsolatingInterval
    lambda_interval: IsolatingInterval


@dataclass(frozen=True, eq=False)
class CoeffSet:
    c11: FieldElement
    c12: FieldElement
    c13: FieldElement
    c14: FieldElement
    c22: FieldElement
    c23: FieldElement
    c24: FieldElement
    c33: FieldElement
    c34: FieldElement
    c44: FieldElement

    def entry(self, i: int, j: int):
        """c_ij for 0-based variable indices (zero for c_ij not in the set)."""
        i, j = min(i, j), max(i, j)
        return getattr(self, f"c{i + 1}{j + 1}", 0)


@dataclass(frozen=True, eq=False)
class CheckResult:
    name: str
    kind: str
    passed: bool
    reference: str
    detail: str = ''
    value: Optional[FieldElement] = None
    approx: Optional[str] = None


@dataclass(frozen=True, eq=False)
class CertificateReport:
    checks: Tuple[CheckResult, ...]
    mutation: Optional[str] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def conclusion(self) -> str:
        if self.passed:
            return ("all checks passed: CSP-B with mu = gamma, w = gamma^2 + 2gamma^3 is "
                    "unsatisfiable, hence every oriented digraph has a gamma-Seymour vertex")
        names = ', '.join(c.name for c in self.failed())
        return f"certificate NOT verified; failed checks: {names}"


@dataclass(frozen=True)
class Mutation:
    """Perturb one constant or coefficient by `delta` before checking."""

    name: str
    target: str
    delta: Fraction


MUTATIONS: Tuple[Mutation, ...] = (
    Mutation('c11+1', 'c11', Fraction(1)),
    Mutation('c12+1', 'c12', Fraction(1)),
    Mutation('c14+1', 'c14', Fraction(1)),
    Mutation('c22+1', 'c22', Fraction(1)),
    Mutation('c23+1', 'c23', Fraction(1)),
    Mutation('c24+1', 'c24', Fraction(1)),
    Mutation('c34+1', 'c34', Fraction(1)),
    Mutation('w+1/100', 'w', Fraction(1, 100)),
    Mutation('theta+1/100', 'theta', Fraction(1, 100)),
    Mutation('rho+1/100', 'rho', Fraction(1, 100)),
)


def mutation_by_name(name: str) -> Mutation:
    for mutation in MUTATIONS:
        if mutation.name == name:
            return mutation
    raise KeyError(f"unknown mutation {name!r}")


def _result(name, kind, passed, reference, detail='', value=None, digits=4) -> CheckResult:
    text = approx(value, digits) if isinstance(value, FieldElement) else None
    outcome = 'passed' if passed else 'FAILED'
    logger.info("%s check %s: %s", kind, name, outcome)
    return CheckResult(name, kind, bool(passed), reference, detail, value, text)


def build_constants(number_field: NumberField = Q_GAMMA) -> FieldConstants:
    """gamma, w, theta, rho and 1/gamma in Q(gamma), with 1 < w < 1 + gamma^2 checked."""
    gamma = number_field.gen
    gamma_inv = 1 / gamma
    w = gamma * gamma + 2 * gamma ** 3
    theta = 2 + 2 * gamma - 4 * gamma ** 3
    rho = 1 + theta - gamma_inv * theta
    if sign_of(w - 1) != Sign.POSITIVE:
        raise CertificateError("w > 1 does not hold")
    if sign_of(1 + gamma * gamma - w) != Sign.POSITIVE:
        raise CertificateError("w < 1 + gamma^2 does not hold")
    return FieldConstants(
        gamma=gamma,
        w=w,
        theta=theta,
        rho=rho,
        gamma_inv=gamma_inv,
        gamma_interval=number_field.root_interval(_REPORT_BITS),
        lambda_interval=isolate_root(Q_LAMBDA, 0, 1, Fraction(1, 2 ** _REPORT_BITS)),
    )


def build_coefficients(consts: FieldConstants) -> CoeffSet:
    g, w, theta = consts.gamma, consts.w, consts.theta
    g_inv = consts.gamma_inv
    return CoeffSet(
        c11=(w - 1) * g - (w + g * g) / 2,
        c12=g * g + (1 + g) * (w - (w - 1) * g),
        c13=w + g * g - g * (2 * w - 2 + theta),
        c14=w - (w - 1) * g,
        c22=-w * (1 + g) * (1 + g) / 2,
        c23=theta - g * g - (1 + g) * (w - (w - 1) * g),
        c24=g + g ** 3 - w * (1 + g),
        c33=g * (w - 1 + theta) + (g - g_inv) * theta * theta + (theta * theta - g * g - w) / 2,
        c34=(g + g * g - 1) * theta - w + (w - 1) * g,
        c44=g ** 3 + (g * g - w) / 2,
    )


def c33_factorization_holds(modulus: Poly = P_GAMMA) -> bool:
    """t*c33(t) = (t - 1)(2t^2 + 2t + 1) * modulus(t) as polynomials in a free t."""
    t = Poly.x()
    w = t * t + 2 * t * t * t
    theta = 2 + 2 * t - 4 * t * t * t
    lhs = t * t * (w - 1 + theta) + (t * t - 1) * theta * theta + t * (theta * theta - t * t - w) / 2
    rhs = (t - 1) * (2 * t * t + 2 * t + 1) * modulus
    return lhs == rhs


def check_vanishing(coeffs: CoeffSet, consts: FieldConstants) -> List[CheckResult]:
    g = consts.gamma
    field = g.field
    results = [
        _result('c13 = 0', IDENTITY, is_zero(coeffs.c13), 'vanishing coefficient c13', value=coeffs.c13),
        _result('c33 = 0', IDENTITY, is_zero(coeffs.c33), 'vanishing coefficient c33', value=coeffs.c33),
        _result('c44 = 0', IDENTITY, is_zero(coeffs.c44), 'vanishing coefficient c44', value=coeffs.c44),
    ]
    product = consts.gamma_inv * (g - 1) * (2 * g * g + 2 * g + 1) * field.reduce(field.modulus.coefficients)
    polynomial = c33_factorization_holds(field.modulus)
    both_zero = is_zero(product) and is_zero(coeffs.c33)
    results.append(_result(
        'c33 = (g-1)(2g^2+2g+1)p(g)/g', IDENTITY, polynomial and both_zero,
        'factorization of c33 through the minimal polynomial',
        detail=f"polynomial identity {'holds' if polynomial else 'fails'}; "
               f"both sides zero: {both_zero}",
    ))
    return results


def y_basis() -> AssignmentY:
    return AssignmentY(*LinearForm.basis(4))


def build_F_form(consts: FieldConstants) -> QuadraticForm:
    """F expanded in y1..y4 by substituting the from_y map into eval_F."""
    return eval_F(from_y(y_basis(), consts), consts.w)


def build_products(consts: FieldConstants) -> Tuple[QuadraticForm, ...]:
    y1, y2, y3, y4 = y_basis().values()
    p1 = (y2 - y1 + consts.rho * y3) * (y2 + y4)
    p2 = (consts.theta * consts.gamma_inv * y3 - y2) * y4
    p3 = (y2 + y4) * y3
    p4 = y3 * y4
    return p1, p2, p3, p4


def build_F_form_and_products(consts: FieldConstants):
    return build_F_form(consts), build_products(consts)


def products_in_x(consts: FieldConstants) -> Tuple[QuadraticForm, ...]:
    """P1..P4 written through the x-variables, then expanded in y."""
    x = from_y(y_basis(), consts)
    gi = consts.gamma_inv
    theta_inv = 1 / consts.theta
    return (
        gi * (x.x21 - x.x12 - x.x13 - x.x14) * x.x22,
        gi ** 3 * x.x21 * x.x33,
        gi * gi * theta_inv * x.x22 * x.x32,
        gi ** 3 * theta_inv * x.x32 * x.x33,
    )


def _residual_detail(form: QuadraticForm) -> str:
    nonzero = form.nonzero_monomials()
    if not nonzero:
        return 'all entries exactly zero'
    names = ', '.join(f"{Y_NAMES[i]}*{Y_NAMES[j]}" for i, j in nonzero)
    return f"nonzero residual on {names}"


def check_F_expansion(F_y: QuadraticForm, coeffs: CoeffSet) -> List[CheckResult]:
    expected = QuadraticForm(4, {(i, j): coeffs.entry(i, j) for i, j in F_y.monomials()})
    residual = F_y - expected
    missing = [F_y.coefficient(0, 2), F_y.coefficient(2, 2), F_y.coefficient(3, 3)]
    return [
        _result('F(y) = sum c_ij y_i y_j', IDENTITY, residual.is_zero(),
                'expansion of F in the y-coordinates', _residual_detail(residual)),
        _result('F(y) has no y1*y3, y3^2, y4^2 terms', IDENTITY, all(c == 0 for c in missing),
                'vanishing monomials of F(y)'),
    ]


def check_products(consts: FieldConstants) -> List[CheckResult]:
    results = []
    labels = ('P1 = (x21-x12-x13-x14)x22/g', 'P2 = x21*x33/g^3',
              'P3 = x22*x32/(g^2 theta)', 'P4 = x32*x33/(g^3 theta)')
    for label, in_y, in_x in zip(labels, build_products(consts), products_in_x(consts)):
        residual = in_y - in_x
        results.append(_result(label, IDENTITY, residual.is_zero(),
                               'nonnegative product written in x-space', _residual_detail(residual)))
    return results


def multipliers(coeffs: CoeffSet, consts: FieldConstants) -> Tuple[FieldElement, ...]:
    c = coeffs
    m2 = c.c14 + c.c24
    return (
        c.c14,
        m2,
        -(c.c23 + consts.rho * c.c14),
        c.c23 - c.c34 - consts.gamma_inv * consts.theta * m2,
    )


def combination(F_y: QuadraticForm, products, coeffs: CoeffSet, consts: FieldConstants) -> QuadraticForm:
    total = F_y
    for m, product in zip(multipliers(coeffs, consts), products):
        total = total + m * product
    return total


def check_combination(F_y: QuadraticForm, products, coeffs: CoeffSet, consts: FieldConstants) -> CheckResult:
    total = combination(F_y, products, coeffs, consts)
    target = QuadraticForm(4, {
        (0, 0): coeffs.c11,
        (0, 1): coeffs.c12 - coeffs.c14,
        (1, 1): coeffs.c22 + coeffs.c14,
    })
    residual = total - target
    return _result('F + sum m_k P_k = c11 y1^2 + (c12-c14) y1y2 + (c22+c14) y2^2', IDENTITY,
                   residual.is_zero(), 'combination identity', _residual_detail(residual))


def discriminant(coeffs: CoeffSet) -> FieldElement:
    b = coeffs.c12 - coeffs.c14
    return b * b - 4 * coeffs.c11 * (coeffs.c22 + coeffs.c14)


def check_signs(coeffs: CoeffSet, consts: FieldConstants) -> List[CheckResult]:
    m1, m2, m3, m4 = multipliers(coeffs, consts)
    wanted = (
        ('m1 = c14 > 0', m1, Sign.POSITIVE),
        ('m2 = c14 + c24 > 0', m2, Sign.POSITIVE),
        ('m3 = -(c23 + rho*c14) > 0', m3, Sign.POSITIVE),
        ('m4 = c23 - c34 - theta/g*(c14 + c24) > 0', m4, Sign.POSITIVE),
        ('c11 < 0', coeffs.c11, Sign.NEGATIVE),
        ('(c12-c14)^2 - 4 c11 (c22+c14) < 0', discriminant(coeffs), Sign.NEGATIVE),
    )
    return [
        _result(name, SIGN, sign_of(value) == sign, 'sign condition', value=value)
        for name, value, sign in wanted
    ]


def bcw_constant(consts: FieldConstants) -> Tuple[FieldElement, List[CheckResult]]:
    """1/(2 + gamma), the degree fraction guaranteeing a directed triangle."""
    value = 1 / (2 + consts.gamma)
    checks = [
        _result('(2 + g) * b = 1', IDENTITY, (2 + consts.gamma) * value == 1,
                'triangle degree constant', value=value),
        _result('1/3 < b < 1/2', SIGN, Fraction(1, 3) < value < Fraction(1, 2),
                'triangle degree constant range', value=value),
    ]
    return value, checks


def _apply(target, mutation: Optional[Mutation]):
    if mutation is None:
        return target
    names = {f.name for f in fields(target)}
    if mutation.target not in names:
        return target
    return replace(target, **{mutation.target: getattr(target, mutation.target) + mutation.delta})


def _root_checks(modulus: Poly) -> List[CheckResult]:
    results = []
    for label, poly in (('p', modulus), ('q', Q_LAMBDA)):
        try:
            count = sturm_count(poly, 0, 1)
            detail = f"{count} root(s) of {poly} in (0, 1)"
        except SeymourError as exc:
            count, detail = None, str(exc)
        results.append(_result(f"sturm_count({label}, 0, 1) = 1", ROOT, count == 1,
                               'unique root in the unit interval', detail))
    results.append(_result('p squarefree', IDENTITY, is_squarefree(modulus),
                           'gcd(p, p\') constant', str(modulus)))
    return results


def verify_all(modulus: Optional[Poly] = None, mutation: Optional[Mutation] = None) -> CertificateReport:
    """Run every certificate check; `modulus` and `mutation` exist for mutation testing."""
    modulus = P_GAMMA if modulus is None else modulus
    mutation_name = mutation.name if mutation is not None else None
    checks = _root_checks(modulus)

    try:
        number_field = Q_GAMMA if modulus == P_GAMMA else NumberField(modulus)
        consts = build_constants(number_field)
    except SeymourError as exc:
        checks.append(_result('constants', ROOT, False, 'field construction and 1 < w < 1 + g^2', str(exc)))
        return CertificateReport(tuple(checks), mutation_name)

    consts = _apply(consts, mutation)
    g = consts.gamma
    checks.append(_result('gamma', ROOT, True, 'root of p in (0, 1)',
                          f"interval [{float(consts.gamma_interval.lo):.9f}, "
                          f"{float(consts.gamma_interval.hi):.9f}]", value=g, digits=6))
    checks.append(_result('lambda', ROOT, True, 'root of q in (0, 1)',
                          f"approximately {float(consts.lambda_interval.midpoint):.6f}"))
    checks.append(_result('w > 1', SIGN, sign_of(consts.w - 1) == Sign.POSITIVE,
                          'weighting factor lower bound', value=consts.w))
    checks.append(_result('w < 1 + g^2', SIGN, sign_of(1 + g * g - consts.w) == Sign.POSITIVE,
                          'weighting factor upper bound', value=1 + g * g - consts.w))

    coeffs = _apply(build_coefficients(consts), mutation)
    checks.extend(check_vanishing(coeffs, consts))
    F_y, products = build_F_form_and_products(consts)
    checks.extend(check_F_expansion(F_y, coeffs))
    checks.extend(check_products(consts))
    checks.append(check_combination(F_y, products, coeffs, consts))
    checks.extend(check_signs(coeffs, consts))
    _, bcw_checks = bcw_constant(consts)
    checks.extend(bcw_checks)

    report = CertificateReport(tuple(checks), mutation_name)
    logger.info("certificate %s (%d checks)", 'passed' if report.passed else 'FAILED', len(checks))
    return report


def constant_values(consts: FieldConstants, coeffs: CoeffSet) -> Dict[str, FieldElement]:
    """Named constants for reports."""
    g = consts.gamma
    values = {
        'gamma': g,
        'gamma^2': g * g,
        'w': consts.w,
        'theta': consts.theta,
        'rho': consts.rho,
        'gamma_inv': consts.gamma_inv,
    }
    values.update({f.name: getattr(coeffs, f.name) for f in fields(coeffs)})
    for k, m in enumerate(multipliers(coeffs, consts), start=1):
        values[f"m{k}"] = m
    values['discriminant'] = discriminant(coeffs)
    values['bcw'] = 1 / (2 + g)
    return values
