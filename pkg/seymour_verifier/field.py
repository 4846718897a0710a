"""
Exact arithmetic over the rationals and over the number field Q(gamma).

gamma is the unique root in [0, 1] of

    p(x) = 8x^5 + 4x^4 - 12x^3 - 7x^2 + 2x + 4

Elements of Q(gamma) are stored as their remainder modulo p (five rational
coordinates, lowest degree first). Zero tests never assume p is irreducible:
a representative r vanishes at gamma iff gamma is a root of g = gcd(r, p),
which is decided by shrinking an isolating interval of gamma until the Sturm
count of either g or p/g drops to zero. Signs of nonzero elements come from
rational interval arithmetic on that interval.

Rationals are plain fractions.Fraction values, canonical after every
operation.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .errors import EndpointRootError, PreconditionError

logger = logging.getLogger(__name__)

Rational = Fraction

# Isolating intervals are refined in steps of this many bisections
_BITS_STEP = 16
# Past this precision approx() also checks for an exact rounding tie
_TIE_CHECK_BITS = 1024


def as_rational(value) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def _sign_of_rational(value: Fraction) -> Sign:
    if value > 0:
        return Sign.POSITIVE
    if value < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with rational coefficients, lowest degree first.

    The zero polynomial is the empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    @classmethod
    def x(cls) -> 'Poly':
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> 'Poly':
        return cls((value,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> Sign:
        return _sign_of_rational(as_rational(self(as_rational(x))))

    def evaluate_interval(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        """Rational enclosure of the range of the polynomial on [lo, hi] (interval Horner)."""
        acc_lo = acc_hi = Fraction(0)
        for c in reversed(self.coefficients):
            products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
            acc_lo, acc_hi = min(products) + c, max(products) + c
        return acc_lo, acc_hi

    def derivative(self) -> 'Poly':
        return Poly(tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def monic(self) -> 'Poly':
        if self.is_zero():
            return self
        return self / self.leading

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return Poly(tuple(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
        ))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            return NotImplemented
        scalar = as_rational(scalar)
        if scalar == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return Poly(tuple(c / scalar for c in self.coefficients))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        divisor = other.coefficients
        top = len(divisor) - 1
        rem = list(self.coefficients)
        quot = [Fraction(0)] * max(len(rem) - top, 0)
        for k in range(len(rem) - len(divisor), -1, -1):
            coeff = rem[k + top] / divisor[-1]
            quot[k] = coeff
            if coeff:
                for i, c in enumerate(divisor):
                    rem[k + i] -= coeff * c
        return Poly(tuple(quot)), Poly(tuple(rem[:top]))

    def __floordiv__(self, other):
        result = self.__divmod__(other)
        return result if result is NotImplemented else result[0]

    def __mod__(self, other):
        result = self.__divmod__(other)
        return result if result is NotImplemented else result[1]

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            body = '' if (mag == 1 and k > 0) else str(mag)
            if k >= 1:
                body += 'x' if k == 1 else f'x^{k}'
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


# p(x) = 8x^5 + 4x^4 - 12x^3 - 7x^2 + 2x + 4, defining gamma
P_GAMMA = Poly((4, 2, -7, -12, 4, 8))
# q(x) = 2x^3 + x^2 - 1, defining the older constant lambda
Q_LAMBDA = Poly((-1, 0, 1, 2))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def ext_gcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g the monic gcd."""
    r0, r1 = a, b
    s0, s1 = Poly.constant(1), Poly()
    t0, t1 = Poly(), Poly.constant(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return Poly(), Poly(), Poly()
    lead = r0.leading
    return r0 / lead, s0 / lead, t0 / lead


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree <= 0


def sturm_sequence(f: Poly) -> Tuple[Poly, ...]:
    """Standard Sturm sequence f, f', -rem(f, f'), ... over the rationals."""
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        remainder = seq[-2] % seq[-1]
        if remainder.is_zero():
            break
        seq.append(-remainder)
    return tuple(s for s in seq if not s.is_zero())


def _sign_variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s.sign_at(x) for s in seq]
    signs = [s for s in signs if s != Sign.ZERO]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(f: Poly, lo, hi) -> int:
    """Number of distinct real roots of f in (lo, hi).

    Raises EndpointRootError if f vanishes at either endpoint.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    if lo >= hi:
        raise PreconditionError(f"empty interval [{lo}, {hi}]")
    if f.is_zero():
        raise PreconditionError("Sturm count of the zero polynomial")
    for endpoint in (lo, hi):
        if f(endpoint) == 0:
            raise EndpointRootError(f"{f} vanishes at endpoint {endpoint}")
    seq = sturm_sequence(f)
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi


def isolate_root(f: Poly, lo, hi, width) -> IsolatingInterval:
    """Bisect [lo, hi] down to an interval of the given width around f's unique root."""
    lo, hi, width = as_rational(lo), as_rational(hi), as_rational(width)
    if width <= 0:
        raise PreconditionError("isolation width must be positive")
    count = sturm_count(f, lo, hi)
    if count != 1:
        raise PreconditionError(f"{f} has {count} roots in ({lo}, {hi}), expected exactly 1")
    sign_lo = f.sign_at(lo)
    if sign_lo == f.sign_at(hi):
        raise PreconditionError(f"{f} does not change sign on ({lo}, {hi})")

    while hi - lo > width:
        mid = (lo + hi) / 2
        sign_mid = f.sign_at(mid)
        if sign_mid == Sign.ZERO:
            # rational root: shrink symmetrically, endpoints stay root-free
            half = min(mid - lo, hi - mid)
            while 2 * half > width:
                half /= 2
            return IsolatingInterval(mid - half, mid + half)
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi)


@dataclass(frozen=True)
class NumberField:
    """Q(alpha) where alpha is the unique root of `modulus` in (lo, hi).

    Construction verifies that the modulus is squarefree (gcd with its
    derivative is constant) and that its Sturm count on (lo, hi) is one.
    """

    modulus: Poly
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'lo', as_rational(self.lo))
        object.__setattr__(self, 'hi', as_rational(self.hi))
        if self.modulus.degree < 1:
            raise PreconditionError("number field modulus must have degree >= 1")
        if not is_squarefree(self.modulus):
            raise PreconditionError(f"modulus {self.modulus} is not squarefree")
        count = sturm_count(self.modulus, self.lo, self.hi)
        if count != 1:
            raise PreconditionError(
                f"modulus {self.modulus} has {count} roots in ({self.lo}, {self.hi})"
            )

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def reduce(self, raw: Iterable) -> 'FieldElement':
        rep = Poly(tuple(raw)) % self.modulus
        coords = rep.coefficients + (Fraction(0),) * (self.degree - len(rep.coefficients))
        return FieldElement(coords, self)

    def embed(self, value) -> 'FieldElement':
        return self.reduce((as_rational(value),))

    @property
    def gen(self) -> 'FieldElement':
        return self.reduce((0, 1))

    @property
    def one(self) -> 'FieldElement':
        return self.embed(1)

    @property
    def zero(self) -> 'FieldElement':
        return self.embed(0)

    def root_interval(self, bits: int) -> IsolatingInterval:
        """Isolating interval of the generator with width at most 2**-bits."""
        bits = max(_BITS_STEP, -(-bits // _BITS_STEP) * _BITS_STEP)
        return _root_interval(self, bits)


@lru_cache(maxsize=None)
def _root_interval(number_field: NumberField, bits: int) -> IsolatingInterval:
    if bits <= _BITS_STEP:
        lo, hi = number_field.lo, number_field.hi
    else:
        coarse = _root_interval(number_field, bits - _BITS_STEP)
        lo, hi = coarse.lo, coarse.hi
    return isolate_root(number_field.modulus, lo, hi, Fraction(1, 2 ** bits))


@dataclass(frozen=True, eq=False)
class FieldElement:
    """a0 + a1*g + ... + a_{d-1}*g^(d-1), always reduced modulo the field's modulus.

    Equality is value equality (decided by is_zero), so elements are not hashable.
    """

    coords: Tuple[Fraction, ...]
    field: NumberField = dataclass_field(repr=False)

    __hash__ = None

    def as_poly(self) -> Poly:
        return Poly(self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("Cannot mix elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.embed(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(tuple(-a for a in self.coords), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.reduce((self.as_poly() * other.as_poly()).coefficients)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * invert(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * invert(self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else invert(self)
        result = self.field.one
        n = abs(exponent)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.coords == other.coords:
            return True
        return is_zero(self - other)

    def _compare(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sign_of(self - other)

    def __lt__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s == Sign.NEGATIVE

    def __le__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s != Sign.POSITIVE

    def __gt__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s == Sign.POSITIVE

    def __ge__(self, other):
        s = self._compare(other)
        return s if s is NotImplemented else s != Sign.NEGATIVE

    def __bool__(self):
        return not is_zero(self)

    def __abs__(self):
        return -self if sign_of(self) == Sign.NEGATIVE else self

    def __float__(self):
        lo, hi = enclosure(self, 64)
        return float((lo + hi) / 2)

    def __str__(self):
        text = str(self.as_poly()).replace('x', 'g')
        return text


Q_GAMMA = NumberField(P_GAMMA)
GAMMA = Q_GAMMA.gen


def reduce_mod_p(raw: Sequence, number_field: NumberField = Q_GAMMA) -> FieldElement:
    """Degree < deg(p) representative of sum(raw[k] * g**k), using p(g) = 0."""
    return number_field.reduce(raw)


def embed(value, number_field: NumberField = Q_GAMMA) -> FieldElement:
    return number_field.embed(value)


def _generator_is_root(number_field: NumberField, g: Poly, cofactor: Poly) -> bool:
    """Decide whether the generator is a root of g, where g * cofactor = modulus."""
    bits = _BITS_STEP
    while True:
        interval = number_field.root_interval(bits)
        if sturm_count(g, interval.lo, interval.hi) == 0:
            return False
        if sturm_count(cofactor, interval.lo, interval.hi) == 0:
            return True
        bits *= 2


def is_zero(a: FieldElement) -> bool:
    """True iff a's representative vanishes at the generator."""
    rep = a.as_poly()
    if rep.is_zero():
        return True
    modulus = a.field.modulus
    g = poly_gcd(rep, modulus)
    if g.degree <= 0:
        return False
    return _generator_is_root(a.field, g, modulus // g)


def invert(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via the extended Euclidean algorithm against p."""
    rep = a.as_poly()
    if rep.is_zero():
        raise ZeroDivisionError("inverse of zero field element")
    modulus = a.field.modulus
    g, s, _ = ext_gcd(rep, modulus)
    if g.degree == 0:
        return a.field.reduce(s.coefficients)
    cofactor = modulus // g
    if _generator_is_root(a.field, g, cofactor):
        raise ZeroDivisionError("inverse of zero field element")
    # the generator lives on the cofactor, where rep is a unit
    _, s, _ = ext_gcd(rep, cofactor)
    return a.field.reduce(s.coefficients)


def enclosure(a: FieldElement, bits: int) -> Tuple[Fraction, Fraction]:
    """Rational bounds on the value of a, from the generator's interval at `bits`."""
    interval = a.field.root_interval(bits)
    return a.as_poly().evaluate_interval(interval.lo, interval.hi)


def sign_of(a) -> Sign:
    """Exact sign of a field element (or of a plain rational)."""
    if not isinstance(a, FieldElement):
        return _sign_of_rational(as_rational(a))
    if is_zero(a):
        return Sign.ZERO
    bits = 32
    while True:
        lo, hi = enclosure(a, bits)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        bits *= 2


def _format_decimal(scaled: int, digits: int) -> str:
    sign = '-' if scaled < 0 else ''
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def approx(a, digits: int) -> str:
    """Decimal string correctly rounded (half-even) to `digits` places."""
    if digits < 0:
        raise PreconditionError("digits must be nonnegative")
    scale = 10 ** digits
    if not isinstance(a, FieldElement):
        return _format_decimal(round(as_rational(a) * scale), digits)
    if a.is_rational():
        return _format_decimal(round(a.coords[0] * scale), digits)
    bits = 32
    while True:
        lo, hi = enclosure(a, bits)
        scaled_lo, scaled_hi = round(lo * scale), round(hi * scale)
        if scaled_lo == scaled_hi:
            return _format_decimal(scaled_lo, digits)
        if bits >= _TIE_CHECK_BITS:
            tie = (math.floor(lo * scale) + Fraction(1, 2)) / scale
            if is_zero(a - tie):
                return _format_decimal(round(tie * scale), digits)
        bits *= 2
