"""
Linear and quadratic forms with exact scalar coefficients.

Coefficients may be ints, Fractions or FieldElements. Multiplying two linear
forms expands into a QuadraticForm, so any polynomial formula written for
plain scalars (eval_F, the from_y substitution) can be run on the variable
basis to obtain its symbolic expansion.
"""

from typing import Dict, Iterable, List, Sequence, Tuple

Entry = Tuple[int, int]


def _is_form(value) -> bool:
    return isinstance(value, (LinearForm, QuadraticForm))


def _is_zero(value) -> bool:
    return value == 0


class LinearForm:
    """Homogeneous linear form c_0*v_0 + ... + c_{n-1}*v_{n-1}."""

    __slots__ = ('coeffs',)
    __hash__ = None

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(coeffs)

    @classmethod
    def variable(cls, index: int, dimension: int) -> 'LinearForm':
        if not 0 <= index < dimension:
            raise IndexError(f"variable {index} outside dimension {dimension}")
        return cls(1 if k == index else 0 for k in range(dimension))

    @classmethod
    def basis(cls, dimension: int) -> Tuple['LinearForm', ...]:
        return tuple(cls.variable(k, dimension) for k in range(dimension))

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    def _check(self, other: 'LinearForm'):
        if other.dimension != self.dimension:
            raise ValueError("linear forms of different dimension")

    def __add__(self, other):
        if isinstance(other, LinearForm):
            self._check(other)
            return LinearForm(a + b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinearForm(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, LinearForm):
            return self + (-other)
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int) and other == 0:
            return -self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, LinearForm):
            self._check(other)
            entries: Dict[Entry, object] = {}
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if _is_zero(b):
                        continue
                    key = (min(i, j), max(i, j))
                    entries[key] = entries.get(key, 0) + a * b
            return QuadraticForm(self.dimension, entries)
        if isinstance(other, QuadraticForm):
            return NotImplemented
        return LinearForm(a * other for a in self.coeffs)

    def __rmul__(self, other):
        if _is_form(other):
            return NotImplemented
        return LinearForm(other * a for a in self.coeffs)

    def __truediv__(self, other):
        if _is_form(other):
            return NotImplemented
        return LinearForm(a / other for a in self.coeffs)

    def __call__(self, values: Sequence):
        return sum((c * v for c, v in zip(self.coeffs, values)), 0)

    def is_zero(self) -> bool:
        return all(_is_zero(a) for a in self.coeffs)

    def __repr__(self):
        return f"LinearForm({list(self.coeffs)})"


class QuadraticForm:
    """Quadratic form sum_{i<=j} q_ij v_i v_j, each monomial stored once."""

    __hash__ = None

    def __init__(self, dimension: int, entries=None):
        self.dimension = dimension
        self.entries: Dict[Entry, object] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < dimension and 0 <= j < dimension):
                raise IndexError(f"entry ({i}, {j}) outside dimension {dimension}")
            key = (min(i, j), max(i, j))
            self.entries[key] = self.entries.get(key, 0) + value

    def coefficient(self, i: int, j: int):
        return self.entries.get((min(i, j), max(i, j)), 0)

    def monomials(self) -> List[Entry]:
        return [(i, j) for i in range(self.dimension) for j in range(i, self.dimension)]

    def nonzero_monomials(self) -> List[Entry]:
        return [key for key in self.monomials() if not _is_zero(self.coefficient(*key))]

    def is_zero(self) -> bool:
        return not self.nonzero_monomials()

    def _check(self, other: 'QuadraticForm'):
        if other.dimension != self.dimension:
            raise ValueError("quadratic forms of different dimension")

    def __add__(self, other):
        if isinstance(other, QuadraticForm):
            self._check(other)
            merged = dict(self.entries)
            for key, value in other.entries.items():
                merged[key] = merged.get(key, 0) + value
            return QuadraticForm(self.dimension, merged)
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadraticForm(self.dimension, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if isinstance(other, QuadraticForm):
            return self + (-other)
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int) and other == 0:
            return -self
        return NotImplemented

    def __mul__(self, other):
        if _is_form(other):
            return NotImplemented
        return QuadraticForm(self.dimension, {k: v * other for k, v in self.entries.items()})

    def __rmul__(self, other):
        if _is_form(other):
            return NotImplemented
        return QuadraticForm(self.dimension, {k: other * v for k, v in self.entries.items()})

    def __truediv__(self, other):
        if _is_form(other):
            return NotImplemented
        return QuadraticForm(self.dimension, {k: v / other for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.dimension == other.dimension and (self - other).is_zero()

    def __call__(self, values: Sequence):
        return sum((q * values[i] * values[j] for (i, j), q in self.entries.items()), 0)

    def hessian(self) -> List[List[object]]:
        """Symmetric matrix H with form(v) = v^T H v / 2."""
        n = self.dimension
        h = [[0] * n for _ in range(n)]
        for (i, j), q in self.entries.items():
            if i == j:
                h[i][i] = h[i][i] + 2 * q
            else:
                h[i][j] = h[i][j] + q
                h[j][i] = h[j][i] + q
        return h

    def __repr__(self):
        return f"QuadraticForm({self.dimension}, {self.entries!r})"
