"""
Package-level defaults. The CLI exposes each of these as an option.
"""

from fractions import Fraction

DEFAULT_SEED = 20240601
DEFAULT_TRIALS = 200
DEFAULT_STARTS = 16
DEFAULT_ITERATIONS = 400
DEFAULT_PROJECTION_SWEEPS = 200
DEFAULT_TOL = Fraction(1, 1000)
DEFAULT_BRACKET = (Fraction(13, 20), Fraction(4, 5))
DEFAULT_W = Fraction(56, 45)
DEFAULT_W_GRID = tuple(Fraction(21 + k, 20) for k in range(9))
DEFAULT_EPSILON = Fraction(1, 1000)

# Rational lower bound for gamma used by the digraph property checks
GAMMA_LOWER_BOUND = Fraction(715538, 1000000)

FLOAT_TOLERANCE = 1e-9
