"""
Seymour Verifier - exact machine check of the gamma-Seymour vertex bound

A toolkit that proves, by exact arithmetic in the number field Q(gamma), that
every oriented digraph has a vertex u with d++(u) >= gamma * d+(u), where
gamma ~ 0.715538 is the unique root of 8x^5 + 4x^4 - 12x^3 - 7x^2 + 2x + 4
in (0, 1).

This package provides functionality to:
- Do exact arithmetic in Q(gamma) with sign decisions by Sturm isolation
- Analyze oriented digraphs (second out-neighborhoods, Seymour ratios)
- Generate cycle powers, blow-ups, random digraphs and tournaments
- Check the CSP-A / CSP-B constraint systems and run the adjustment map
- Verify the algebraic certificate that CSP-B is infeasible at mu = gamma
- Maximize the objective over the CSP-B region and bisect on the threshold
- Run seeded property trials and write CSV / JSON / XLSX result tables

Example usage:
    from seymour_verifier import verify_all, cycle_power, best_seymour_ratio

    report = verify_all()
    assert report.passed

    vertex, ratio = best_seymour_ratio(cycle_power(7, 2))

Command-line usage:
    seymour verify-certificate --json --out cert.json
    seymour search threshold --w 56/45 --exact
"""

__version__ = "1.0.0"
__author__ = "pgaljan"
__email__ = "galjan@gmail.com"
__description__ = "Exact machine check that every oriented digraph has a gamma-Seymour vertex"
__url__ = "https://github.com/pgaljan/seymour-verifier"

from .certificate import MUTATIONS, CertificateReport, CheckResult, build_constants, verify_all
from .config import (
    DEFAULT_BRACKET, DEFAULT_SEED, DEFAULT_TOL, DEFAULT_W, DEFAULT_W_GRID, GAMMA_LOWER_BOUND,
)
from .csp import (
    AssignmentX, AssignmentY, CSPParams, adjust, check_csp_a, check_csp_b, eval_F,
    extract_assignment, from_y, to_y,
)
from .digraph import (
    OrientedDigraph, best_seymour_ratio, is_seymour, neighborhoods, partition_counts,
)
from .errors import (
    AdjustmentError, DigraphError, EndpointRootError, NoSignChangeError, PartitionError,
    PreconditionError, SeymourError,
)
from .field import GAMMA, P_GAMMA, Q_GAMMA, FieldElement, NumberField, approx, invert, sign_of
from .generators import GenSpec, blowup_cycle, cycle_power, generate, random_oriented, random_tournament
from .search import SearchConfig, maximize_F, scan_w, threshold
from .cli import main, show_help

__all__ = [
    # Main entry point
    "main",
    "show_help",

    # Field arithmetic
    "NumberField",
    "FieldElement",
    "P_GAMMA",
    "Q_GAMMA",
    "GAMMA",
    "invert",
    "sign_of",
    "approx",

    # Digraphs
    "OrientedDigraph",
    "neighborhoods",
    "is_seymour",
    "best_seymour_ratio",
    "partition_counts",
    "GenSpec",
    "generate",
    "cycle_power",
    "blowup_cycle",
    "random_oriented",
    "random_tournament",

    # Constraint systems
    "AssignmentX",
    "AssignmentY",
    "CSPParams",
    "eval_F",
    "check_csp_a",
    "check_csp_b",
    "adjust",
    "extract_assignment",
    "to_y",
    "from_y",

    # Certificate and search
    "verify_all",
    "build_constants",
    "CertificateReport",
    "CheckResult",
    "MUTATIONS",
    "SearchConfig",
    "maximize_F",
    "threshold",
    "scan_w",

    # Errors
    "SeymourError",
    "PreconditionError",
    "EndpointRootError",
    "DigraphError",
    "PartitionError",
    "AdjustmentError",
    "NoSignChangeError",

    # Package metadata
    "__version__",
    "__author__",
    "__email__",
    "__description__",
    "__url__",

    # Package-level configuration
    "DEFAULT_SEED",
    "DEFAULT_W",
    "DEFAULT_W_GRID",
    "DEFAULT_BRACKET",
    "DEFAULT_TOL",
    "GAMMA_LOWER_BOUND",
]


# Version check function
def check_dependencies():
    """
    Check if all required dependencies are available.

    Returns:
        dict: Status of each dependency
    """
    dependencies = {}
    for name in ('numpy', 'pandas', 'openpyxl'):
        try:
            module = __import__(name)
            dependencies[name] = {
                'available': True,
                'version': module.__version__
            }
        except ImportError:
            dependencies[name] = {
                'available': False,
                'version': None
            }
    return dependencies


__all__.append('check_dependencies')
