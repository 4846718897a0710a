"""
pytest configuration and shared fixtures for seymour_verifier tests.

Session fixtures write small edge-list and assignment files into
tests/fixtures/ once; factory fixtures build ad-hoc files per test.
"""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from seymour_verifier.csp import AssignmentX, CSPParams
from seymour_verifier.digraph import OrientedDigraph
from seymour_verifier.formats import assignment_to_dict, format_edge_list
from seymour_verifier.generators import cycle_power


# Test data directory paths
TEST_DIR = Path(__file__).parent
FIXTURES_DIR = TEST_DIR / "fixtures"

# A strictly A-feasible point at mu = 1, w = 11/10 (F = 7/40), small enough
# to push through adjust by hand.
HAND_POINT = {
    'x11': Fraction(1),
    'x21': Fraction(2, 5),
    'x22': Fraction(1, 2),
    'x32': Fraction(4, 5),
}
HAND_PARAMS = CSPParams(Fraction(1), Fraction(11, 10))


@pytest.fixture(scope="session")
def fixtures_dir():
    """Provide path to test fixtures directory."""
    FIXTURES_DIR.mkdir(parents=True, exist_ok=True)
    return FIXTURES_DIR


def _write_edge_list(path: Path, D: OrientedDigraph) -> str:
    if not path.exists():
        path.write_text(format_edge_list(D), encoding='utf-8')
    return str(path)


@pytest.fixture(scope="session")
def c3_file(fixtures_dir):
    """Directed triangle 0 -> 1 -> 2 -> 0."""
    return _write_edge_list(fixtures_dir / "c3.txt", cycle_power(3, 1))


@pytest.fixture(scope="session")
def c5_file(fixtures_dir):
    """Directed 5-cycle."""
    return _write_edge_list(fixtures_dir / "c5.txt", cycle_power(5, 1))


@pytest.fixture(scope="session")
def c7_square_file(fixtures_dir):
    """Square of the directed 7-cycle (arcs i -> i+1, i+2)."""
    return _write_edge_list(fixtures_dir / "c7_square.txt", cycle_power(7, 2))


@pytest.fixture(scope="session")
def hand_assignment_file(fixtures_dir):
    """Assignment file holding HAND_POINT with mu and w."""
    path = fixtures_dir / "hand_point.json"
    if not path.exists():
        data = assignment_to_dict(AssignmentX(**HAND_POINT), HAND_PARAMS.mu, HAND_PARAMS.w)
        path.write_text(json.dumps(data, indent=2), encoding='utf-8')
    return str(path)


@pytest.fixture
def hand_point():
    return AssignmentX(**HAND_POINT)


@pytest.fixture
def hand_params():
    return HAND_PARAMS


@pytest.fixture
def edge_list_factory(tmp_path):
    """Write edge-list text to a temporary file and return its path."""
    def _make(text, name="graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _make


@pytest.fixture
def assignment_factory(tmp_path):
    """Write an assignment dictionary (or raw text) to a temporary JSON file."""
    def _make(data, name="assignment.json"):
        path = tmp_path / name
        text = data if isinstance(data, str) else json.dumps(data, indent=2)
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _make


@pytest.fixture
def arc_digraph():
    """Arcs 0->1, 0->2, 1->2, 2->3, used for weighted-minimizer tie-breaks."""
    return OrientedDigraph.from_arcs(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
