"""
Tests for edge lists, assignment files, JSON reports and result tables.
"""

import json
from fractions import Fraction

import pandas as pd
import pytest
from openpyxl import load_workbook

from seymour_verifier import __version__
from seymour_verifier.csp import AssignmentX
from seymour_verifier.errors import AssignmentFileError, EdgeListError, PreconditionError
from seymour_verifier.field import Q_GAMMA
from seymour_verifier.formats import (
    assignment_from_dict, assignment_to_dict, dump_json, exact_to_json, format_edge_list,
    fraction_to_str, parse_edge_list, parse_rational, read_assignment, read_edge_list,
    report_envelope, write_edge_list, write_table,
)
from seymour_verifier.generators import cycle_power


class TestEdgeLists:
    """The plain-text digraph format."""

    def test_header_comments_and_blank_lines(self):
        D = parse_edge_list("# a triangle\nn 4\n\n0 1   # first arc\n1 2\n2 0\n")
        assert D.n == 4
        assert list(D.arcs()) == [(0, 1), (1, 2), (2, 0)]

    def test_vertex_count_inferred_without_header(self):
        assert parse_edge_list("0 5\n").n == 6
        assert parse_edge_list("").n == 0

    @pytest.mark.parametrize("text, line, message", [
        ("0 1\nn 3\n", 2, "header"),
        ("n 3\nn 3\n", 2, "header"),
        ("n x\n", 1, "not an integer"),
        ("n 3\n0 1 2\n", 2, "expected 'u v'"),
        ("n 3\n0 a\n", 2, "integers"),
        ("n 3\n0 3\n", 2, "out of range"),
        ("n 3\n1 1\n", 2, "loop"),
        ("n 3\n0 1\n0 1\n", 3, "duplicate"),
        ("n 3\n0 1\n# comment\n1 0\n", 4, "digon"),
    ])
    def test_errors_carry_line_numbers(self, text, line, message):
        with pytest.raises(EdgeListError, match=message) as excinfo:
            parse_edge_list(text)
        assert excinfo.value.line == line
        assert str(excinfo.value).startswith(f"line {line}:")

    def test_file_round_trip(self, tmp_path):
        D = cycle_power(7, 2)
        path = tmp_path / "c7sq.txt"
        write_edge_list(D, path)
        assert path.read_text().startswith("n 7\n")
        assert read_edge_list(path) == D

    def test_fixture_file(self, c5_file):
        assert read_edge_list(c5_file) == cycle_power(5, 1)

    def test_isolated_vertices_survive(self):
        text = format_edge_list(parse_edge_list("n 5\n0 1\n"))
        assert text == "n 5\n0 1\n"


class TestRationals:
    """Exact scalars at the file boundary."""

    def test_fraction_to_str_always_writes_denominator(self):
        assert fraction_to_str(3) == "3/1"
        assert fraction_to_str(Fraction(-2, 4)) == "-1/2"

    def test_parse_rational(self):
        assert parse_rational("7/10") == Fraction(7, 10)
        assert parse_rational(" 3 ") == 3
        assert parse_rational(4) == 4

    @pytest.mark.parametrize("value", [0.5, True, "1/0", "half", None, [1]])
    def test_parse_rational_rejects(self, value):
        with pytest.raises(AssignmentFileError):
            parse_rational(value)

    def test_exact_to_json(self):
        assert exact_to_json(None) is None
        assert exact_to_json(Fraction(1, 3)) == "1/3"
        assert exact_to_json(float('inf')) == 'inf'
        assert exact_to_json(Q_GAMMA.gen) == {'coords': ['0/1', '1/1', '0/1', '0/1', '0/1']}


class TestAssignmentFiles:
    """JSON assignment files."""

    def test_missing_variables_default_to_zero(self):
        parsed = assignment_from_dict({'x': {'x11': '1/2'}})
        assert parsed.x == AssignmentX(x11=Fraction(1, 2))
        assert parsed.mu is None and parsed.w is None

    def test_mu_and_w(self, hand_assignment_file, hand_point):
        parsed = read_assignment(hand_assignment_file)
        assert parsed.mu == 1
        assert parsed.w == Fraction(11, 10)
        assert parsed.x == hand_point

    def test_rejects_floats(self):
        with pytest.raises(AssignmentFileError, match="x21"):
            assignment_from_dict({'x': {'x21': 0.4}})

    def test_rejects_unknown_variables(self):
        with pytest.raises(AssignmentFileError, match="x99"):
            assignment_from_dict({'x': {'x99': '1/1'}})

    def test_rejects_non_objects(self):
        with pytest.raises(AssignmentFileError):
            assignment_from_dict([1, 2])
        with pytest.raises(AssignmentFileError):
            assignment_from_dict({'x': ['1/1']})

    def test_invalid_json(self, assignment_factory):
        path = assignment_factory("{not json", "broken.json")
        with pytest.raises(AssignmentFileError, match="not valid JSON"):
            read_assignment(path)

    def test_to_dict_writes_every_variable(self):
        data = assignment_to_dict(AssignmentX(x32=Fraction(4, 5)), mu=1)
        assert data['mu'] == "1/1"
        assert 'w' not in data
        assert len(data['x']) == 11
        assert data['x']['x32'] == "4/5"
        assert assignment_from_dict(data).x == AssignmentX(x32=Fraction(4, 5))


class TestReports:
    """Report envelopes and deterministic JSON."""

    def test_envelope(self):
        data = report_envelope('analyze', {'n': 5}, seed=3)
        assert data == {'tool': 'seymour-verifier', 'version': __version__,
                        'command': 'analyze', 'seed': 3, 'n': 5}

    def test_dump_json_is_sorted(self):
        text = dump_json({'b': 1, 'a': 2})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith('\n')
        assert json.loads(text) == {'a': 2, 'b': 1}


class TestTables:
    """DataFrame export by extension."""

    @pytest.fixture
    def frame(self):
        return pd.DataFrame({'w': ['56/45', '6/5'], 'mu_star_float': [0.7155, 0.71]})

    def test_csv(self, frame, tmp_path):
        path = write_table(frame, tmp_path / "scan.csv")
        assert pd.read_csv(path)['w'].tolist() == ['56/45', '6/5']

    def test_json(self, frame, tmp_path):
        path = write_table(frame, tmp_path / "scan.json")
        records = json.loads(open(path, encoding='utf-8').read())
        assert records[0]['w'] == '56/45'

    def test_xlsx(self, frame, tmp_path):
        path = write_table(frame, tmp_path / "scan.xlsx")
        sheet = load_workbook(path).active
        assert [cell.value for cell in sheet[1]] == ['w', 'mu_star_float']
        assert sheet.cell(row=2, column=1).value == '56/45'
        print("✓ xlsx table written with openpyxl")

    def test_unsupported_suffix(self, frame, tmp_path):
        with pytest.raises(PreconditionError, match="unsupported table format"):
            write_table(frame, tmp_path / "scan.parquet")
