"""
File formats: edge lists, JSON assignment files, JSON reports and result tables.

Exact values cross the file boundary as "p/q" strings, never as floats.
Decimal approximations only appear in fields whose name says so.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

import pandas as pd

from . import __version__
from .csp import AssignmentX
from .digraph import OrientedDigraph
from .errors import AssignmentFileError, EdgeListError, PreconditionError
from .field import FieldElement

TOOL_NAME = 'seymour-verifier'


def fraction_to_str(value) -> str:
    """Canonical "p/q" text for an exact rational (the denominator is always written)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value, what: str = 'value') -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise AssignmentFileError(f"{what} must be an exact rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise AssignmentFileError(f"{what} must be a \"p/q\" string, got {type(value).__name__}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise AssignmentFileError(f"{what}: cannot parse {value!r} as a rational") from e


def exact_to_json(value):
    """JSON-ready form of an exact scalar: "p/q" for rationals, coordinates for field elements."""
    if value is None:
        return None
    if isinstance(value, FieldElement):
        return {'coords': [fraction_to_str(c) for c in value.coords]}
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return fraction_to_str(value)
    if isinstance(value, float):
        return 'inf' if value == float('inf') else value
    return str(value)


# Edge lists

def parse_edge_list(text: str) -> OrientedDigraph:
    """Parse "u v" arc lines with an optional leading "n <count>" header and '#' comments."""
    n: Optional[int] = None
    arcs: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == 'n':
            if n is not None or arcs:
                raise EdgeListError("the 'n <count>' header must appear once, before any arc", lineno)
            if len(parts) != 2:
                raise EdgeListError(f"malformed header {line!r}", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise EdgeListError(f"vertex count {parts[1]!r} is not an integer", lineno)
            if n < 0:
                raise EdgeListError("vertex count must be nonnegative", lineno)
            continue
        if len(parts) != 2:
            raise EdgeListError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"vertex indices must be integers, got {line!r}", lineno)
        if u < 0 or v < 0 or (n is not None and (u >= n or v >= n)):
            raise EdgeListError(f"arc ({u}, {v}) is out of range", lineno)
        if u == v:
            raise EdgeListError(f"loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise EdgeListError(f"duplicate arc ({u}, {v})", lineno)
        if (v, u) in seen:
            raise EdgeListError(f"digon between {u} and {v}", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    if n is None:
        n = 1 + max((max(a) for a in arcs), default=-1)
    return OrientedDigraph.from_arcs(n, arcs)


def format_edge_list(D: OrientedDigraph) -> str:
    lines = [f"n {D.n}"] + [f"{u} {v}" for u, v in D.arcs()]
    return '\n'.join(lines) + '\n'


def read_edge_list(path) -> OrientedDigraph:
    return parse_edge_list(Path(path).read_text(encoding='utf-8'))


def write_edge_list(D: OrientedDigraph, path):
    try:
        Path(path).write_text(format_edge_list(D), encoding='utf-8')
    except OSError as e:
        raise OSError(f"Error writing edge list '{path}': {e}") from e


# Assignment files

@dataclass(frozen=True)
class AssignmentFile:
    x: AssignmentX
    mu: Optional[Fraction] = None
    w: Optional[Fraction] = None


def assignment_from_dict(data) -> AssignmentFile:
    if not isinstance(data, dict):
        raise AssignmentFileError("assignment file must hold a JSON object")
    raw_x = data.get('x', {})
    if not isinstance(raw_x, dict):
        raise AssignmentFileError("'x' must be an object mapping x11..x34 to \"p/q\" strings")
    names = AssignmentX.names()
    unknown = sorted(set(raw_x) - set(names))
    if unknown:
        raise AssignmentFileError(f"unknown variable(s): {', '.join(unknown)}")
    values = {name: parse_rational(raw_x.get(name, '0/1'), name) for name in names}
    mu = parse_rational(data['mu'], 'mu') if data.get('mu') is not None else None
    w = parse_rational(data['w'], 'w') if data.get('w') is not None else None
    return AssignmentFile(AssignmentX(**values), mu, w)


def assignment_to_dict(x: AssignmentX, mu=None, w=None) -> Dict:
    data = {}
    if mu is not None:
        data['mu'] = fraction_to_str(mu)
    if w is not None:
        data['w'] = fraction_to_str(w)
    data['x'] = {name: fraction_to_str(value) for name, value in x.as_dict().items()}
    return data


def read_assignment(path) -> AssignmentFile:
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise AssignmentFileError(f"'{path}' is not valid JSON: {e}") from e
    return assignment_from_dict(data)


def write_assignment(path, x: AssignmentX, mu=None, w=None):
    write_json(path, assignment_to_dict(x, mu, w))


# Reports

def report_envelope(command: str, payload: Dict, seed=None) -> Dict:
    """Wrap a command's payload with the tool name, version and seed."""
    return {
        'tool': TOOL_NAME,
        'version': __version__,
        'command': command,
        'seed': seed,
        **payload,
    }


def certificate_report_dict(report, seed=None) -> Dict:
    checks = [
        {
            'name': c.name,
            'kind': c.kind,
            'passed': c.passed,
            'reference': c.reference,
            'detail': c.detail,
            'value': exact_to_json(c.value),
            'approx_decimal': c.approx,
        }
        for c in report.checks
    ]
    return report_envelope('verify-certificate', {
        'passed': report.passed,
        'mutation': report.mutation,
        'conclusion': report.conclusion,
        'checks': checks,
    }, seed)


def constraint_report_dict(report) -> Dict:
    return {
        'system': report.system,
        'satisfied': report.satisfied,
        'failed_constraints': report.failed_labels(),
        'records': [
            {'label': r.label, 'name': r.name, 'kind': r.kind,
             'satisfied': r.satisfied, 'slack': exact_to_json(r.slack)}
            for r in report.records
        ],
    }


def dump_json(data) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def write_json(path, data):
    try:
        Path(path).write_text(dump_json(data), encoding='utf-8')
    except OSError as e:
        raise OSError(f"Error writing JSON file '{path}': {e}") from e


def write_table(frame: pd.DataFrame, path) -> str:
    """Write a DataFrame as .csv, .json (records) or .xlsx (openpyxl), chosen by extension."""
    path = Path(path)
    suffix = path.suffix.lower()
    try:
        if suffix == '.csv':
            frame.to_csv(path, index=False)
        elif suffix == '.json':
            frame.to_json(path, orient='records', indent=2)
        elif suffix == '.xlsx':
            frame.to_excel(path, index=False, engine='openpyxl')
        else:
            raise PreconditionError(f"unsupported table format '{suffix}' (use .csv, .json or .xlsx)")
    except OSError as e:
        raise OSError(f"Error writing table '{path}': {e}") from e
    return str(path)
