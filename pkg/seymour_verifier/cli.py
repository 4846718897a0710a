"""
Seymour Verifier command line interface.

Subcommands verify the exact certificate, analyze and generate digraphs,
check and adjust CSP assignments, search for the mu-threshold and run the
seeded property harness. Exit codes: 0 success, 1 a mathematical check
failed, 2 bad input or usage.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from .certificate import MUTATIONS, mutation_by_name, verify_all
from .config import (
    DEFAULT_BRACKET, DEFAULT_ITERATIONS, DEFAULT_SEED, DEFAULT_STARTS, DEFAULT_TOL,
    DEFAULT_TRIALS, DEFAULT_W, DEFAULT_W_GRID, GAMMA_LOWER_BOUND,
)
from .csp import CSPParams, adjust, check_csp_a, check_csp_b, eval_F, extract_assignment
from .digraph import best_seymour_ratio, is_seymour, vertex_stats_frame
from .errors import AdjustmentError, NoSignChangeError, SeymourError
from .formats import (
    assignment_to_dict, certificate_report_dict, constraint_report_dict, dump_json,
    exact_to_json, format_edge_list, fraction_to_str, read_assignment, read_edge_list,
    report_envelope, write_assignment, write_edge_list, write_json, write_table,
)
from .generators import GenSpec, generate
from .harness import property_failures, run_property_trials
from .search import (
    FEASIBLE_POSITIVE, SearchConfig, certify_witness, maximize_F, scan_w, threshold,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

FAMILY_NAMES = {
    'cycle': 'cycle',
    'cycle-power': 'cycle_power',
    'blowup-cycle': 'blowup_cycle',
    'random': 'random_oriented',
    'tournament': 'tournament',
}


def rational(text: str) -> Fraction:
    """argparse type for exact rationals written as p/q or a finite decimal."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"'{text}' is not an exact rational (use p/q)")


def rational_list(text: str) -> List[Fraction]:
    return [rational(part) for part in text.split(',') if part.strip()]


def show_help():
    """Display help information."""
    help_text = """
Seymour Verifier - exact machine check that every oriented digraph has a gamma-Seymour vertex

USAGE:
    seymour <command> [OPTIONS]

COMMANDS:
    verify-certificate              Check the exact certificate in Q(gamma)
    analyze --input FILE            Neighborhood statistics, selection and cell counts of a digraph
    gen --family FAMILY --n N       Generate a digraph edge list
    csp {check-a,check-b,adjust}    Check or adjust a JSON assignment file
    search {threshold,scan-w,witness}
                                    Maximize F over the CSP-B region and locate the mu-threshold
    property-test                   Seeded property trials on random digraphs and tournaments
    -help                           Show this help message

COMMON OPTIONS:
    -v, -vv            Log progress (INFO) or every step (DEBUG) to stderr
    --json             Print a JSON report instead of text
    --out FILE         Write the command's main artifact to FILE
    --table FILE       Write a result table (.csv, .json or .xlsx)

EXAMPLES:
    seymour verify-certificate                       # all certificate checks, exit 0 when verified
    seymour verify-certificate --json --out cert.json
    seymour gen --family cycle-power --n 7 --k 2 --out c7sq.txt
    seymour gen --family random --n 20 --p 3/10 --seed 42
    seymour analyze --input c7sq.txt --w 56/45 --table stats.xlsx
    seymour csp check-b --input point.json --mu 73/100 --w 56/45
    seymour csp adjust --input point.json --out adjusted.json
    seymour search threshold --w 56/45 --lo 13/20 --hi 4/5 --tol 1/1000 --exact
    seymour search scan-w --grid 21/20,11/10,23/20 --exact --table scan.csv
    seymour search witness --mu 73/100 --w 56/45 --exact --out witness.json
    seymour property-test --trials 200 --n 50 --p 1/5,1/2,4/5 --seed 7 --w 1,56/45

FILE FORMATS:
    Edge list:   optional header "n <count>", then one arc "u v" per line (0-based);
                 lines starting with '#' are comments
    Assignment:  {"mu": "p/q", "w": "p/q", "x": {"x11": "p/q", ..., "x34": "p/q"}}
                 missing variables default to "0/1"
    Reports:     JSON with tool version, seed, check names, pass flags, exact values
                 as "p/q" strings or coordinate vectors, and approx_decimal fields

EXIT CODES:
    0   all checks passed / command succeeded
    1   a mathematical check failed
    2   input or usage error

PYTHON DEPENDENCIES:
    - numpy          (pip install numpy) - float-mode search
    - pandas         (pip install pandas) - result tables
    - openpyxl       (pip install openpyxl) - .xlsx tables
    - Standard library: argparse, fractions, json, logging, pathlib
"""
    print(help_text)


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    logging.getLogger('seymour_verifier').setLevel(level)


def _emit(args, command: str, payload, seed=None, text_lines=()):
    """Print a JSON report or text lines, and write the report to --out if requested."""
    report = report_envelope(command, payload, seed)
    if getattr(args, 'json', False):
        sys.stdout.write(dump_json(report))
    else:
        for line in text_lines:
            print(line)
    out = getattr(args, 'report_out', None)
    if out:
        write_json(out, report)
        print(f"Report successfully exported to: {out}")


def _table(args, frame):
    if getattr(args, 'table', None):
        path = write_table(frame, args.table)
        print(f"Table successfully exported to: {path}")
        print(f"Total rows exported: {len(frame)}")


# verify-certificate

def cmd_verify_certificate(args) -> int:
    mutation = mutation_by_name(args.mutation) if args.mutation else None
    report = verify_all(mutation=mutation)
    payload = certificate_report_dict(report)
    if args.json:
        sys.stdout.write(dump_json(payload))
    else:
        for check in report.checks:
            status = 'PASS' if check.passed else 'FAIL'
            approx_text = f"  ~ {check.approx}" if check.approx is not None else ''
            print(f"[{status}] {check.kind:<8} {check.name}{approx_text}")
            if check.detail and not check.passed:
                print(f"         {check.detail}")
        passed = sum(1 for c in report.checks if c.passed)
        print(f"Total checks passed: {passed}/{len(report.checks)}")
        print(report.conclusion)
    if args.out:
        write_json(args.out, payload)
        print(f"Report successfully exported to: {args.out}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# analyze

def cmd_analyze(args) -> int:
    D = read_edge_list(args.input)
    mu = args.mu if args.mu is not None else GAMMA_LOWER_BOUND
    w = args.w if args.w is not None else DEFAULT_W
    vertex, ratio = best_seymour_ratio(D)
    seymour_vertices = [u for u in range(D.n) if is_seymour(D, u, mu)]
    payload = {
        'n': D.n,
        'arcs': D.arc_count,
        'mu': fraction_to_str(mu),
        'w': fraction_to_str(w),
        'best_vertex': vertex,
        'best_ratio': exact_to_json(ratio),
        'seymour_vertices': len(seymour_vertices),
    }
    lines = [
        f"Digraph: {D.n} vertices, {D.arc_count} arcs",
        f"Best ratio d++/d+: {exact_to_json(ratio)} at vertex {vertex}",
        f"Vertices with d++ >= {fraction_to_str(mu)} d+: {len(seymour_vertices)}",
    ]
    if D.n and D.min_out_degree() >= 1:
        selection, x = extract_assignment(D, w)
        payload['selection'] = {'u': selection.u, 'v': selection.v}
        payload['counts'] = {k: fraction_to_str(v) for k, v in x.as_dict().items()}
        payload['F'] = fraction_to_str(eval_F(x, w))
        counts_text = ', '.join(f"{k}={v.numerator}" for k, v in x.as_dict().items() if v)
        lines += [
            f"Selection: u={selection.u}, v={selection.v}",
            f"Cell counts: {counts_text or 'all zero'}",
            f"F = {fraction_to_str(eval_F(x, w))}",
        ]
    else:
        payload['selection'] = None
        lines.append("Selection: skipped (a vertex has out-degree 0)")
    _emit(args, 'analyze', payload, text_lines=lines)
    _table(args, vertex_stats_frame(D))
    return EXIT_OK if seymour_vertices else EXIT_CHECK_FAILED


# gen

def cmd_gen(args) -> int:
    spec = GenSpec(FAMILY_NAMES[args.family], n=args.n, k=args.k, t=args.t, p=args.p, seed=args.seed)
    D = generate(spec)
    if args.out:
        write_edge_list(D, args.out)
        print(f"Digraph successfully exported to: {args.out}")
        print(f"Total arcs exported: {D.arc_count}")
    else:
        sys.stdout.write(format_edge_list(D))
    return EXIT_OK


# csp

def _params(args, loaded) -> CSPParams:
    mu = args.mu if args.mu is not None else loaded.mu
    w = args.w if args.w is not None else loaded.w
    if mu is None or w is None:
        raise SeymourError("mu and w must be given in the assignment file or with --mu/--w")
    return CSPParams(mu, w)


def cmd_csp(args) -> int:
    loaded = read_assignment(args.input)
    params = _params(args, loaded)
    if args.action in ('check-a', 'check-b'):
        checker = check_csp_a if args.action == 'check-a' else check_csp_b
        report = checker(loaded.x, params)
        lines = [
            f"[{'PASS' if r.satisfied else 'FAIL'}] ({r.label}) {r.name}  slack {fraction_to_str(r.slack)}"
            for r in report.records
        ]
        if report.satisfied:
            lines.append(f"CSP-{report.system} satisfied")
        else:
            lines.append(f"CSP-{report.system} violated: constraint(s) {', '.join(report.failed_labels())}")
        _emit(args, f"csp {args.action}", constraint_report_dict(report), text_lines=lines)
        return EXIT_OK if report.satisfied else EXIT_CHECK_FAILED

    adjusted, trace = adjust(loaded.x, params)
    steps = [
        {'name': s.name, 'delta': fraction_to_str(s.delta),
         'f_before': fraction_to_str(s.f_before), 'f_after': fraction_to_str(s.f_after)}
        for s in trace
    ]
    lines = [f"{s['name']:<18} delta {s['delta']:<14} F {s['f_before']} -> {s['f_after']}" for s in steps]
    payload = {'steps': steps, 'result': assignment_to_dict(adjusted, params.mu, params.w)}
    _emit(args, 'csp adjust', payload, text_lines=lines)
    if args.out:
        write_assignment(args.out, adjusted, params.mu, params.w)
        print(f"Assignment successfully exported to: {args.out}")
    return EXIT_OK


# search

def _search_config(args) -> SearchConfig:
    return SearchConfig(
        mode='exact' if args.exact else 'float',
        starts=args.starts,
        seed=args.seed,
        iterations=args.iterations,
    )


def cmd_search(args) -> int:
    config = _search_config(args)
    w = args.w if args.w is not None else DEFAULT_W
    if args.action == 'threshold':
        result = threshold(w, args.lo, args.hi, args.tol, config)
        payload = {
            'mode': config.mode,
            'w': fraction_to_str(w),
            'mu_star': fraction_to_str(result.mu_star),
            'mu_star_approx_decimal': f"{float(result.mu_star):.6f}",
            'bracket': [fraction_to_str(b) for b in result.bracket],
            'tol': fraction_to_str(result.tol),
            'evaluations': result.evaluations,
        }
        lines = [
            f"Threshold for w = {fraction_to_str(w)} ({config.mode} mode)",
            f"mu* ~ {float(result.mu_star):.6f} in [{float(result.bracket[0]):.6f}, {float(result.bracket[1]):.6f}]",
        ]
        _emit(args, 'search threshold', payload, seed=config.seed, text_lines=lines)
        return EXIT_OK

    if args.action == 'scan-w':
        grid = args.grid or list(DEFAULT_W_GRID)
        result = scan_w(grid, (args.lo, args.hi), args.tol, config)
        payload = {
            'mode': config.mode,
            'best_w': fraction_to_str(result.best_w),
            'best_mu_star': fraction_to_str(result.best_mu),
            'rows': result.table[['w', 'mu_star']].to_dict(orient='records'),
        }
        lines = [result.table.to_string(index=False),
                 f"Best w: {fraction_to_str(result.best_w)} (mu* ~ {float(result.best_mu):.6f})"]
        _emit(args, 'search scan-w', payload, seed=config.seed, text_lines=lines)
        _table(args, result.table)
        return EXIT_OK

    if args.mu is None:
        raise SeymourError("search witness needs --mu")
    result = maximize_F(args.mu, w, config)
    payload = {
        'mode': config.mode,
        'mu': fraction_to_str(args.mu),
        'w': fraction_to_str(w),
        'status': result.status,
        'method': result.method,
        'heuristic': result.heuristic,
        'max_value': exact_to_json(result.max_value),
        'witness': assignment_to_dict(result.witness) if result.witness is not None else None,
    }
    lines = [f"Status: {result.status} ({result.method})", f"max F: {exact_to_json(result.max_value)}"]
    _emit(args, 'search witness', payload, seed=config.seed, text_lines=lines)
    if args.out and result.witness is not None:
        write_assignment(args.out, result.witness, args.mu, w)
        print(f"Witness successfully exported to: {args.out}")
    certified = (result.status == FEASIBLE_POSITIVE and result.witness is not None
                 and certify_witness(result.witness, args.mu, w))
    return EXIT_OK if certified else EXIT_CHECK_FAILED


# property-test

def cmd_property_test(args) -> int:
    weights = args.w or [Fraction(1), DEFAULT_W]
    frame = run_property_trials(args.trials, args.n, args.p, args.seed, weights,
                                tournaments=args.tournaments, max_tournament_n=args.tournament_n)
    failures = property_failures(frame)
    payload = {
        'trials': args.trials,
        'tournaments': args.tournaments,
        'rows': len(frame),
        'failures': failures,
        'f_applicable': int(frame['f_applicable'].sum()),
    }
    lines = [f"Total rows checked: {len(frame)}"] + [
        f"[{'PASS' if count == 0 else 'FAIL'}] {name}: {count} failure(s)" for name, count in failures.items()
    ]
    _emit(args, 'property-test', payload, seed=args.seed, text_lines=lines)
    _table(args, frame)
    return EXIT_OK if not any(failures.values()) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='Increase log verbosity')

    parser = argparse.ArgumentParser(prog='seymour', description='Exact Seymour-vertex verification toolkit')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify-certificate', parents=[common], help='Check the exact certificate')
    p.add_argument('--json', action='store_true', help='Print the JSON report')
    p.add_argument('--out', help='Write the JSON report to this file')
    p.add_argument('--mutation', choices=[m.name for m in MUTATIONS], help='Apply a named mutation')
    p.set_defaults(handler=cmd_verify_certificate)

    p = sub.add_parser('analyze', parents=[common], help='Analyze an edge-list digraph')
    p.add_argument('--input', required=True, help='Edge-list file')
    p.add_argument('--mu', type=rational, help='Seymour factor (default 715538/1000000)')
    p.add_argument('--w', type=rational, help='Weighting factor for the selection (default 56/45)')
    p.add_argument('--json', action='store_true', help='Print the JSON report')
    p.add_argument('--out', dest='report_out', help='Write the JSON report to this file')
    p.add_argument('--table', help='Write per-vertex statistics (.csv, .json, .xlsx)')
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser('gen', parents=[common], help='Generate a digraph')
    p.add_argument('--family', required=True, choices=sorted(FAMILY_NAMES))
    p.add_argument('--n', type=int, required=True, help='Vertex count (cycle length for blowup-cycle)')
    p.add_argument('--k', type=int, default=1, help='Power for cycle-power')
    p.add_argument('--t', type=int, default=1, help='Blow-up factor')
    p.add_argument('--p', type=rational, default=Fraction(1, 2), help='Arc probability for random')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--out', help='Edge-list output file (default: stdout)')
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser('csp', parents=[common], help='Check or adjust an assignment')
    p.add_argument('action', choices=['check-a', 'check-b', 'adjust'])
    p.add_argument('--input', required=True, help='JSON assignment file')
    p.add_argument('--mu', type=rational)
    p.add_argument('--w', type=rational)
    p.add_argument('--json', action='store_true')
    p.add_argument('--out', help='Adjusted assignment output file')
    p.set_defaults(handler=cmd_csp)

    p = sub.add_parser('search', parents=[common], help='Maximize F and find the threshold')
    p.add_argument('action', choices=['threshold', 'scan-w', 'witness'])
    p.add_argument('--w', type=rational, help='Weighting factor (default 56/45)')
    p.add_argument('--lo', type=rational, default=DEFAULT_BRACKET[0])
    p.add_argument('--hi', type=rational, default=DEFAULT_BRACKET[1])
    p.add_argument('--tol', type=rational, default=DEFAULT_TOL)
    p.add_argument('--mu', type=rational, help='mu for the witness search')
    p.add_argument('--exact', action='store_true', help='Exact face enumeration instead of float multistart')
    p.add_argument('--starts', type=int, default=DEFAULT_STARTS)
    p.add_argument('--iterations', type=int, default=DEFAULT_ITERATIONS)
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--grid', type=rational_list, help='Comma-separated w values for scan-w')
    p.add_argument('--json', action='store_true')
    p.add_argument('--table', help='Write the scan table (.csv, .json, .xlsx)')
    p.add_argument('--out', help='Witness assignment output file')
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser('property-test', parents=[common], help='Seeded property trials')
    p.add_argument('--trials', type=int, default=DEFAULT_TRIALS)
    p.add_argument('--n', type=int, default=50, help='Largest vertex count')
    p.add_argument('--p', type=rational_list, default=[Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)])
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--w', type=rational_list, help='Comma-separated weights (default 1,56/45)')
    p.add_argument('--tournaments', type=int, default=0, help='Number of random tournaments')
    p.add_argument('--tournament-n', type=int, default=30, help='Largest tournament size')
    p.add_argument('--json', action='store_true')
    p.add_argument('--table', help='Write per-trial rows (.csv, .json, .xlsx)')
    p.set_defaults(handler=cmd_property_test)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch the subcommand and return the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or '-help' in argv:
        show_help()
        return EXIT_OK
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (AdjustmentError, NoSignChangeError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (SeymourError, OSError, ValueError, KeyError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
