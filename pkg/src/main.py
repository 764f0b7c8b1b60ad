#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Main entry point for the Wakimoto complex toolkit.

This module parses the command line, sets up logging, loads the JSON
configuration and dispatches to the subcommands. Results go to stdout,
logs to stderr.
"""

import sys
import os
import json
import argparse
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence

# Add the project root directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.charzero import char0_ext_table, expected_char0_row
from src.dg import build_B, build_tilde_C, check_d_squared, complex_summary, dump_json, full_gamma_truncation, to_dot
from src.exceptions import WakimotoError
from src.homology import cohomology
from src.predict import formatted_ext_table, h_rows, verify_theorem
from src.qnum import cyclotomic, pascal_triangle, qbinomial, qnum
from src.reduce import block_report, blocks_to_dot, reduce_B
from src.ring import Specialization, format_poly
from src.shrub import brute_force_count, enumerate_shrubberies, euler_check, format_shrubbery, predicates
from src.tables import char0_frame, ext_frame, h_rows_frame, pascal_frame, records_frame, render, report_frame
from src.utils.config_loader import load_all_configs
from src.utils.logger import setup_logger

# Logger setup
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Raised instead of exiting when argparse rejects the command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_point(text: str) -> List[int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a point 'x,y', got {text!r}")
    return [x, y]


def make_specialization(target: str, point: Sequence[int], p: Optional[int] = None) -> Specialization:
    x, y = point
    if target == "GF":
        return Specialization.modular(p, x, y)
    if target == "QQ":
        return Specialization.rationals(x, y)
    return Specialization.integers(x, y)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wakimoto", description="Exact computations with reduced Wakimoto complexes")
    parser.add_argument('--config', help='Directory with computation.json and verification.json')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    parser.add_argument('--quiet', action='store_true', help='Only log warnings and errors')
    parser.add_argument('--jobs', type=int, help='Worker threads for batch commands')
    parser.add_argument('--format', choices=['text', 'json', 'csv', 'dot'], default='text', help='Output format')
    parser.add_argument('--weight', choices=['distinct', 'block'], help='Placement weight rule')
    parser.add_argument('--rule', choices=['right', 'left'], help='Leibniz sign convention')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('qnum', help='Two-color quantum number [n]')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--color', choices=['x', 'y'], default='x')

    p = sub.add_parser('qbinom', help='Two-color quantum binomial [n; k]')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--color', choices=['x', 'y'], default='y')

    p = sub.add_parser('cyclo', help='Two-color cyclotomic polynomial')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--color', choices=['x', 'y'], default='y')

    p = sub.add_parser('pascal', help='Cyclotomic factorization of the quantum Pascal triangle')
    p.add_argument('--rows', type=int)

    p = sub.add_parser('dg', help='Build, draw or check complexes')
    p.add_argument('action', choices=['build', 'dot', 'check'])
    p.add_argument('--n', type=int, help='Index of the antispherical complex')
    p.add_argument('--m', type=int, help='Summand B_m of the antispherical complex')
    p.add_argument('--full', action='store_true', help='Use the non-antispherical complex')
    p.add_argument('--reduced', action='store_true', help='Gamma transform and rescale B_m')
    p.add_argument('--truncation', type=int, help='Check the full generator truncation up to this total')

    for name, helptext in (('cohomology', 'Cohomology of the antispherical complex'),
                           ('verify', 'Compare direct cohomology with the prediction')):
        p = sub.add_parser(name, help=helptext)
        p.add_argument('--n', type=int)
        p.add_argument('--spec', type=parse_point, help='Point x,y')
        p.add_argument('--target', choices=['ZZ', 'QQ', 'GF'], default='ZZ')
        p.add_argument('--p', type=int, help='Characteristic for GF')
        if name == 'verify':
            p.add_argument('--all', action='store_true', help='All n and specializations from the configuration')
            p.add_argument('--sabotage', action='store_true', help='Shift the prediction by one degree')

    p = sub.add_parser('predict', help='Predicted cohomology tables')
    p.add_argument('--rows', type=int, help='Last row of the Ext table')
    p.add_argument('--h-rows', type=int, dest='h_rows', help='Shifted H_k rows for this n')

    p = sub.add_parser('char0', help='Characteristic-zero Ext tables')
    p.add_argument('action', choices=['table'])
    p.add_argument('--n-max', type=int, dest='n_max')
    p.add_argument('--cutoff', type=int)
    p.add_argument('--start', choices=['s', 't'], default='t')
    p.add_argument('--point', type=parse_point)
    p.add_argument('--clearing', choices=['lcm', 'product'], default='lcm')
    p.add_argument('--expected', action='store_true', help='Print the closed-form rows instead')

    p = sub.add_parser('shrub', help='Shrubbery enumeration and checks')
    p.add_argument('action', choices=['enum', 'check'])
    p.add_argument('--length', type=int, required=True)
    p.add_argument('--blue', action='store_true', help='Blue shrubberies only')
    p.add_argument('--all', action='store_true', help='Keep shrubberies with empty arches')
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(data: Any) -> None:
    _emit(json.dumps(data, indent=2))


def _map(jobs: int, func: Callable, items: Sequence) -> List:
    if jobs <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))


def cmd_poly(args, configs: Dict[str, Any]) -> int:
    if args.command == 'qnum':
        value = qnum(args.n, args.color)
    elif args.command == 'qbinom':
        value = qbinomial(args.n, args.k, args.color)
    else:
        value = cyclotomic(args.n, args.color)
    if args.format == 'json':
        _emit_json({"command": args.command, "value": format_poly(value)})
    else:
        _emit(format_poly(value))
    return EXIT_OK


def cmd_pascal(args, configs: Dict[str, Any]) -> int:
    rows = args.rows or configs["verification"]["pascal_rows"]
    _emit(render(pascal_frame(pascal_triangle(rows)), _table_format(args)))
    return EXIT_OK


def cmd_dg(args, configs: Dict[str, Any]) -> int:
    rule = args.rule or configs["computation"]["leibniz_rule"]
    if args.action == 'check' and args.truncation is not None:
        c = full_gamma_truncation(args.truncation, rule)
    elif args.m is not None:
        c = build_B(args.m, rule)
    elif args.n is not None:
        c = build_tilde_C(args.n, not args.full, rule)
    else:
        raise UsageError("dg needs --n, --m or --truncation")

    if args.action == 'check':
        ok = check_d_squared(c)
        _emit(f"{c.name}: d^2 = 0" if ok else f"{c.name}: d^2 != 0")
        return EXIT_OK if ok else EXIT_MISMATCH

    if args.reduced:
        if args.m is None:
            raise UsageError("--reduced needs --m")
        blocks = reduce_B(c, args.m, rule, configs["computation"]["identity_grid_margin"])
        if args.action == 'dot' or args.format == 'dot':
            _emit(blocks_to_dot(blocks, name=f"B{args.m}_reduced"))
        else:
            _emit_json(block_report(blocks))
        return EXIT_OK

    if args.action == 'dot' or args.format == 'dot':
        _emit(to_dot(c))
    elif args.format == 'json':
        _emit(dump_json(c))
    else:
        _emit_json(complex_summary(c))
    return EXIT_OK


def _specialization(args, configs: Dict[str, Any]) -> Specialization:
    point = args.spec or configs["computation"]["default_point"]
    if args.target == 'GF' and args.p is None:
        raise UsageError("--target GF needs --p")
    return make_specialization(args.target, point, args.p)


def cmd_cohomology(args, configs: Dict[str, Any]) -> int:
    if args.n is None:
        raise UsageError("cohomology needs --n")
    rule = args.rule or configs["computation"]["leibniz_rule"]
    report = cohomology(build_tilde_C(args.n, True, rule), _specialization(args, configs))
    if args.format == 'json':
        _emit_json(report.to_json())
    else:
        _emit(render(report_frame(report), _table_format(args)))
    return EXIT_OK


def _verification_jobs(args, configs: Dict[str, Any]) -> List[tuple]:
    if args.all:
        verification = configs["verification"]
        specs = [make_specialization(e["target"], e.get("point", [2, 2]), e.get("p"))
                 for e in verification["specializations"]]
        return [(n, s) for n in range(1, verification["n_max"] + 1) for s in specs]
    if args.n is None:
        raise UsageError("verify needs --n or --all")
    return [(args.n, _specialization(args, configs))]


def cmd_verify(args, configs: Dict[str, Any]) -> int:
    computation = configs["computation"]
    weight = args.weight or computation["weight_rule_verify"]
    rule = args.rule or computation["leibniz_rule"]
    jobs = args.jobs or computation["jobs"]
    results = _map(jobs, lambda job: verify_theorem(job[0], job[1], weight, rule, args.sabotage),
                   _verification_jobs(args, configs))
    if args.format == 'json':
        _emit_json([r.to_json() for r in results])
    else:
        lines = []
        for r in results:
            lines.append(f"n={r.n} {r.specialization.describe()}: {'ok' if r.ok else 'MISMATCH'}")
            for degree, (predicted, computed) in r.diff.items():
                lines.append(f"  degree {degree}: predicted {predicted}, computed {computed}")
        _emit("\n".join(lines))
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def cmd_predict(args, configs: Dict[str, Any]) -> int:
    weight = args.weight or configs["computation"]["weight_rule_predict"]
    if args.h_rows is not None:
        df = h_rows_frame(h_rows(args.h_rows, weight))
    else:
        rows = configs["verification"]["table_rows"] if args.rows is None else args.rows
        df = ext_frame(formatted_ext_table(rows, weight))
    _emit(render(df, _table_format(args)))
    return EXIT_OK


def cmd_char0(args, configs: Dict[str, Any]) -> int:
    computation = configs["computation"]
    n_max = configs["verification"]["char0_n_max"] if args.n_max is None else args.n_max
    if args.expected:
        table = {n: expected_char0_row(n, args.start) for n in range(n_max + 1)}
    else:
        cutoff = computation["graded_cutoff"] if args.cutoff is None else args.cutoff
        point = tuple(args.point or computation["default_point"])
        table = char0_ext_table(n_max, cutoff, args.start, point, args.clearing)
    _emit(render(char0_frame(table), _table_format(args)))
    return EXIT_OK


def cmd_shrub(args, configs: Dict[str, Any]) -> int:
    basis_only = not args.all
    if args.action == 'enum':
        records = []
        for L in enumerate_shrubberies(max_len=args.length, blue_only=args.blue, basis_only=basis_only):
            if L.length == args.length:
                records.append({"shrubbery": format_shrubbery(L), **predicates(L)})
        if not records:
            _emit("(empty)")
            return EXIT_OK
        _emit(render(records_frame(records, "shrubbery"), _table_format(args)))
        return EXIT_OK

    enumerated = sum(1 for L in enumerate_shrubberies(max_len=args.length, blue_only=args.blue,
                                                       basis_only=basis_only) if L.length == args.length)
    brute = brute_force_count(args.length, args.blue, basis_only)
    lines = [f"length {args.length}: enumerated {enumerated}, brute force {brute}"]
    ok = enumerated == brute
    if args.length % 2 == 0:
        euler = euler_check(args.length // 2)
        lines.append(f"euler check n={args.length // 2}: {'ok' if euler else 'MISMATCH'}")
        ok = ok and euler
    _emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def _table_format(args) -> str:
    if args.format == 'dot':
        raise UsageError(f"--format dot is not available for {args.command}")
    return args.format


COMMANDS = {
    'qnum': cmd_poly,
    'qbinom': cmd_poly,
    'cyclo': cmd_poly,
    'pascal': cmd_pascal,
    'dg': cmd_dg,
    'cohomology': cmd_cohomology,
    'verify': cmd_verify,
    'predict': cmd_predict,
    'char0': cmd_char0,
    'shrub': cmd_shrub,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 on a comparison mismatch, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {str(e)}\n")
        return EXIT_USAGE

    level = logging.DEBUG if args.debug else logging.WARNING if args.quiet else logging.INFO
    setup_logger(level, log_to_file=not args.quiet)
    configs = load_all_configs(args.config)

    try:
        logger.debug(f"Running {args.command}")
        return COMMANDS[args.command](args, configs)
    except (UsageError, WakimotoError) as e:
        logger.error(f"Error running {args.command}: {str(e)}")
        return EXIT_USAGE


def main():
    """
    Main function: run the command line given to the process.
    """
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
