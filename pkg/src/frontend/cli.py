"""
Command Line
Subcommands over a `.q` problem file. Results go to stdout, logs to stderr.

Exit codes: 0 success (or member), 1 false (not a member, order check
failed), 2 usage or input error, 3 a completion or step cap was reached.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.config import setup_logging
from src.core.order import Side, check_order_suite
from src.errors import GroebnerError, ProblemSyntaxError, StepCapExceededError
from src.frontend.parser import ProblemFile, load_problem
from src.frontend import printers
from src.groebner.groebner import (
    CompletionLimits, GBStatus, buchberger, ideal_member, overlaps, s_polynomial,
)
from src.groebner.rewrite import divide

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _limits(args) -> CompletionLimits:
    overrides = {
        'proper_overlaps': args.proper_overlaps,
        'initial_reduce': not args.no_initial_reduce,
        'unsafe': args.unsafe,
    }
    if args.max_iter is not None:
        overrides['max_iterations'] = args.max_iter
    if args.max_len is not None:
        overrides['max_path_length'] = args.max_len
    if args.max_steps is not None:
        overrides['max_division_steps'] = args.max_steps
    return CompletionLimits(**overrides)


def _complete(problem: ProblemFile, args):
    ideal = problem.ideal(args.ideal)
    return buchberger(ideal, problem.order, _limits(args))


def cmd_gb(problem: ProblemFile, args) -> int:
    result = _complete(problem, args)
    if args.format == 'json':
        print(printers.to_json(result.to_model()), end='')
    else:
        print(printers.gb_result_text(result), end='')
    return EXIT_OK if result.status is GBStatus.COMPLETED else EXIT_CAP


def _membership(problem: ProblemFile, args):
    result = _complete(problem, args)
    f = problem.poly(args.poly)
    return result, ideal_member(f, result, problem.order, result.side)


def cmd_nf(problem: ProblemFile, args) -> int:
    result, member = _membership(problem, args)
    if args.format == 'json':
        print(printers.to_json(member.to_model(problem.order)), end='')
    else:
        print(member.normal_form.format(problem.order))
    return EXIT_OK if result.completed else EXIT_CAP


def cmd_member(problem: ProblemFile, args) -> int:
    result, member = _membership(problem, args)
    if args.format == 'json':
        print(printers.to_json(member.to_model(problem.order)), end='')
    else:
        print(printers.membership_text(member, problem.order), end='')
    if not result.completed:
        return EXIT_CAP
    return EXIT_OK if member.member else EXIT_FALSE


def cmd_divide(problem: ProblemFile, args) -> int:
    f = problem.poly(args.poly)
    divisors = [problem.poly(name.strip()) for name in args.by.split(',') if name.strip()]
    rep = divide(f, divisors, problem.order, Side(args.side), unsafe=args.unsafe,
                 max_steps=args.max_steps)
    if args.format == 'json':
        print(printers.to_json(rep.to_model()), end='')
    else:
        print(printers.representation_text(rep), end='')
    return EXIT_OK


def _overlaps(problem: ProblemFile, args):
    f, g = problem.poly(args.f), problem.poly(args.g)
    found = overlaps(f, g, problem.order, Side(args.side), proper=not args.all)
    return f, g, found


def cmd_spoly(problem: ProblemFile, args) -> int:
    f, g, found = _overlaps(problem, args)
    pairs = [(ov, s_polynomial(f, g, ov, problem.order)) for ov in found]
    models = printers.s_polynomial_models(pairs, problem.order)
    if args.format == 'json':
        print(printers.dump_json(models), end='')
    else:
        for model in models:
            ov = model.overlap
            print(f"S(f, g, {ov.p}, {ov.q}) = {model.s_polynomial}")
    return EXIT_OK


def cmd_overlaps(problem: ProblemFile, args) -> int:
    _, _, found = _overlaps(problem, args)
    if args.format == 'json':
        print(printers.dump_json([ov.to_model() for ov in found]), end='')
    else:
        print(printers.overlaps_text(found), end='')
    return EXIT_OK


def cmd_check_order(problem: ProblemFile, args) -> int:
    report = check_order_suite(problem.order, args.depth, samples=args.samples, seed=args.seed)
    if args.format == 'json':
        print(printers.to_json(printers.admissibility_model(report)), end='')
    else:
        print(printers.admissibility_text(report), end='')
    return EXIT_OK if report.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('file', help='problem file (.q)')
    common.add_argument('--order', help='override the order declared in the file')
    common.add_argument('--format', choices=['json', 'text'], default='text')
    common.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    common.add_argument('--unsafe', action='store_true',
                        help='allow llex/rlex under a division step cap')
    common.add_argument('--max-steps', type=int, default=None,
                        help='division sweep cap under --unsafe orders')

    completion = argparse.ArgumentParser(add_help=False)
    completion.add_argument('--ideal', required=True)
    completion.add_argument('--max-iter', type=int, default=None)
    completion.add_argument('--max-len', type=int, default=None)
    completion.add_argument('--proper-overlaps', action='store_true',
                            help='skip plain concatenation overlaps')
    completion.add_argument('--no-initial-reduce', action='store_true',
                            help='never interreduce; new elements are appended')

    parser = argparse.ArgumentParser(prog='run_groebner.py',
                                     description='Groebner bases of ideals in path algebras')
    sub = parser.add_subparsers(dest='command', required=True)

    gb = sub.add_parser('gb', parents=[common, completion], help='complete an ideal')
    gb.set_defaults(handler=cmd_gb)

    nf = sub.add_parser('nf', parents=[common, completion], help='normal form modulo an ideal')
    nf.add_argument('--poly', required=True)
    nf.set_defaults(handler=cmd_nf)

    member = sub.add_parser('member', parents=[common, completion], help='ideal membership')
    member.add_argument('--poly', required=True)
    member.set_defaults(handler=cmd_member)

    div = sub.add_parser('divide', parents=[common], help='standard representation')
    div.add_argument('--poly', required=True)
    div.add_argument('--by', required=True, help='comma separated polynomial names')
    div.add_argument('--side', choices=[s.value for s in Side], default=Side.TWOSIDED.value)
    div.set_defaults(handler=cmd_divide)

    for name, handler in (('spoly', cmd_spoly), ('overlaps', cmd_overlaps)):
        cmd = sub.add_parser(name, parents=[common], help=f'{name} of two polynomials')
        cmd.add_argument('--f', required=True)
        cmd.add_argument('--g', required=True)
        cmd.add_argument('--side', choices=[s.value for s in Side], default=Side.TWOSIDED.value)
        cmd.add_argument('--all', action='store_true', help='include concatenation overlaps')
        cmd.set_defaults(handler=handler)

    check = sub.add_parser('check-order', parents=[common], help='admissibility report')
    check.add_argument('--depth', type=int, default=3)
    check.add_argument('--samples', type=int, default=200)
    check.add_argument('--seed', type=int, default=0)
    check.set_defaults(handler=cmd_check_order)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        problem = load_problem(args.file)
        if args.order:
            problem = problem.with_order(args.order)
        return args.handler(problem, args)
    except StepCapExceededError as e:
        logger.error(f"❌ {e}")
        return EXIT_CAP
    except ProblemSyntaxError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except (GroebnerError, ValidationError, OSError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
