import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from time import perf_counter

from fatcantor.app_config import RunConfig
from fatcantor.commands import COMMANDS
from fatcantor.errors import BudgetError, PreconditionError
from fatcantor.log_config import set_log_config
from fatcantor.package_info import description
from fatcantor.replay import replay
from fatcantor.serialization import dumps
from fatcantor.time_record import TimeRecorder

__all__ = [
    'run',
    'main',
    'get_parser',
    'build_config',
    'EXIT_OK',
    'EXIT_INTERNAL',
    'EXIT_PRECONDITION',
    'EXIT_BUDGET',
]

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3

logger = logging.getLogger(__name__)


def run():
    sys.exit(main())


def main(argv=None) -> int:
    start = perf_counter()
    parser = get_parser()
    args = parser.parse_args(argv)

    try:
        config = build_config(args)
    except PreconditionError as err:
        set_log_config()
        logger.error(str(err))
        return EXIT_PRECONDITION

    set_log_config(config.log_config.logging_level, config.log_filename)

    if args.verify:
        return _verify(args.verify)
    if not args.command:
        parser.error('a subcommand or --verify is required')

    recorder = TimeRecorder(args.command, no_record=config.log_config.no_time_record)
    document = dict(command=args.command, seed=config.output.seed, config=config.to_yaml_dict())

    try:
        document.update(COMMANDS[args.command](config, args, recorder))
    except PreconditionError as err:
        logger.error(f'Precondition violated: {err}')
        _emit(dict(document, error=str(err)), config.output.out)
        return EXIT_PRECONDITION
    except BudgetError as err:
        logger.warning(f'Budget exhausted: {err}')
        _emit(dict(document, error=str(err), partial=err.partial, suggested_stage=err.suggested_stage),
              config.output.out)
        return EXIT_BUDGET
    except Exception:
        logger.exception(f'Internal error in {args.command}.')
        return EXIT_INTERNAL

    _emit(document, config.output.out)
    _save_records(recorder, config)
    logger.info(f'Total time (sec): {(perf_counter() - start)}')
    return EXIT_OK


def _verify(path: str) -> int:
    try:
        with open(path, 'r') as f:
            report = json.load(f)
        result = replay(report)
    except (OSError, json.JSONDecodeError) as err:
        logger.error(f'Cannot read report {path}: {err}')
        return EXIT_PRECONDITION
    except PreconditionError as err:
        logger.error(str(err))
        return EXIT_PRECONDITION
    except BudgetError as err:
        logger.error(f'Replay of {path} ran out of budget: {err}')
        return EXIT_BUDGET
    except Exception:
        logger.exception(f'Internal error while replaying {path}.')
        return EXIT_INTERNAL
    print(dumps(result))
    return EXIT_OK if result['verified'] else EXIT_PRECONDITION


def _emit(document: dict, out: str):
    text = dumps(document)
    print(text)
    if out:
        try:
            Path(out).write_text(text + '\n')
        except OSError as err:
            logger.error(f'Cannot write the report to {out}: {err}')


def _save_records(recorder: TimeRecorder, config: RunConfig):
    if recorder.no_record:
        return
    logger.debug(f'\n{recorder.get_table_str()}')
    recorder.save(config.record_filename)


def build_config(args: Namespace) -> RunConfig:
    """Built-in defaults, then the --config file, then explicit flags."""
    try:
        config = RunConfig.from_config(args.config) if args.config else RunConfig()
        config = config.update_group('schedule', d=args.d, c=args.c, rho=args.rho)
        config = config.update_group('stages', stage_cap=args.stage_cap)
        config = config.update_group('search', budget=args.budget)
        config = config.update_group('tolerance', tol=args.tol)
        config = config.update_group('output', seed=args.seed, out=args.out)
        config = config.update_group('parallel', parallel_computation=args.parallel or None,
                                     max_cores=args.max_cores)
        config = config.update_group('log_config', debug=args.debug or None)
    except FileNotFoundError as err:
        raise PreconditionError(f'Config file not found: {err.filename}') from err
    except (ValueError, TypeError) as err:
        raise PreconditionError(f'Invalid configuration: {err}') from err
    return config


def _common_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None, help='YAML config (in config_files/ or a path)')
    common.add_argument('--debug', action='store_true', help='Turn on logs for debugging')
    common.add_argument('--d', type=int, default=None, help='Dimension')
    common.add_argument('--c', type=str, default=None, help='Schedule scale, "p/q"')
    common.add_argument('--rho', type=str, default=None, help='Schedule ratio, "p/q"')
    common.add_argument('--stage-cap', type=int, default=None, help='Deepest stage for certificates')
    common.add_argument('--budget', type=int, default=None, help='Cover search budget')
    common.add_argument('--tol', type=str, default=None, help='Tolerance, "p/q"')
    common.add_argument('--seed', type=int, default=None, help='Seed of random instances')
    common.add_argument('--out', type=str, default=None, help='Also write the report to this path')
    common.add_argument('--random', type=int, default=0, metavar='N', help='Run a seeded suite of N instances')
    common.add_argument('--expr-file', type=str, default=None, help='JSON input (ring expressions)')
    common.add_argument('--parallel', action='store_true', help='Use a process pool')
    common.add_argument('--max-cores', type=int, default=None, help='Max worker processes')
    return common


def get_parser() -> ArgumentParser:
    common = _common_parser()
    parser = ArgumentParser(prog='fatcantor', description=description, parents=[common])
    parser.add_argument('--verify', type=str, default=None, metavar='REPORT',
                        help='Replay the certificates of a JSON report')
    subparsers = parser.add_subparsers(dest='command')

    def add(name: str, help_text: str) -> ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    p = add('cantor-info', 'Exact measures of the schedule and its stages')
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--point', type=str, default=None, help='Membership query, "x1,...,xd"')

    p = add('measure', 'Certified premeasure bounds of ring expressions')
    p.add_argument('--stage', type=int, default=None, help='Fixed stage instead of --tol')

    p = add('split-check', 'Splitting identity against an axis half-space')
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--axis', type=int, default=0)
    p.add_argument('--threshold', type=str, default=None)
    p.add_argument('--upper', action='store_true', help='Use {x_axis >= threshold}')

    p = add('clip-check', 'Clipping commutes with stage evaluation')
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--lo', type=str, default=None)
    p.add_argument('--hi', type=str, default=None)

    p = add('rn-enumerate', 'Enumerate R_n over a grid pool')
    p.add_argument('--pool-size', type=int, default=3)
    p.add_argument('--level', type=int, default=2)
    p.add_argument('--witnesses', action='store_true', help='Attach a witness in [0, 1]^d to every element')

    p = add('cover-search', 'Finite-cover upper bound of the outer measure')
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--pool-size', type=int, default=4)

    p = add('uncovered-box', 'Open box of a solid target missing finitely many elements')
    p.add_argument('--no-sweep', action='store_true', help='Disable the stage-sweep fallback')

    p = add('infinite-cube', 'Witnesses in [0, 1]^d for subfamilies of a grid pool')
    p.add_argument('--pool-size', type=int, default=16)
    p.add_argument('--no-sweep', action='store_true', help='Disable the stage-sweep fallback')

    p = add('pack', 'Cover [0, alpha * s]^d by translates of given cubes')
    p.add_argument('--sides', type=str, default=None, help='"a_1,...,a_n"')
    p.add_argument('--target-side', type=str, default='1/2')
    p.add_argument('--alpha', type=str, default='1')

    p = add('hausdorff-bound', 'Delta-cover upper bounds of gauge sums')
    p.add_argument('--gauge-s', type=int, default=None, help='Gauge exponent s of h(t) = t^s (default d)')
    p.add_argument('--delta', type=str, default=None)
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--trend', type=str, default=None, help='Stage range "first:last"')

    p = add('corollary-demo', 'Cover to packing inequality chain')
    p.add_argument('--gauge-s', type=int, default=None)
    p.add_argument('--a', type=str, default=None, help='Lower bound of lambda(K) (default lambda(C^d))')
    p.add_argument('--delta', type=str, required=True)
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--alpha-bits', type=int, default=32)

    p = add('range-solve', 'Bounds of F(x) = lambda(C^d & {x_1 < x}) and level solving')
    p.add_argument('--target', type=str, default=None)
    p.add_argument('--x', type=str, default=None)
    p.add_argument('--stage', type=int, default=None)
    p.add_argument('--grid', type=int, default=0, help='Monotonicity check on N + 1 points')

    p = add('tile-check', 'Exact tiling of a rescaled box')
    p.add_argument('--lo', type=str, default=None)
    p.add_argument('--hi', type=str, default=None)
    p.add_argument('--scales', type=str, default=None, help='"q_1,...,q_d"')

    return parser
