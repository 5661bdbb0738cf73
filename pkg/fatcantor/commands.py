"""
Subcommands of the fatcantor CLI. Each command takes the run config and the
parsed arguments and returns the `inputs` and `result` parts of one report;
run.py adds the header and prints it.
"""

import json
import logging
from argparse import Namespace
from fractions import Fraction
from typing import Callable, Dict, List

from fatcantor.app_config import RunConfig
from fatcantor.errors import PreconditionError
from fatcantor.time_record import TimeRecorder
from fatcantor.geometry import Box, parse_rational, tile_check
from fatcantor.cantor import (
    CantorSchedule,
    limit_measure,
    membership,
    stage_defect,
    stage_measure,
)
from fatcantor.ring import CantorRing, Gen, generate_rn
from fatcantor.cover import (
    UncoveredWitness,
    NoCover,
    find_uncovered_box,
    grid_pool,
    infinite_cube_report,
    outer_upper,
    verify_cover,
    verify_witness,
)
from fatcantor.packing import CubeFamily, pack_cover, verify_layout
from fatcantor.hausdorff import (
    Gauge,
    corollary_pipeline,
    nu_delta_upper,
    range_function,
    solve_level,
    stage_trend,
)
from fatcantor import sampling
from fatcantor.serialization import (
    decode_box,
    decode_box_union,
    decode_expr,
    decode_exprs,
)

__all__ = [
    'COMMANDS',
    'cantor_summary',
    'corollary_summary',
    'cover_summary',
    'hausdorff_summary',
    'parse_vector',
]

logger = logging.getLogger(__name__)

DEFAULT_CHECK_STAGE = 4
MAX_RANDOM_SPLIT_STAGE = 8
MAX_RANDOM_CLIP_STAGE = 6


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as err:
        raise PreconditionError(str(err)) from err


def parse_vector(text: str) -> tuple:
    try:
        return tuple(parse_rational(v) for v in text.split(','))
    except ValueError as err:
        raise PreconditionError(str(err)) from err


def _schedule(config: RunConfig) -> CantorSchedule:
    s = config.schedule
    return CantorSchedule(s.d, s.c, s.rho)


def _ring(config: RunConfig) -> CantorRing:
    return CantorRing(_schedule(config), config.stages.max_stage_exponent)


def _deepest(config: RunConfig, limit: int) -> int:
    return max(0, min(limit, config.stages.max_stage_exponent // config.schedule.d))


def _load_json(path: str):
    if not path:
        return None
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except FileNotFoundError as err:
        raise PreconditionError(f'Expression file not found: {path}') from err
    except json.JSONDecodeError as err:
        raise PreconditionError(f'Malformed JSON in {path}: {err}') from err


def _expressions(args: Namespace) -> list:
    data = _load_json(args.expr_file)
    if data is None:
        raise PreconditionError('This command needs --expr-file or --random.')
    return decode_exprs(data) if isinstance(data, list) else [decode_expr(data)]


def _cli_box(args: Namespace, d: int) -> Box:
    if args.lo is None or args.hi is None:
        raise PreconditionError('Give the box with --lo and --hi.')
    box = Box(parse_vector(args.lo), parse_vector(args.hi))
    if box.dim != d:
        raise PreconditionError(f'Box has dimension {box.dim}, the schedule has d = {d}.')
    return box


def cantor_info(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    last = args.stage if args.stage is not None else min(config.stages.stage_cap, 10)
    result = cantor_summary(schedule, last, args.point, config.stages.stage_cap)
    return dict(inputs=dict(schedule=schedule, stage=last, point=args.point), result=result)


def cantor_summary(schedule: CantorSchedule, last: int, point: str, stage_cap: int) -> dict:
    stages = [
        dict(
            stage=n,
            stage_measure=stage_measure(schedule, n),
            defect=stage_defect(schedule, n),
            interval_length=schedule.interval_length(n),
            cell_measure=schedule.cell_measure(n),
        )
        for n in range(last + 1)
    ]
    result = dict(
        limit_measure=limit_measure(schedule),
        line_limit=schedule.line_limit,
        feasible=schedule.is_feasible,
        stages=stages,
    )
    if point:
        result['membership'] = membership(schedule, parse_vector(point), stage_cap)
    return result


def measure(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    ring = _ring(config)
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        expressions = [sampling.random_expr(rng, ring.d) for _ in range(args.random)]
    else:
        expressions = _expressions(args)

    rows = []
    for e in expressions:
        with recorder('measure'):
            if args.stage is not None:
                bounds = ring.certified_bounds(e, args.stage)
            else:
                bounds = ring.premeasure(e, config.tolerance.tol)
        rows.append(dict(expr=e, leaf_count=e.leaf_count, pure_positive=e.is_pure_positive, bounds=bounds))
    inputs = dict(stage=args.stage, tol=None if args.stage is not None else config.tolerance.tol,
                  random=args.random)
    return dict(inputs=inputs, result=dict(rows=rows))


def split_check(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    ring = _ring(config)
    d = ring.d
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        last = _deepest(config, MAX_RANDOM_SPLIT_STAGE)
        cases = [
            (sampling.random_expr(rng, d), sampling.random_half_space(rng, d), int(rng.integers(0, last + 1)))
            for _ in range(args.random)
        ]
    else:
        if args.threshold is None:
            raise PreconditionError('split-check needs --threshold (and optionally --axis, --upper).')
        half_space = Box.half_space(d, args.axis, _rational(args.threshold), args.upper)
        stage = args.stage if args.stage is not None else DEFAULT_CHECK_STAGE
        cases = [(e, half_space, stage) for e in _expressions(args)]

    rows = []
    for e, half_space, n in cases:
        with recorder('split'):
            report = ring.split_identity_check(e, half_space, n)
        rows.append(dict(expr=e, half_space=half_space, stage=n, whole=report.whole,
                         inside=report.inside, outside=report.outside, holds=report.holds))
    failures = sum(1 for row in rows if not row['holds'])
    if failures:
        logger.error(f'{failures} of {len(rows)} splitting identities failed.')
    return dict(inputs=dict(random=args.random), result=dict(rows=rows, failures=failures))


def clip_check(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    ring = _ring(config)
    d = ring.d
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        last = _deepest(config, MAX_RANDOM_CLIP_STAGE)
        cases = [
            (sampling.random_expr(rng, d), sampling.random_box(rng, d), int(rng.integers(0, last + 1)))
            for _ in range(args.random)
        ]
    else:
        box = _cli_box(args, d)
        stage = args.stage if args.stage is not None else DEFAULT_CHECK_STAGE
        cases = [(e, box, stage) for e in _expressions(args)]

    rows = []
    for e, box, n in cases:
        with recorder('clip'):
            report = ring.clip_check(e, box, n)
        rows.append(dict(expr=e, box=box, stage=n, clipped_measure=report.clipped_measure,
                         intersected_measure=report.intersected_measure, identical=report.identical))
    failures = sum(1 for row in rows if not row['identical'])
    return dict(inputs=dict(random=args.random), result=dict(rows=rows, failures=failures))


def rn_enumerate(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    ring = _ring(config)
    pool = grid_pool(ring.d, args.pool_size)
    with recorder('enumerate'):
        family = generate_rn(ring, pool, args.level, config.stages.reference_stage,
                             config.search.max_expressions)

    result = dict(
        level=family.level,
        count=len(family.expressions),
        candidates=family.candidates,
        merged=family.merged,
        reference_stage=family.reference_stage,
        expressions=family.expressions,
    )
    if args.witnesses:
        target = Box.unit(ring.d)
        rows = []
        for i, e in enumerate(family.expressions):
            with recorder('witness'):
                witness = find_uncovered_box(ring.schedule, target, [e], config.stages.stage_cap,
                                             config.stages.witness_margin,
                                             max_stage_exponent=config.stages.max_stage_exponent)
            verified = isinstance(witness, UncoveredWitness) and verify_witness(ring.schedule, target, [e], witness)
            rows.append(dict(index=i, witness=witness, verified=verified))
        result['witnesses'] = rows
    return dict(inputs=dict(pool=pool, level=args.level), result=result)


def _cover_instance(config: RunConfig, args: Namespace):
    d = config.schedule.d
    data = _load_json(args.expr_file)
    if data is None:
        return Gen((Fraction(0),) * d, Box.unit(d)), grid_pool(d, args.pool_size)
    if not isinstance(data, dict) or 'target' not in data or 'pool' not in data:
        raise PreconditionError('cover-search expects {"target": ..., "pool": [...]}.')
    target = data['target']
    target = decode_box(target['box']) if 'box' in target else decode_expr(target)
    return target, decode_exprs(data['pool'])


def cover_search(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    ring = _ring(config)
    target, pool = _cover_instance(config, args)
    stage = args.stage if args.stage is not None else _deepest(config, config.search.cover_stage)
    with recorder('search'):
        body = cover_summary(config, ring, target, pool, stage)
    target_json = dict(box=target) if isinstance(target, Box) else target
    return dict(inputs=dict(target=target_json, pool=pool, stage=stage, budget=config.search.budget),
                result=body)


def cover_summary(config: RunConfig, ring: CantorRing, target, pool: list, stage: int) -> dict:
    result = outer_upper(ring, target, pool, stage, config.search.budget,
                         witness_stage_cap=config.stages.stage_cap)
    if isinstance(result, NoCover):
        verified = isinstance(result.witness, UncoveredWitness) and isinstance(target, Box) and \
                   verify_witness(ring.schedule, target, pool, result.witness)
        body = dict(infinite=True, reason=result.reason, examined=result.examined, witness=result.witness,
                    verified=verified)
    else:
        body = dict(infinite=False, indices=result.indices, elements=result.elements,
                    total_premeasure_upper=result.total_premeasure_upper, examined=result.examined,
                    verified=verify_cover(ring, target, result.elements, stage))
    return body


def uncovered_box(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    d = schedule.d
    data = _load_json(args.expr_file)
    target = Box.unit(d)
    if data is None:
        elements = []
    elif isinstance(data, list):
        elements = decode_exprs(data)
    else:
        elements = decode_exprs(data.get('elements', []))
        if 'target' in data:
            target = decode_box(data['target'])

    with recorder('witness'):
        result = find_uncovered_box(schedule, target, elements, config.stages.stage_cap,
                                    config.stages.witness_margin, not args.no_sweep,
                                    config.stages.max_stage_exponent)
    verified = isinstance(result, UncoveredWitness) and verify_witness(schedule, target, elements, result)
    if not isinstance(result, UncoveredWitness):
        logger.warning(f'Witness search is inconclusive at stage cap {config.stages.stage_cap}.')
    return dict(inputs=dict(target=target, elements=elements, stage_cap=config.stages.stage_cap),
                result=dict(witness=result, verified=verified))


def infinite_cube(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    with recorder('report'):
        report = infinite_cube_report(
            schedule,
            args.pool_size,
            config.stages.stage_cap,
            config.search.exhaustive_limit,
            config.stages.witness_margin,
            not args.no_sweep,
            config.stages.max_stage_exponent,
            config.parallel.parallel_computation,
            config.parallel.max_cores,
        )
    rows = [dict(subset=row.subset, result=row.result, verified=row.verified) for row in report.rows]
    result = dict(
        exhaustive=report.exhaustive,
        subfamilies=len(rows),
        witnesses=report.witnesses,
        inconclusive=report.inconclusive,
        all_verified=report.all_verified,
        rows=rows,
    )
    return dict(inputs=dict(pool=report.pool, stage_cap=report.stage_cap), result=result)


def pack(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    d = config.schedule.d
    target_side = _rational(args.target_side)
    alpha = _rational(args.alpha)
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        families = [sampling.random_cube_family(rng, d) for _ in range(args.random)]
    else:
        if not args.sides:
            raise PreconditionError('pack needs --sides or --random.')
        families = [CubeFamily(parse_vector(args.sides), d)]

    rows = []
    for family in families:
        with recorder('pack'):
            layout = pack_cover(family, target_side, alpha)
        rows.append(dict(family=family, layout=layout, verified=verify_layout(layout, family)))
    return dict(inputs=dict(target_side=target_side, alpha=alpha, random=args.random), result=dict(rows=rows))


def _stage_range(text: str) -> List[int]:
    try:
        first, last = (int(v) for v in text.split(':'))
    except ValueError as err:
        raise PreconditionError(f'Expected a stage range "first:last", got {text!r}.') from err
    return list(range(first, last + 1))


def hausdorff_bound(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    gauge = Gauge(args.gauge_s if args.gauge_s is not None else schedule.d)
    data = _load_json(args.expr_file)
    target = schedule if data is None else decode_box_union(data)
    trend = _stage_range(args.trend) if args.trend else []
    with recorder('cover'):
        result = hausdorff_summary(config, target, gauge, args.delta, args.stage, trend)
    target_json = schedule if isinstance(target, CantorSchedule) else target
    return dict(inputs=dict(target=target_json, gauge=gauge, delta=args.delta, stage=args.stage), result=result)


def hausdorff_summary(config: RunConfig, target, gauge: Gauge, delta_text: str, stage: int,
                      trend: List[int]) -> dict:
    schedule = _schedule(config)
    result = {}
    if delta_text is not None or stage is not None:
        delta = _rational(delta_text) if delta_text is not None else \
            2 * schedule.interval_length(stage) * schedule.d
        cover, gauge_sum = nu_delta_upper(target, gauge, delta, config.stages.stage_cap, stage,
                                          config.stages.max_stage_exponent)
        result['cover'] = cover
        result['upper_bound'] = gauge_sum
    if trend:
        result['trend'] = [
            dict(stage=c.stage, side=c.side, diameter=c.diameter, count=c.count, gauge_sum=c.gauge_sum)
            for c in stage_trend(schedule, gauge, trend)
        ]
    if not result:
        raise PreconditionError('hausdorff-bound needs --delta, --stage or --trend.')
    return result


def corollary_demo(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    gauge = Gauge(args.gauge_s if args.gauge_s is not None else schedule.d)
    a = _rational(args.a) if args.a is not None else limit_measure(schedule)
    delta = _rational(args.delta)
    with recorder('pipeline'):
        result = corollary_summary(config, gauge, a, delta, args.stage, args.alpha_bits)
    return dict(inputs=dict(gauge=gauge, a=a, delta=delta, stage=args.stage, alpha_bits=args.alpha_bits),
                result=result)


def corollary_summary(config: RunConfig, gauge: Gauge, a: Fraction, delta: Fraction, stage: int,
                      alpha_bits: int) -> dict:
    report = corollary_pipeline(_schedule(config), gauge, delta, a, config.stages.stage_cap, stage,
                                alpha_bits, config.stages.max_stage_exponent)
    return dict(
        holds=report.holds,
        constant=report.constant,
        cover=report.cover,
        truncation=report.truncation,
        cube_side=report.cube_side,
        alpha_power=report.alpha_power,
        alpha=report.alpha,
        alpha_exact=report.alpha_exact,
        layout=report.layout,
        checks=report.checks,
    )


def range_solve(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    schedule = _schedule(config)
    tol = config.tolerance.tol
    result = {}

    targets = []
    if args.target is not None:
        targets.append(_rational(args.target))
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        limit = limit_measure(schedule)
        targets += [limit * Fraction(int(rng.integers(1, 1024)), 1024) for _ in range(args.random)]
    if targets:
        solutions = []
        for target in targets:
            with recorder('solve'):
                solution = solve_level(schedule, target, tol, config.tolerance.max_bisections)
            solutions.append(dict(target=target, x=solution.x, bounds=solution.bounds,
                                  midpoint=solution.midpoint, iterations=solution.iterations))
        result['solutions'] = solutions

    if args.x is not None:
        x = _rational(args.x)
        result['value'] = dict(x=x, bounds=range_function(schedule, x, args.stage, None if args.stage is not None
                                                          else tol))

    if args.grid:
        stage = args.stage if args.stage is not None else DEFAULT_CHECK_STAGE
        points = [Fraction(i, args.grid) for i in range(args.grid + 1)]
        values = [range_function(schedule, x, stage) for x in points]
        monotone = all(
            a.lower <= b.lower and a.upper <= b.upper for a, b in zip(values, values[1:])
        )
        result['grid'] = dict(stage=stage, points=[dict(x=x, bounds=b) for x, b in zip(points, values)],
                              monotone=monotone)

    if not result:
        raise PreconditionError('range-solve needs --target, --random, --x or --grid.')
    return dict(inputs=dict(target=args.target, tol=tol, x=args.x, stage=args.stage, grid=args.grid,
                            random=args.random), result=result)


def tile(config: RunConfig, args: Namespace, recorder: TimeRecorder) -> dict:
    d = config.schedule.d
    if args.random:
        rng = sampling.make_rng(config.output.seed)
        cases = [sampling.random_tiling_instance(rng, d) for _ in range(args.random)]
    else:
        if not args.scales:
            raise PreconditionError('tile-check needs --scales (with --lo, --hi) or --random.')
        cases = [(_cli_box(args, d), parse_vector(args.scales))]

    rows = []
    for base, scales in cases:
        with recorder('tile'):
            report = tile_check(base, scales)
        rows.append(dict(base=base, scales=report.scales, count=report.count, base_count=report.base_count,
                         refinement=report.refinement, scaled_measure=report.scaled_measure, ok=report.ok))
    failures = sum(1 for row in rows if not row['ok'])
    return dict(inputs=dict(random=args.random), result=dict(rows=rows, failures=failures))


COMMANDS: Dict[str, Callable[[RunConfig, Namespace, TimeRecorder], dict]] = {
    'cantor-info': cantor_info,
    'measure': measure,
    'split-check': split_check,
    'clip-check': clip_check,
    'rn-enumerate': rn_enumerate,
    'cover-search': cover_search,
    'uncovered-box': uncovered_box,
    'infinite-cube': infinite_cube,
    'pack': pack,
    'hausdorff-bound': hausdorff_bound,
    'corollary-demo': corollary_demo,
    'range-solve': range_solve,
    'tile-check': tile,
}
