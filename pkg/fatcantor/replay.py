"""
Replay of emitted reports: every certificate and exact claim is recomputed
from the serialized data alone.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List

from fatcantor.app_config import RunConfig
from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box, tile_check
from fatcantor.cantor import CantorSchedule
from fatcantor.ring import CantorRing, MeasureBounds
from fatcantor.cover import verify_cover, verify_witness
from fatcantor.packing import CubeFamily, verify_layout
from fatcantor.hausdorff import DEFAULT_ALPHA_BITS, Gauge, InequalityCheck, cube_diameter, range_function
from fatcantor.commands import cantor_summary, corollary_summary, cover_summary, hausdorff_summary
from fatcantor.serialization import (
    decode_box,
    decode_box_union,
    decode_cube_family,
    decode_expr,
    decode_exprs,
    decode_layout,
    decode_number,
    decode_rational,
    decode_schedule,
    decode_vector,
    decode_witness,
    to_json,
)

__all__ = [
    'replay',
]

logger = logging.getLogger(__name__)


class _Checks(object):
    def __init__(self):
        self.items: List[dict] = []

    def add(self, name: str, ok: bool):
        self.items.append(dict(name=name, ok=bool(ok)))
        if not ok:
            logger.warning(f'Replay rejected: {name}')

    @property
    def verified(self) -> bool:
        return all(item['ok'] for item in self.items)


def _schedule(config: RunConfig) -> CantorSchedule:
    s = config.schedule
    return CantorSchedule(s.d, s.c, s.rho)


def _bounds_match(bounds: MeasureBounds, data: dict) -> bool:
    return bounds.lower == decode_rational(data['lower']) and bounds.upper == decode_rational(data['upper'])


def _recomputed(name: str, value, data, checks: _Checks):
    checks.add(f'{name} recomputed', to_json(value) == data)


def _cantor_info(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    schedule = decode_schedule(inputs['schedule'])
    checks.add('schedule matches config', schedule == _schedule(config))
    expected = cantor_summary(schedule, int(inputs['stage']), inputs['point'], config.stages.stage_cap)
    checks.add('reported fields', set(expected) == set(result))
    for key, value in expected.items():
        _recomputed(key, value, result.get(key), checks)


def _measure(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    ring = CantorRing(_schedule(config), config.stages.max_stage_exponent)
    for i, row in enumerate(result['rows']):
        bounds = ring.certified_bounds(decode_expr(row['expr']), int(row['bounds']['stage']))
        checks.add(f'bounds of row {i}', _bounds_match(bounds, row['bounds']))


def _split_check(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    ring = CantorRing(_schedule(config), config.stages.max_stage_exponent)
    for i, row in enumerate(result['rows']):
        whole, inside, outside = (decode_rational(row[k]) for k in ('whole', 'inside', 'outside'))
        report = ring.split_identity_check(decode_expr(row['expr']), decode_box(row['half_space']), int(row['stage']))
        checks.add(f'splitting identity of row {i}',
                   whole == inside + outside and (report.whole, report.inside, report.outside) == (whole, inside, outside))


def _clip_check(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    ring = CantorRing(_schedule(config), config.stages.max_stage_exponent)
    for i, row in enumerate(result['rows']):
        report = ring.clip_check(decode_expr(row['expr']), decode_box(row['box']), int(row['stage']))
        checks.add(f'clip identity of row {i}', report.identical and row['identical'])


def _witness_checks(schedule: CantorSchedule, target: Box, elements: list, data, name: str, checks: _Checks):
    if data is None or 'needs_deeper_stage' in data:
        return
    checks.add(name, verify_witness(schedule, target, elements, decode_witness(data)))


def _rn_enumerate(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    schedule = _schedule(config)
    expressions = decode_exprs(result['expressions'])
    checks.add('expression count', len(expressions) == int(result['count']))
    for row in result.get('witnesses', []):
        i = int(row['index'])
        _witness_checks(schedule, Box.unit(schedule.d), [expressions[i]], row['witness'],
                        f'witness of expression {i}', checks)


def _cover_search(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    ring = CantorRing(_schedule(config), config.stages.max_stage_exponent)
    target = inputs['target']
    target = decode_box(target['box']) if 'box' in target else decode_expr(target)
    pool = decode_exprs(inputs['pool'])
    stage = int(inputs['stage'])
    checks.add('budget matches config', int(inputs['budget']) == config.search.budget)
    if result['infinite']:
        if isinstance(target, Box):
            _witness_checks(ring.schedule, target, pool, result['witness'], 'uncovered witness', checks)
    else:
        elements = decode_exprs(result['elements'])
        checks.add('outer hull cover', verify_cover(ring, target, elements, stage))
        upper = sum((ring.certified_bounds(e, stage).upper for e in elements), Fraction(0))
        checks.add('premeasure total', upper == decode_rational(result['total_premeasure_upper']))
    _recomputed('cover search', cover_summary(config, ring, target, pool, stage), result, checks)


def _uncovered_box(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    _witness_checks(_schedule(config), decode_box(inputs['target']), decode_exprs(inputs['elements']),
                    result['witness'], 'uncovered witness', checks)


def _infinite_cube(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    schedule = _schedule(config)
    pool = decode_exprs(inputs['pool'])
    target = Box.unit(schedule.d)
    for row in result['rows']:
        subset = [int(i) for i in row['subset']]
        _witness_checks(schedule, target, [pool[i] for i in subset], row['result'],
                        f'witness for subfamily {subset}', checks)


def _pack(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    for i, row in enumerate(result['rows']):
        checks.add(f'layout of row {i}', verify_layout(decode_layout(row['layout']), decode_cube_family(row['family'])))


def _cover_sum(d: int, gauge: Gauge, data: dict, name: str, checks: _Checks):
    side = decode_rational(data['side'])
    expected = gauge(cube_diameter(side, d)) * int(data['count'])
    checks.add(f'{name} gauge sum', expected == decode_number(data['gauge_sum']))
    if data.get('delta') is not None:
        delta = decode_rational(data['delta'])
        checks.add(f'{name} diameter below delta', side * side * d < delta * delta)


def _hausdorff_bound(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    gauge = Gauge(int(inputs['gauge']['s']))
    d = config.schedule.d
    if 'cover' in result:
        _cover_sum(d, gauge, result['cover'], 'cover', checks)
    for row in result.get('trend', []):
        _cover_sum(d, gauge, row, f'stage {row["stage"]}', checks)

    target = inputs['target']
    target = decode_box_union(target) if 'boxes' in target else decode_schedule(target)
    if isinstance(target, CantorSchedule):
        checks.add('schedule matches config', target == _schedule(config))
    stage = inputs['stage']
    trend = [int(row['stage']) for row in result.get('trend', [])]
    expected = hausdorff_summary(config, target, gauge, inputs['delta'],
                                 None if stage is None else int(stage), trend)
    _recomputed('bounds', expected, result, checks)


def _corollary_demo(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    d = config.schedule.d
    for row in result['checks']:
        check = InequalityCheck(row['name'], decode_number(row['lhs']), row['relation'], decode_number(row['rhs']),
                                row['informational'])
        if not check.informational:
            checks.add(check.name, check.holds)
    family = CubeFamily((decode_rational(result['cube_side']),) * int(result['truncation']), d)
    checks.add('packing layout', verify_layout(decode_layout(result['layout']), family))
    _cover_sum(d, Gauge(int(inputs['gauge']['s'])), result['cover'], 'cover', checks)

    stage = inputs['stage']
    expected = corollary_summary(config, Gauge(int(inputs['gauge']['s'])), decode_rational(inputs['a']),
                                 decode_rational(inputs['delta']), None if stage is None else int(stage),
                                 int(inputs.get('alpha_bits', DEFAULT_ALPHA_BITS)))
    for key, value in expected.items():
        _recomputed(key, value, result.get(key), checks)


def _range_solve(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    schedule = _schedule(config)
    tol = decode_rational(inputs['tol'])
    for row in result.get('solutions', []):
        x, target = decode_rational(row['x']), decode_rational(row['target'])
        bounds = range_function(schedule, x, int(row['bounds']['stage']))
        midpoint = (bounds.lower + bounds.upper) / 2
        checks.add(f'level {target}', _bounds_match(bounds, row['bounds']) and abs(midpoint - target) <= tol)
    if 'grid' in result:
        stage = int(result['grid']['stage'])
        values = [range_function(schedule, decode_rational(p['x']), stage) for p in result['grid']['points']]
        monotone = all(a.lower <= b.lower and a.upper <= b.upper for a, b in zip(values, values[1:]))
        checks.add('monotone on the grid', monotone == result['grid']['monotone'])


def _tile_check(config: RunConfig, inputs: dict, result: dict, checks: _Checks):
    for i, row in enumerate(result['rows']):
        report = tile_check(decode_box(row['base']), decode_vector(row['scales']))
        checks.add(f'tiling of row {i}', report.ok)


_VERIFIERS: Dict[str, Callable[[RunConfig, dict, dict, _Checks], None]] = {
    'cantor-info': _cantor_info,
    'measure': _measure,
    'split-check': _split_check,
    'clip-check': _clip_check,
    'rn-enumerate': _rn_enumerate,
    'cover-search': _cover_search,
    'uncovered-box': _uncovered_box,
    'infinite-cube': _infinite_cube,
    'pack': _pack,
    'hausdorff-bound': _hausdorff_bound,
    'corollary-demo': _corollary_demo,
    'range-solve': _range_solve,
    'tile-check': _tile_check,
}


def replay(report: dict) -> dict:
    """
    Args:
        report (dict): a parsed report as printed by a subcommand

    Returns:
        {"command": ..., "verified": bool, "checks": [{"name": ..., "ok": ...}, ...]}
    """
    try:
        command = report['command']
        verifier = _VERIFIERS[command]
    except (KeyError, TypeError) as err:
        raise PreconditionError(f'Not a fatcantor report: missing or unknown command ({err}).') from err

    config = RunConfig.from_dict(report.get('config', {}))
    checks = _Checks()
    try:
        verifier(config, report['inputs'], report['result'], checks)
    except (KeyError, IndexError, TypeError, ValueError) as err:
        raise PreconditionError(f'Malformed {command} report: {err!r}') from err

    logger.info(f'Replayed {len(checks.items)} checks of a {command} report.')
    return dict(command=command, verified=checks.verified, checks=checks.items)
