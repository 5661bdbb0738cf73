"""
Exact JSON codecs. Rationals are "p/q" strings, infinities "inf" / "-inf",
values of Q[sqrt(r)] are {"a": ..., "b": ..., "sqrt": r} unless rational.
Decoders accept what the encoders emit (and integers where a rational is due).
"""

import json
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from functools import singledispatch
from typing import List

from fatcantor.errors import PreconditionError
from fatcantor.geometry import (
    Box,
    BoxUnion,
    ExtendedRational,
    Infinity,
    OpenBox,
    format_coordinate,
    format_rational,
    parse_coordinate,
    parse_rational,
)
from fatcantor.cantor import CantorSchedule, GapCertificate, NeedsDeeperStage
from fatcantor.ring import RingExpr, Gen, Union, Diff, Inter, MeasureBounds
from fatcantor.cover import LeafCertificate, UncoveredWitness, WitnessStrategy
from fatcantor.packing import CubeFamily, MergeStep, PackingLayout, Placement
from fatcantor.hausdorff import DeltaCover, Gauge, InequalityCheck

__all__ = [
    'to_json',
    'dumps',
    'decode_rational',
    'decode_vector',
    'decode_number',
    'decode_box',
    'decode_open_box',
    'decode_box_union',
    'decode_schedule',
    'decode_expr',
    'decode_exprs',
    'decode_gap_certificate',
    'decode_witness',
    'decode_cube_family',
    'decode_layout',
]

_BINARY_NODES = {'union': Union, 'diff': Diff, 'inter': Inter}


@singledispatch
def to_json(obj):
    if is_dataclass(obj):
        return {f.name: to_json(getattr(obj, f.name)) for f in fields(obj)}
    raise TypeError(f'No JSON codec for {type(obj).__name__}.')


@to_json.register(type(None))
@to_json.register(bool)
@to_json.register(int)
@to_json.register(str)
def _(obj):
    return obj


@to_json.register(float)
def _(obj):
    raise TypeError(f'Refusing to emit the inexact float {obj!r}.')


@to_json.register(Fraction)
def _(obj):
    return format_rational(obj)


@to_json.register(Infinity)
def _(obj):
    return format_coordinate(obj)


@to_json.register(Enum)
def _(obj):
    return obj.value


@to_json.register(tuple)
@to_json.register(list)
def _(obj):
    return [to_json(item) for item in obj]


@to_json.register(dict)
def _(obj):
    return {str(k): to_json(v) for k, v in obj.items()}


@to_json.register(ExtendedRational)
def _(obj):
    if obj.is_rational:
        return format_rational(obj.a)
    return {'a': format_rational(obj.a), 'b': format_rational(obj.b), 'sqrt': obj.radicand}


@to_json.register(Box)
def _(obj):
    return {'lo': [format_coordinate(v) for v in obj.lo], 'hi': [format_coordinate(v) for v in obj.hi]}


@to_json.register(OpenBox)
def _(obj):
    return {'lo': [format_rational(v) for v in obj.lo], 'hi': [format_rational(v) for v in obj.hi]}


@to_json.register(BoxUnion)
def _(obj):
    return {'dim': obj.dim, 'boxes': [to_json(box) for box in obj.boxes]}


@to_json.register(CantorSchedule)
def _(obj):
    return {'d': obj.d, 'c': format_rational(obj.c), 'rho': format_rational(obj.rho)}


@to_json.register(Gauge)
def _(obj):
    return {'s': obj.s}


@to_json.register(RingExpr)
def _(obj):
    if isinstance(obj, Gen):
        return {'gen': {'x': [format_rational(v) for v in obj.x], 'clip': to_json(obj.clip)}}
    for key, node in _BINARY_NODES.items():
        if isinstance(obj, node):
            return {key: [to_json(obj.left), to_json(obj.right)]}
    raise TypeError(f'Unknown expression node {type(obj).__name__}.')


@to_json.register(MeasureBounds)
def _(obj):
    return {
        'lower': format_rational(obj.lower),
        'upper': format_rational(obj.upper),
        'width': format_rational(obj.width),
        'stage': obj.stage,
        'leaf_count': obj.leaf_count,
    }


@to_json.register(NeedsDeeperStage)
def _(obj):
    return {'needs_deeper_stage': obj.stage}


@to_json.register(InequalityCheck)
def _(obj):
    return {
        'name': obj.name,
        'lhs': to_json(obj.lhs),
        'relation': obj.relation,
        'rhs': to_json(obj.rhs),
        'holds': obj.holds,
        'informational': obj.informational,
    }


@to_json.register(DeltaCover)
def _(obj):
    return {
        'd': obj.d,
        'side': format_rational(obj.side),
        'diameter': to_json(obj.diameter),
        'count': obj.count,
        'stage': obj.stage,
        'delta': to_json(obj.delta),
        'gauge': to_json(obj.gauge),
        'gauge_sum': to_json(obj.gauge_sum),
        'corners': to_json(obj.corners),
    }


def dumps(document: dict) -> str:
    """The canonical text of a report: indent 2, keys in insertion order."""
    return json.dumps(to_json(document), indent=2, ensure_ascii=False)


def decode_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise PreconditionError(f'Expected an exact rational, got {value!r}.')
    try:
        return parse_rational(value)
    except (ValueError, TypeError) as err:
        raise PreconditionError(str(err)) from err


def decode_vector(values) -> tuple:
    return tuple(decode_rational(v) for v in values)


def decode_number(value):
    """A rational string or a Q[sqrt(r)] object."""
    if isinstance(value, dict):
        return ExtendedRational(decode_rational(value['a']), decode_rational(value['b']), int(value['sqrt']))
    return decode_rational(value)


def _decode_coordinates(values) -> tuple:
    try:
        return tuple(parse_coordinate(v) for v in values)
    except (ValueError, TypeError) as err:
        raise PreconditionError(str(err)) from err


def decode_box(data: dict) -> Box:
    try:
        return Box(_decode_coordinates(data['lo']), _decode_coordinates(data['hi']))
    except KeyError as err:
        raise PreconditionError(f'Box is missing {err}.') from err


def decode_open_box(data: dict) -> OpenBox:
    return OpenBox(decode_vector(data['lo']), decode_vector(data['hi']))


def decode_box_union(data: dict) -> BoxUnion:
    return BoxUnion.from_boxes([decode_box(b) for b in data['boxes']], int(data['dim']))


def decode_schedule(data: dict) -> CantorSchedule:
    return CantorSchedule(int(data['d']), decode_rational(data['c']), decode_rational(data['rho']))


def decode_expr(data: dict) -> RingExpr:
    if not isinstance(data, dict) or len(data) != 1:
        raise PreconditionError(f'An expression is a one-key object, got {data!r}.')
    (key, value), = data.items()
    if key == 'gen':
        return Gen(decode_vector(value['x']), decode_box(value['clip']))
    if key in _BINARY_NODES:
        if len(value) != 2:
            raise PreconditionError(f'"{key}" takes two operands, got {len(value)}.')
        return _BINARY_NODES[key](decode_expr(value[0]), decode_expr(value[1]))
    raise PreconditionError(f'Unknown expression node "{key}".')


def decode_exprs(data) -> List[RingExpr]:
    return [decode_expr(item) for item in data]


def decode_gap_certificate(data: dict) -> GapCertificate:
    return GapCertificate(int(data['stage']), decode_open_box(data['box']), int(data['axis']))


def decode_witness(data: dict) -> UncoveredWitness:
    certificates = tuple(
        LeafCertificate(
            int(c['element']),
            int(c['leaf']),
            None if c.get('stage') is None else int(c['stage']),
            None if c.get('gap') is None else decode_gap_certificate(c['gap']),
        )
        for c in data['certificates']
    )
    return UncoveredWitness(decode_open_box(data['box']), int(data['stage']), certificates,
                            WitnessStrategy(data['strategy']))


def decode_cube_family(data: dict) -> CubeFamily:
    return CubeFamily(decode_vector(data['sides']), int(data['d']))


def decode_layout(data: dict) -> PackingLayout:
    return PackingLayout(
        placements=tuple(Placement(int(p['j']), decode_vector(p['t'])) for p in data['placements']),
        target=decode_box(data['target']),
        merge_tree=tuple(
            MergeStep(int(s['level']), tuple(int(i) for i in s['constituents']), int(s['result']),
                      tuple(decode_vector(o) for o in s['offsets']))
            for s in data['merge_tree']
        ),
        selected=int(data['selected']),
        alpha=decode_rational(data['alpha']),
        rounded_volume=decode_rational(data['rounded_volume']),
        family_volume=decode_rational(data['family_volume']),
    )
