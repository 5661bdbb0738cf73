import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations, product
from typing import List, Optional, Tuple

from fatcantor.errors import PreconditionError
from fatcantor.log_config import PACKAGE_LOGGER
from fatcantor.geometry import Box
from fatcantor.cantor import CantorSchedule, NeedsDeeperStage, DEFAULT_MAX_STAGE_EXPONENT, DEFAULT_WITNESS_MARGIN
from fatcantor.ring import Gen
from fatcantor.cover.witness import UncoveredWitness, find_uncovered_box, verify_witness
from fatcantor.parallelize_ops import parallel_map

__all__ = [
    'WitnessRow',
    'CubeReport',
    'grid_pool',
    'infinite_cube_report',
    'DEFAULT_EXHAUSTIVE_LIMIT',
]

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 10


@dataclass(frozen=True)
class WitnessRow(object):
    subset: Tuple[int, ...]
    result: object
    verified: bool

    @property
    def inconclusive(self) -> bool:
        return isinstance(self.result, NeedsDeeperStage)


@dataclass(frozen=True)
class CubeReport(object):
    d: int
    pool: Tuple[Gen, ...]
    stage_cap: int
    exhaustive: bool
    rows: Tuple[WitnessRow, ...]

    @property
    def witnesses(self) -> int:
        return sum(1 for row in self.rows if isinstance(row.result, UncoveredWitness))

    @property
    def inconclusive(self) -> int:
        return sum(1 for row in self.rows if row.inconclusive)

    @property
    def all_verified(self) -> bool:
        return all(row.verified for row in self.rows if not row.inconclusive)


def grid_pool(d: int, pool_size: int) -> List[Gen]:
    """
    The first `pool_size` translates x in {0, 1/g, ..., (g-1)/g}^d in
    lexicographic order, g the least integer with g^d >= pool_size, each
    clipped to the unit cube.
    """
    if pool_size < 0:
        raise PreconditionError(f'Pool size must be nonnegative, got {pool_size}.')
    if pool_size == 0:
        return []
    g = 1
    while g ** d < pool_size:
        g += 1
    cube = Box.unit(d)
    points = product(range(g), repeat=d)
    return [Gen(tuple(Fraction(k, g) for k in ks), cube) for ks, _ in zip(points, range(pool_size))]


def _witness_row(subset: Tuple[int, ...], schedule: CantorSchedule, pool: Tuple[Gen, ...], stage_cap: int,
                 margin: Fraction, sweep_fallback: bool, max_stage_exponent: int) -> WitnessRow:
    target = Box.unit(schedule.d)
    elements = [pool[i] for i in subset]
    result = find_uncovered_box(schedule, target, elements, stage_cap, margin, sweep_fallback, max_stage_exponent)
    verified = isinstance(result, UncoveredWitness) and verify_witness(schedule, target, elements, result)
    return WitnessRow(subset, result, verified)


def infinite_cube_report(schedule: CantorSchedule,
                         pool_size: int,
                         stage_cap: int,
                         exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
                         margin: Fraction = DEFAULT_WITNESS_MARGIN,
                         sweep_fallback: bool = True,
                         max_stage_exponent: int = DEFAULT_MAX_STAGE_EXPONENT,
                         parallel_computation: bool = False,
                         max_cores: int = 4,
                         pool: Optional[List[Gen]] = None) -> CubeReport:
    """
    Uncovered-box witnesses in [0, 1]^d for subfamilies of a pool of clipped
    grid translates.

    Every nonempty subfamily is tried when the pool has at most
    `exhaustive_limit` members; otherwise only the full pool, whose witness
    also misses each of its subfamilies. An empty pool gives one witness for
    the empty family.
    """
    pool = tuple(pool if pool is not None else grid_pool(schedule.d, pool_size))

    if not pool:
        subsets = [()]
        exhaustive = True
    elif len(pool) <= exhaustive_limit:
        subsets = [s for size in range(1, len(pool) + 1) for s in combinations(range(len(pool)), size)]
        exhaustive = True
    else:
        subsets = [tuple(range(len(pool)))]
        exhaustive = False

    logger.info(f'Searching witnesses for {len(subsets)} subfamilies of a pool of {len(pool)} in d={schedule.d}.')

    task = partial(_witness_row, schedule=schedule, pool=pool, stage_cap=stage_cap, margin=margin,
                   sweep_fallback=sweep_fallback, max_stage_exponent=max_stage_exponent)
    rows = parallel_map(task, subsets, parallel_computation, max_cores,
                        log_level=logging.getLogger(PACKAGE_LOGGER).getEffectiveLevel(), desc='witnesses')

    report = CubeReport(schedule.d, pool, stage_cap, exhaustive, tuple(rows))
    if report.inconclusive:
        logger.warning(f'{report.inconclusive} of {len(rows)} subfamilies are inconclusive at stage cap {stage_cap}.')
    return report
