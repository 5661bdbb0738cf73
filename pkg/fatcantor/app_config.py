import logging
from collections import OrderedDict
from fractions import Fraction
from pathlib import Path

from fatcantor.config import Config
from fatcantor.errors import PreconditionError

__all__ = [
    'ScheduleConfig',
    'StagesConfig',
    'SearchConfig',
    'ToleranceConfig',
    'ParallelConfig',
    'LogConfig',
    'OutputConfig',
    'RunConfig',
    'PROGRAM_PATH',
    'RUN_LOGS_PATH',
    'TIME_RECORDS_PATH',
]

PROGRAM_PATH = Path(__file__).parents[1].absolute()
RUN_LOGS_PATH = PROGRAM_PATH / 'run_logs'
TIME_RECORDS_PATH: Path = PROGRAM_PATH / 'time_records'


class ScheduleConfig(Config):
    d: int = 1
    c: Fraction = Fraction(1)
    rho: Fraction = Fraction(1, 4)

    CONF_NAME = 'Cantor Schedule'

    PARAM_DESCRIPTIONS = dict(
        d='Dimension of the product set C^d',
        c='Scale of the removal schedule r_k = c * rho^k',
        rho='Ratio of the removal schedule, 0 < rho < 1/2',
    )


class StagesConfig(Config):
    stage_cap: int = 12
    max_stage_exponent: int = 16
    reference_stage: int = 4
    witness_margin: Fraction = Fraction(1, 4)

    CONF_NAME = 'Stages'

    PARAM_DESCRIPTIONS = dict(
        stage_cap='Deepest stage used by certified bounds and witness searches',
        max_stage_exponent='Explicit stage sets are built only while n * d <= this value',
        reference_stage='Stage at which R_n candidates are deduplicated',
        witness_margin='Fraction of a gap kept away from its walls by witness boxes, in (0, 1/2)',
    )


class SearchConfig(Config):
    budget: int = 256
    exhaustive_limit: int = 10
    max_expressions: int = 2000
    cover_stage: int = 6

    CONF_NAME = 'Cover Search'

    PARAM_DESCRIPTIONS = dict(
        budget='Max number of subfamilies examined by the exhaustive cover search',
        exhaustive_limit='Pools up to this size are checked subfamily by subfamily',
        max_expressions='Max number of distinct expressions generated per R_n level',
        cover_stage='Stage of the premeasure bounds used to rank covers',
    )


class ToleranceConfig(Config):
    tol: Fraction = Fraction(1, 1024)
    max_bisections: int = 200

    CONF_NAME = 'Tolerance'

    PARAM_DESCRIPTIONS = dict(
        tol='Target width of premeasure and range bounds',
        max_bisections='Max number of bisection steps of the level solver',
    )


class ParallelConfig(Config):
    parallel_computation: bool = False
    max_cores: int = 4

    CONF_NAME = 'Multiprocessing'

    PARAM_DESCRIPTIONS = dict(
        parallel_computation='Use a process pool for independent witness searches',
        max_cores='Max number of worker processes (use all the cores for non-positive values)',
    )


class LogConfig(Config):
    record_time: bool = False
    debug: bool = False
    log_to_file: bool = False

    CONF_NAME = 'Logging Parameters'

    PARAM_DESCRIPTIONS = dict(
        record_time='Record time used by each command stage',
        debug='Turn on logs for debugging',
        log_to_file='Duplicate logs to a file in run_logs/',
    )

    @property
    def logging_level(self) -> int:
        level = 'DEBUG' if self.debug else 'INFO'
        return logging.getLevelName(level)

    @property
    def no_time_record(self) -> bool:
        return not self.record_time


class OutputConfig(Config):
    out: str = ''
    seed: int = 0

    CONF_NAME = 'Output'

    PARAM_DESCRIPTIONS = dict(
        out='Write the JSON report to this path in addition to stdout',
        seed='Seed of the random instance generator (recorded in every report)',
    )


class RunConfig(Config):
    schedule: ScheduleConfig = ScheduleConfig()
    stages: StagesConfig = StagesConfig()
    search: SearchConfig = SearchConfig()
    tolerance: ToleranceConfig = ToleranceConfig()
    parallel: ParallelConfig = ParallelConfig()
    log_config: LogConfig = LogConfig()
    output: OutputConfig = OutputConfig()

    CONFIG_GROUPS = OrderedDict(
        schedule=ScheduleConfig,
        stages=StagesConfig,
        search=SearchConfig,
        tolerance=ToleranceConfig,
        parallel=ParallelConfig,
        log_config=LogConfig,
        output=OutputConfig,
    )

    @classmethod
    def _update_init_dict(cls, kwargs: dict):
        for name, conf_type in cls.CONFIG_GROUPS.items():
            if isinstance(kwargs[name], dict):
                kwargs[name] = conf_type(**kwargs[name])
        _validate(kwargs)

    def copy(self):
        return RunConfig(**{name: getattr(self, name).copy() for name in self.__annotations__.keys()})

    @classmethod
    def from_dict(cls, conf_dict: dict):
        return cls(*[
            conf_type(**conf_dict.get(conf_name, {})) if not isinstance(conf_dict.get(conf_name), Config)
            else conf_dict[conf_name]
            for conf_name, conf_type in cls.CONFIG_GROUPS.items()
        ])

    def asdict(self):
        return {name: getattr(self, name).asdict() for name in self.__annotations__.keys()}

    def __hash__(self):
        return hash(tuple(getattr(self, name) for name in self.__annotations__.keys()))

    def to_yaml_dict(self) -> dict:
        return {name: getattr(self, name).to_yaml_dict() for name in self.__annotations__.keys()}

    def update_group(self, name: str, **kwargs) -> 'RunConfig':
        """A copy with some fields of one group replaced (None values are ignored)."""
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        if not kwargs:
            return self
        return self.update(**{name: getattr(self, name).update(**kwargs)})

    @property
    def log_filename(self) -> str or None:
        if self.log_config.log_to_file:
            RUN_LOGS_PATH.mkdir(exist_ok=True)
            return str(RUN_LOGS_PATH / f'fatcantor_seed{self.output.seed}.log')

    @property
    def record_filename(self) -> str or None:
        if self.log_config.record_time:
            TIME_RECORDS_PATH.mkdir(exist_ok=True)
            return str(TIME_RECORDS_PATH / f'record_time_seed{self.output.seed}.json')


def _validate(kwargs: dict):
    stages, search, tolerance = kwargs['stages'], kwargs['search'], kwargs['tolerance']
    caps = dict(
        stage_cap=stages.stage_cap,
        max_stage_exponent=stages.max_stage_exponent,
        budget=search.budget,
        exhaustive_limit=search.exhaustive_limit,
        max_expressions=search.max_expressions,
        max_bisections=tolerance.max_bisections,
    )
    for name, value in caps.items():
        if value <= 0:
            raise PreconditionError(f'{name} must be positive, got {value}.')
    if stages.reference_stage < 0 or search.cover_stage < 0:
        raise PreconditionError('Stages must be nonnegative.')
    if tolerance.tol <= 0:
        raise PreconditionError(f'tol must be positive, got {tolerance.tol}.')
    if not 0 < stages.witness_margin < Fraction(1, 2):
        raise PreconditionError(f'witness_margin must lie in (0, 1/2), got {stages.witness_margin}.')
