from fatcantor.errors import *
from fatcantor.geometry import *
from fatcantor.cantor import *
from fatcantor.ring import *
from fatcantor.cover import *
from fatcantor.packing import *
from fatcantor.hausdorff import *
from fatcantor.log_config import set_log_config
from fatcantor.app_config import (
    RunConfig,
    ScheduleConfig,
    StagesConfig,
    SearchConfig,
    ToleranceConfig,
    ParallelConfig,
    LogConfig,
    OutputConfig,
)
from fatcantor.config import Config
from fatcantor.package_info import __version__
