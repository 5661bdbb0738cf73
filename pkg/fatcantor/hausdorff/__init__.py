from fatcantor.hausdorff.gauge import *
from fatcantor.hausdorff.covers import *
from fatcantor.hausdorff.pipeline import *
from fatcantor.hausdorff.range_solver import *
