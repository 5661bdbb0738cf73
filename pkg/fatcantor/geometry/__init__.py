from fatcantor.geometry.rationals import *
from fatcantor.geometry.surds import *
from fatcantor.geometry.boxes import *
from fatcantor.geometry.tiling import *
