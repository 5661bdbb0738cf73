from fatcantor.packing.dyadic import *
from fatcantor.packing.layout import *
