from fatcantor.cantor.schedule import *
from fatcantor.cantor.membership import *
from fatcantor.cantor.gaps import *
from fatcantor.cantor.leaf_bounds import *
