from fatcantor.ring.expressions import *
from fatcantor.ring.clipping import *
from fatcantor.ring.ring import *
from fatcantor.ring.enumeration import *
