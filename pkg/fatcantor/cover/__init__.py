from fatcantor.cover.hull import *
from fatcantor.cover.witness import *
from fatcantor.cover.search import *
from fatcantor.cover.report import *
