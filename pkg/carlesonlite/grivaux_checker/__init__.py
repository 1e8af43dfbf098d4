from .criterion import *
from .continuity import *
from .orbit import *
