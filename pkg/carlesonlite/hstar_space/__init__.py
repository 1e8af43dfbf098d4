from .kernels import *
from .gram import *
