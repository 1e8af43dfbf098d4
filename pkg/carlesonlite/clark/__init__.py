from .inner import *
from .measure import *

'''Philosophy

A finite Blaschke product winds d times around the circle

InnerFunction
  -> (boundary_phase) a strictly increasing phase
  -> (clark_measure) one atom per crossing of arg(alpha) + 2*pi*m

'''
