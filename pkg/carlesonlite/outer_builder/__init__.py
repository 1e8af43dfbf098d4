from .weight import *
from .outer import *

'''Philosophy

|phi| is prescribed on the boundary, everything else follows

CarlesonSet
  -> (boundary_weight) WeightGrid: w = max(d^p, floor)
  -> (outer_function) OuterFunction: arg phi is the conjugate function of log w

The grid is the only representation of phi

'''
