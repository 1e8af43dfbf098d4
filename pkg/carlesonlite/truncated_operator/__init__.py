from .truncation import *
from .subspaces import *
from .unitary import *
from .resolvent import *
from .spectrum import *

'''Philosophy

In kernel coordinates S* is diagonal

NodeFamily + GramMatrix
  -> (build_truncation) TruncatedOperator: c_j -> c_j / lambda_j
  -> (subspaces) H_1 and H~_1, the null spaces of f(0) and (zf)_inf
  -> (build_unitary) U = T on H_1, a unimodular phase on the complement

All the geometry lives in G, all the dynamics in the diagonal

'''
