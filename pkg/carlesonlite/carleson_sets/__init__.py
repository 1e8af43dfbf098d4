from .basic_arcs import *
from .carleson_set import *
from .generators import *
from .entropy import *

'''Philosophy

E is what the arcs leave behind

Arcs are removed generation by generation
  -> (sample_nodes) endpoints of removed arcs are points of E that are never isolated

A set is a list of arcs

'''
