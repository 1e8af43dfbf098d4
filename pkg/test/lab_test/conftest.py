from types import SimpleNamespace

import numpy as np
import pytest

from carlesonlite import (boundary_weight, build_truncation, cantor_like_set, gram_matrix,
                          outer_function, point_set, sample_nodes, subspaces, NodeFamily)


@pytest.fixture(scope='session')
def single_point_outer():
    '''E = {1}, p = 2, N = 2^16: |phi| = |1 - z|^2 on the circle, phi = (1 - z)^2.'''
    carleson_set = point_set([0.0])
    return outer_function(boundary_weight(carleson_set, 2.0, 2 ** 16))


@pytest.fixture(scope='session')
def single_point_gram(single_point_outer):
    return gram_matrix(NodeFamily(np.array([0.0])), single_point_outer)


@pytest.fixture(scope='session')
def cantor_setup():
    '''Middle thirds at depth 3, p = 2, N = 2^12, the 14 endpoints of generation 3.'''
    carleson_set = cantor_like_set(3, 1 / 3)
    outer = outer_function(boundary_weight(carleson_set, 2.0, 2 ** 12))
    nodes = sample_nodes(carleson_set, 3)
    gram = gram_matrix(nodes, outer)
    operator = build_truncation(nodes, gram)
    return SimpleNamespace(carleson_set=carleson_set, outer=outer, nodes=nodes, gram=gram,
                           operator=operator, pair=subspaces(operator))


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
