'''
Boundary modulus w = max(d^p, floor) of the weight phi on a uniform grid.
'''
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import RangeError, ResolutionError
from ..carleson_sets import TWO_PI, CarlesonSet, distance_to_set_many

__all__ = ['MIN_GRID_SIZE', 'MAX_GRID_SIZE', 'WeightGrid', 'grid_angles', 'boundary_weight']

MIN_GRID_SIZE = 2 ** 8
MAX_GRID_SIZE = 2 ** 22


def grid_angles(grid_size):
    '''theta_k = 2*pi*k/N, k = 0..N-1.'''
    return TWO_PI * np.arange(grid_size) / grid_size


def _check_grid_size(grid_size):
    if (not isinstance(grid_size, (int, np.integer)) or grid_size < MIN_GRID_SIZE
            or grid_size > MAX_GRID_SIZE or grid_size & (grid_size - 1)):
        raise RangeError(f'grid_size must be a power of two in [{MIN_GRID_SIZE}, {MAX_GRID_SIZE}]. '
                         f'Get: {grid_size}')


@dataclass(frozen=True)
class WeightGrid:
    '''Samples of |phi| on the uniform boundary grid.

    Args:
        modulus (np.ndarray): w(theta_k), k = 0..N-1, all positive.
        exponent (float): p in w = d^p.
        floor (float): clamp value used where d^p falls below it.
        carleson_set (CarlesonSet, optional): the zero set E the grid was built from.
    '''
    modulus: np.ndarray
    exponent: float
    floor: float
    carleson_set: Optional[CarlesonSet] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        modulus = np.asarray(self.modulus, dtype=float)
        if modulus.ndim != 1:
            raise ValueError('modulus must be a 1-d array.')
        _check_grid_size(len(modulus))
        if np.any(~np.isfinite(modulus)) or np.any(modulus <= 0):
            raise ValueError('Weight samples must be finite and positive (clamp before building).')
        modulus.setflags(write=False)
        object.__setattr__(self, 'modulus', modulus)

    @property
    def grid_size(self) -> int:
        return len(self.modulus)

    @property
    def angles(self):
        return grid_angles(self.grid_size)

    @property
    def floor_mask(self):
        '''Grid points where the clamp is active.'''
        return self.modulus <= self.floor

    @property
    def mean_log(self) -> float:
        return float(np.mean(np.log(self.modulus)))


def boundary_weight(carleson_set, exponent=2.0, grid_size=2 ** 16):
    '''Sample w(theta_k) = max(d(theta_k)^p, (2*pi/N)^p) with d = distance to E.

    Args:
        carleson_set (CarlesonSet): the zero set E.
        exponent (float, optional): p >= 1. Defaults to 2.0.
        grid_size (int, optional): N, a power of two in [256, 2^22]. Defaults to 2^16.

    Raises:
        RangeError: invalid exponent or grid size.
        ResolutionError: the grid does not resolve the smallest complementary arc
            (length < 4/N); the error names the required N.

    Returns:
        WeightGrid: the sampled modulus.
    '''
    if exponent < 1:
        raise RangeError(f'exponent must be at least 1. Get: {exponent}')
    _check_grid_size(grid_size)

    if carleson_set.n_arcs:
        smallest = float(carleson_set.lengths.min())
        if smallest < 4 / grid_size:
            required = 2 ** math.ceil(math.log2(4 / smallest))
            raise ResolutionError(f'Grid N = {grid_size} does not resolve the smallest complementary '
                                  f'arc (length {smallest:.3e}). Required: N >= {required}.',
                                  required)

    floor = (TWO_PI / grid_size) ** exponent
    distance = distance_to_set_many(grid_angles(grid_size), carleson_set)
    modulus = np.maximum(distance ** exponent, floor)
    return WeightGrid(modulus, float(exponent), floor, carleson_set)
