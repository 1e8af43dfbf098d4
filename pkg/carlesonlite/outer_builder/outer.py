'''
The outer function phi with prescribed boundary modulus.

phi(z) = exp((1/2pi) * integral of (e^{it} + z)/(e^{it} - z) * log w(t) dt).
On the boundary log|phi| = log w and arg phi is the conjugate function of
log w, computed spectrally.
'''
import json
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, CertificateRefusedError
from .weight import WeightGrid

__all__ = ['MAX_INTERIOR_RADIUS', 'OuterFunction', 'conjugate_function', 'outer_function',
           'evaluate_inside', 'boundedness_certificate', 'load_outer_function']

MAX_INTERIOR_RADIUS = 0.999


def conjugate_function(samples):
    '''Circular Hilbert transform of real periodic samples.

    Fourier coefficient n is multiplied by -i*sign(n); the mean and, for even
    length, the Nyquist coefficient are sent to zero.

    Args:
        samples (np.ndarray): real samples on a uniform grid.

    Returns:
        np.ndarray: the real conjugate samples.
    '''
    samples = np.asarray(samples, dtype=float)
    n = len(samples)
    coefficients = np.fft.rfft(samples)
    multiplier = np.full(len(coefficients), -1j)
    multiplier[0] = 0
    if n % 2 == 0:
        multiplier[-1] = 0
    return np.fft.irfft(coefficients * multiplier, n)


@dataclass(frozen=True)
class OuterFunction:
    '''The weight phi: boundary modulus, boundary phase and phi(0).

    Args:
        weight (WeightGrid): |phi| on the grid.
        phase (np.ndarray): arg phi on the grid.
        value_at_zero (complex): phi(0).
    '''
    weight: WeightGrid
    phase: np.ndarray
    value_at_zero: complex

    def __post_init__(self):
        phase = np.asarray(self.phase, dtype=float)
        if phase.shape != self.weight.modulus.shape:
            raise ValueError(f'phase must match the weight grid. Expect: {self.weight.modulus.shape}, '
                             f'Get: {phase.shape}')
        phase.setflags(write=False)
        object.__setattr__(self, 'phase', phase)

    @property
    def grid_size(self) -> int:
        return self.weight.grid_size

    @property
    def exponent(self) -> float:
        return self.weight.exponent

    def boundary_values(self):
        '''phi(e^{i theta_k}) = w_k * exp(i * phase_k).'''
        return self.weight.modulus * np.exp(1j * self.phase)

    def to_dict(self):
        return {
            'N': self.grid_size,
            'p': self.weight.exponent,
            'floor': self.weight.floor,
            'modulus': self.weight.modulus.tolist(),
            'phase': self.phase.tolist(),
            'phi0': [float(self.value_at_zero.real), float(self.value_at_zero.imag)],
        }

    @classmethod
    def from_dict(cls, data):
        weight = WeightGrid(np.array(data['modulus'], dtype=float), float(data['p']), float(data['floor']))
        if len(weight.modulus) != data['N']:
            raise ValueError(f'Sample count does not match N. Expect: {data["N"]}, '
                             f'Get: {len(weight.modulus)}')
        return cls(weight, np.array(data['phase'], dtype=float), complex(*data['phi0']))

    def save(self, path):
        with open(path, 'w') as fp:
            json.dump(self.to_dict(), fp)


def load_outer_function(path):
    '''Load an OuterFunction written by ``OuterFunction.save``.'''
    with open(path, 'r') as fp:
        return OuterFunction.from_dict(json.load(fp))


def outer_function(weight):
    '''Build the outer function with boundary modulus ``weight``.

    Args:
        weight (WeightGrid): the boundary modulus.

    Raises:
        RuntimeError: non-finite log w samples.

    Returns:
        OuterFunction: phi.
    '''
    log_w = np.log(weight.modulus)
    if not np.all(np.isfinite(log_w)):
        raise RuntimeError('Non-finite log w sample: the clamp floor did not take effect.')
    phase = conjugate_function(log_w)
    return OuterFunction(weight, phase, complex(np.exp(np.mean(log_w))))


def evaluate_inside(outer, z, chunk_size=2 ** 20):
    '''Evaluate phi inside the disk by trapezoidal Herglotz quadrature.

    The relative error behaves like O(1 / ((1 - |z|) N)).

    Args:
        outer (OuterFunction): phi.
        z (complex or np.ndarray): points with |z| <= 0.999.
        chunk_size (int, optional): bound on grid-by-point products held in memory.

    Raises:
        DomainError: a point with |z| > 0.999.

    Returns:
        complex or np.ndarray: phi(z).
    '''
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(points) > MAX_INTERIOR_RADIUS):
        raise DomainError(f'evaluate_inside is restricted to |z| <= {MAX_INTERIOR_RADIUS}. '
                          f'Get: max |z| = {np.abs(points).max()}')

    log_w = np.log(outer.weight.modulus)
    boundary = np.exp(1j * outer.weight.angles)
    n = outer.grid_size
    exponent = np.empty(points.shape, dtype=complex)
    step = max(1, chunk_size // n)
    for i in range(0, len(points), step):
        block = points[i:i + step, None]
        kernel = (boundary[None, :] + block) / (boundary[None, :] - block)
        exponent[i:i + step] = kernel @ log_w / n
    values = np.exp(exponent)
    return complex(values[0]) if np.ndim(z) == 0 else values


def boundedness_certificate(outer, nodes, chunk_size=2 ** 22):
    '''sup over grid points and nodes of |phi(z) / (z - lambda)|.

    Clamp-floor points are excluded unless the clamp is active everywhere,
    in which case the value is floor / (minimal grid-to-node distance).

    Args:
        outer (OuterFunction): phi with w = d^p.
        nodes (NodeFamily): nodes in E.

    Raises:
        CertificateRefusedError: p < 2.

    Returns:
        float: the certificate, at most 2^(p-1) up to rounding.
    '''
    weight = outer.weight
    if weight.exponent < 2:
        raise CertificateRefusedError(f'The bound sup |phi/(z - lambda)| is only guaranteed for p >= 2. '
                                      f'Get: p = {weight.exponent}')

    mask = ~weight.floor_mask
    if not np.any(mask):
        mask = np.ones(weight.grid_size, dtype=bool)
    boundary = np.exp(1j * weight.angles[mask])
    modulus = weight.modulus[mask]

    best = 0.0
    step = max(1, chunk_size // max(1, len(boundary)))
    for i in range(0, len(nodes), step):
        distance = np.abs(boundary[:, None] - nodes.nodes[None, i:i + step])
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(distance > 0, modulus[:, None] / distance, 0.0)
        best = max(best, float(ratio.max()))
    return best
