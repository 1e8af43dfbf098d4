'''
Inner functions: finite Blaschke products times a unimodular constant, with
optional elementary singular factors exp(-m (tau + z) / (tau - z)).
'''
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..errors import DomainError, RangeError
from ..carleson_sets import TWO_PI

__all__ = ['ZERO_MARGIN', 'InnerFunction', 'evaluate_inner', 'boundary_phase', 'phase_derivative',
           'tracking_grid_size']

ZERO_MARGIN = 1e-12
SINGULAR_MARGIN = 1e-8


@dataclass(frozen=True)
class InnerFunction:
    '''Theta = front * prod_k b_{a_k} * prod_l exp(-m_l (tau_l + z) / (tau_l - z)).

    Args:
        blaschke_zeros (np.ndarray): zeros a_k with |a_k| < 1 - 1e-12, repeats allowed.
        unimodular_front (complex, optional): the constant. Defaults to 1.
        singular_mass_at (Tuple[Tuple[complex, float], ...], optional): (tau, m) pairs.

    Raises:
        RangeError: a zero on or outside the circle, a non-unimodular front or
            singular point, or a negative mass.
    '''
    blaschke_zeros: np.ndarray
    unimodular_front: complex = 1.0
    singular_mass_at: Tuple = field(default=())

    def __post_init__(self):
        zeros = np.atleast_1d(np.asarray(self.blaschke_zeros, dtype=complex))
        if np.any(np.abs(zeros) >= 1 - ZERO_MARGIN):
            raise RangeError(f'Blaschke zeros must satisfy |a| < 1 - {ZERO_MARGIN}. '
                             f'Get: max |a| = {np.abs(zeros).max()}')
        front = complex(self.unimodular_front)
        if abs(abs(front) - 1) > 1e-12:
            raise RangeError(f'The front constant must be unimodular. Get: |c| = {abs(front)}')
        singular = tuple((complex(tau), float(mass)) for tau, mass in self.singular_mass_at)
        for tau, mass in singular:
            if abs(abs(tau) - 1) > 1e-12 or mass < 0:
                raise RangeError(f'Singular factors need |tau| = 1 and mass >= 0. Get: ({tau}, {mass})')
        zeros.setflags(write=False)
        object.__setattr__(self, 'blaschke_zeros', zeros)
        object.__setattr__(self, 'unimodular_front', front)
        object.__setattr__(self, 'singular_mass_at', singular)

    @property
    def degree(self) -> int:
        return len(self.blaschke_zeros)

    @property
    def is_finite_blaschke(self) -> bool:
        return all(mass == 0 for _, mass in self.singular_mass_at)

    def to_dict(self):
        return {'zeros': [[float(a.real), float(a.imag)] for a in self.blaschke_zeros],
                'front': [self.unimodular_front.real, self.unimodular_front.imag],
                'singular': [[[t.real, t.imag], m] for t, m in self.singular_mass_at]}


def _blaschke_factors(zeros, z):
    '''b_a(z) = (conj(a)/|a|) (a - z) / (1 - conj(a) z), and z for a = 0.'''
    z = z[:, None]
    a = zeros[None, :]
    modulus = np.abs(a)
    safe = np.where(modulus > 0, modulus, 1)
    factor = (a.conj() / safe) * (a - z) / (1 - a.conj() * z)
    return np.where(modulus > 0, factor, z)


def evaluate_inner(theta, z):
    '''Theta(z) for |z| <= 1.

    Args:
        theta (InnerFunction): Theta.
        z (complex or np.ndarray): points of the closed disk.

    Raises:
        DomainError: |z| > 1, or a boundary point within 1e-8 of a singular point.

    Returns:
        complex or np.ndarray: Theta(z).
    '''
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(points) > 1 + 1e-12):
        raise DomainError(f'Inner functions are evaluated on the closed disk. '
                          f'Get: max |z| = {np.abs(points).max()}')

    values = np.full(points.shape, theta.unimodular_front, dtype=complex)
    if theta.degree:
        values *= np.prod(_blaschke_factors(theta.blaschke_zeros, points), axis=1)
    for tau, mass in theta.singular_mass_at:
        if mass == 0:
            continue
        if np.any(np.abs(points - tau) <= SINGULAR_MARGIN):
            raise DomainError(f'Evaluation point within {SINGULAR_MARGIN} of the singular point {tau}.')
        values *= np.exp(-mass * (tau + points) / (tau - points))
    return complex(values[0]) if np.ndim(z) == 0 else values


def phase_derivative(theta, angles):
    '''d/dt arg Theta(e^{it}) = sum_k (1 - |a_k|^2) / |e^{it} - a_k|^2 = |Theta'(e^{it})|.

    Finite Blaschke products only.
    '''
    points = np.exp(1j * np.atleast_1d(np.asarray(angles, dtype=float)))
    a = theta.blaschke_zeros
    if len(a) == 0:
        return np.zeros(points.shape)
    return ((1 - np.abs(a) ** 2)[None, :] / np.abs(points[:, None] - a[None, :]) ** 2).sum(axis=1)


def boundary_phase(theta, angles):
    '''Continuous arg Theta(e^{it}) along increasing angles.

    Each Blaschke factor is unwrapped separately, which is exact as long as
    no factor turns by pi between neighboring samples.

    Args:
        theta (InnerFunction): a finite Blaschke product.
        angles (np.ndarray): increasing angles.

    Returns:
        np.ndarray: the phase, the sum of the principal factor arguments at the first angle.
    '''
    angles = np.asarray(angles, dtype=float)
    points = np.exp(1j * angles)
    phase = np.full(angles.shape, np.angle(theta.unimodular_front))
    if theta.degree:
        factors = _blaschke_factors(theta.blaschke_zeros, points)
        phase = phase + np.unwrap(np.angle(factors), axis=0).sum(axis=1)
    return phase


def tracking_grid_size(theta, minimum=2 ** 14, maximum=2 ** 24):
    '''Smallest power-of-two grid on which each factor turns by less than pi/4 per step.'''
    a = np.abs(theta.blaschke_zeros)
    steepest = float(((1 + a) / (1 - a)).max()) if len(a) else 1.0
    size = minimum
    while size < maximum and steepest * TWO_PI / size >= np.pi / 4:
        size *= 2
    return size
