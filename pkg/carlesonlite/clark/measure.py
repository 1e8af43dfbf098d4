'''
Clark measures of finite Blaschke products.

For an inner Theta and unimodular alpha,
Re (alpha + Theta(z)) / (alpha - Theta(z)) = (1/pi) sum_k w_k (1 - |z|^2) / |tau_k - z|^2
where Theta(tau_k) = alpha and w_k = pi / |Theta'(tau_k)|. Masses are stored
in this 1/pi convention; divide by pi for the normalized-Lebesgue one.
'''
import json
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from ..errors import DomainError, RangeError, RootTrackingError, UnsupportedInnerFunctionError
from ..carleson_sets import TWO_PI, interlaced
from .inner import evaluate_inner, boundary_phase, phase_derivative, tracking_grid_size

__all__ = ['NORMALIZATION', 'HERGLOTZ_TOL', 'ClarkMeasure', 'clark_measure', 'verify_herglotz',
           'clark_family_spectra', 'total_mass_law']

LOGGER = logging.getLogger(__name__)

NORMALIZATION = 'one-over-pi'
HERGLOTZ_TOL = 1e-8

# irrational grid offset so that no sample falls on a solution of Theta = alpha
GRID_OFFSET = 0.3819660112501051


@dataclass(frozen=True)
class ClarkMeasure:
    '''Atomic measure sum_k w_k delta_{tau_k}.

    Args:
        alpha (complex): the unimodular parameter.
        atoms (np.ndarray): the points tau_k, sorted by angle.
        masses (np.ndarray): the weights w_k > 0.
    '''
    alpha: complex
    atoms: np.ndarray
    masses: np.ndarray

    @property
    def total_mass(self) -> float:
        return math.fsum(self.masses)

    @property
    def atom_angles(self):
        return np.mod(np.angle(self.atoms), TWO_PI)

    def poisson_integral(self, z):
        '''(1/pi) sum_k w_k (1 - |z|^2) / |tau_k - z|^2.'''
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        kernel = (1 - np.abs(z[:, None]) ** 2) / np.abs(self.atoms[None, :] - z[:, None]) ** 2
        return kernel @ self.masses / math.pi

    def to_dict(self):
        return {'alpha': [self.alpha.real, self.alpha.imag],
                'atoms': [{'tau': [float(t.real), float(t.imag)], 'mass': float(m)}
                          for t, m in zip(self.atoms, self.masses)],
                'normalization': NORMALIZATION}

    def save(self, path):
        with open(path, 'w') as fp:
            json.dump(self.to_dict(), fp, sort_keys=True, indent=2)


def _check_alpha(alpha):
    alpha = complex(alpha)
    if abs(abs(alpha) - 1) > 1e-12:
        raise RangeError(f'alpha must be unimodular. Get: |alpha| = {abs(alpha)}')
    return alpha


def clark_measure(theta, alpha):
    '''Solve Theta(e^{it}) = alpha by phase tracking and assign the masses.

    The boundary phase of a degree-d product increases strictly by 2*pi*d per
    revolution, so every level arg(alpha) + 2*pi*m is crossed exactly once;
    each crossing is bracketed on the grid and refined with Brent's method.

    Args:
        theta (InnerFunction): a finite Blaschke product of degree d >= 1.
        alpha (complex): unimodular parameter.

    Raises:
        UnsupportedInnerFunctionError: Theta has singular factors.
        RangeError: degree 0 or alpha not unimodular.
        RootTrackingError: the number of solutions found differs from d.

    Returns:
        ClarkMeasure: the d atoms and their masses.
    '''
    alpha = _check_alpha(alpha)
    if not theta.is_finite_blaschke:
        raise UnsupportedInnerFunctionError('Clark measures are computed for finite Blaschke products '
                                            'only; Theta has singular factors.')
    degree = theta.degree
    if degree < 1:
        raise RangeError('clark_measure needs a Blaschke product of degree d >= 1.')

    size = tracking_grid_size(theta)
    step = TWO_PI / size
    angles = GRID_OFFSET * step + step * np.arange(size + 1)
    phase = boundary_phase(theta, angles)
    increments = np.diff(phase)
    if np.any(increments <= 0) or abs(phase[-1] - phase[0] - TWO_PI * degree) > 1e-6:
        raise RootTrackingError(f'Boundary phase is not strictly increasing by 2*pi*{degree} '
                                f'(total {phase[-1] - phase[0]:.6f}).')

    base = np.angle(alpha)
    first = math.ceil((phase[0] - base) / TWO_PI)
    levels = base + TWO_PI * np.arange(first, first + degree + 1)
    levels = levels[(levels >= phase[0]) & (levels < phase[-1])]

    def mismatch(t):
        return np.angle(evaluate_inner(theta, np.exp(1j * t)) / alpha)

    roots = []
    for level in levels:
        k = int(np.searchsorted(phase, level, side='right')) - 1
        a, b = angles[k], angles[k + 1]
        roots.append(scipy.optimize.brentq(mismatch, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if len(roots) != degree:
        raise RootTrackingError(f'Found {len(roots)} solutions of Theta = alpha. Expect: {degree}')

    roots = np.mod(np.array(roots), TWO_PI)
    roots.sort()
    masses = math.pi / phase_derivative(theta, roots)
    LOGGER.debug('Clark measure for alpha = %s: %d atoms on a grid of %d', alpha, degree, size)
    return ClarkMeasure(alpha, np.exp(1j * roots), masses)


def verify_herglotz(theta, measure, sample_points, tol=HERGLOTZ_TOL):
    '''Compare Re (alpha + Theta) / (alpha - Theta) with the Poisson integral of the measure.

    Raises:
        DomainError: a sample with |z| > 0.95.

    Returns:
        Dict: max_relative_error, sample_count, skipped, passed.
    '''
    z = np.atleast_1d(np.asarray(sample_points, dtype=complex))
    if np.any(np.abs(z) > 0.95):
        raise DomainError(f'verify_herglotz samples must satisfy |z| <= 0.95. Get: {np.abs(z).max()}')
    alpha = measure.alpha
    values = evaluate_inner(theta, z)
    denominator = alpha - values
    usable = np.abs(denominator) > 1e-14
    skipped = [[float(p.real), float(p.imag)] for p in z[~usable]]
    if skipped:
        warnings.warn(f'{len(skipped)} samples with alpha = Theta(z) skipped.')

    lhs = np.real((alpha + values[usable]) / denominator[usable])
    rhs = measure.poisson_integral(z[usable])
    errors = np.abs(lhs - rhs) / np.maximum(np.abs(lhs), 1e-300)
    max_error = float(errors.max()) if len(errors) else 0.0
    return {'max_relative_error': max_error, 'sample_count': int(usable.sum()),
            'skipped': skipped, 'passed': bool(max_error <= tol)}


def total_mass_law(theta, alpha, measure=None):
    '''total_mass / pi = Re (alpha + Theta(0)) / (alpha - Theta(0)).

    Returns:
        Dict: expected, observed, relative_error, passed.
    '''
    alpha = _check_alpha(alpha)
    measure = measure if measure is not None else clark_measure(theta, alpha)
    b = evaluate_inner(theta, 0j)
    expected = float(np.real((alpha + b) / (alpha - b)))
    observed = measure.total_mass / math.pi
    error = abs(observed - expected) / abs(expected)
    return {'theta_at_zero': [b.real, b.imag], 'expected': expected, 'observed': observed,
            'relative_error': error, 'passed': bool(error <= HERGLOTZ_TOL)}


def clark_family_spectra(theta, alphas):
    '''Atom locations for several alphas and their pairwise strict interlacing.

    Returns:
        Dict: alphas, atoms (angles per alpha), atom_counts, interlaced.
    '''
    distinct = []
    for alpha in alphas:
        alpha = _check_alpha(alpha)
        if any(abs(alpha - other) <= 1e-12 for other in distinct):
            warnings.warn(f'Duplicate alpha {alpha} dropped.')
            continue
        distinct.append(alpha)

    angles = [clark_measure(theta, alpha).atom_angles for alpha in distinct]
    pairwise = all(interlaced(angles[i], angles[k])
                   for i in range(len(angles)) for k in range(i + 1, len(angles)))
    return {'alphas': [[a.real, a.imag] for a in distinct],
            'atoms': [a.tolist() for a in angles],
            'atom_counts': [len(a) for a in angles],
            'interlaced': bool(pairwise)}
