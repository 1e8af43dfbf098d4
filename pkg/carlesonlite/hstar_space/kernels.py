'''
Elements of H_0: finite sums f = sum_j c_j / (z - lambda_j) of Cauchy kernels.
'''
from dataclasses import dataclass

import numpy as np

from ..errors import PoleError
from ..carleson_sets import NodeFamily

__all__ = ['POLE_TOL', 'KernelCoefficients', 'value_at_zero', 'value_at_infinity',
           'evaluate', 'boundary_samples']

POLE_TOL = 1e-10


@dataclass(frozen=True)
class KernelCoefficients:
    '''f = sum_j c_j k_{lambda_j} with k_lambda(z) = 1 / (z - lambda).

    Args:
        nodes (NodeFamily): the lambda_j.
        coeffs (np.ndarray): complex coefficients, one per node.
    '''
    nodes: NodeFamily
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.shape != (len(self.nodes),):
            raise ValueError(f'One coefficient per node is required. Expect: {len(self.nodes)}, '
                             f'Get: {coeffs.shape}')
        coeffs.setflags(write=False)
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def kernel(cls, nodes, j):
        '''The single kernel k_{lambda_j}.'''
        coeffs = np.zeros(len(nodes), dtype=complex)
        coeffs[j] = 1
        return cls(nodes, coeffs)

    def with_coeffs(self, coeffs):
        return KernelCoefficients(self.nodes, coeffs)

    def __add__(self, other):
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return self.with_coeffs(scalar * self.coeffs)

    __rmul__ = __mul__

    def to_dict(self):
        return {'nodes': [float(a) for a in self.nodes.angles],
                'coeffs': [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data):
        coeffs = np.array([complex(re, im) for re, im in data['coeffs']], dtype=complex)
        return cls(NodeFamily(np.array(data['nodes'], dtype=float)), coeffs)


def value_at_zero(f):
    '''f(0) = -sum_j c_j / lambda_j.'''
    return complex(-np.sum(f.coeffs / f.nodes.nodes))


def value_at_infinity(f):
    '''(zf)_inf = lim_{z -> inf} z f(z) = sum_j c_j.'''
    return complex(np.sum(f.coeffs))


def evaluate(f, z):
    '''Direct rational evaluation of f at z.

    Args:
        f (KernelCoefficients): the kernel sum.
        z (complex or np.ndarray): evaluation points, anywhere in the plane.

    Raises:
        PoleError: a point within 1e-10 of a node.

    Returns:
        complex or np.ndarray: f(z).
    '''
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    difference = points[:, None] - f.nodes.nodes[None, :]
    if difference.size and np.abs(difference).min() <= POLE_TOL:
        i, j = np.unravel_index(np.argmin(np.abs(difference)), difference.shape)
        raise PoleError(f'f has a pole at node {j} (lambda = {f.nodes.nodes[j]:.12g}); '
                        f'evaluation point {points[i]:.12g} is too close.')
    values = (f.coeffs[None, :] / difference).sum(axis=1)
    return complex(values[0]) if np.ndim(z) == 0 else values


def boundary_samples(f, angles):
    '''f(e^{i*theta}) at the given angles; angles must avoid the nodes.'''
    return evaluate(f, np.exp(1j * np.asarray(angles, dtype=float)))
