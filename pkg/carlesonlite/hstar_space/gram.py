'''
The H_* metric restricted to the kernel span: the Gram matrix of Cauchy kernels.

G[j, k] = <k_{lambda_k}, k_{lambda_j}> = (1/N) sum_m w_m^2 / ((e_m - lambda_k) conj(e_m - lambda_j))
with e_m = e^{i*theta_m} on the boundary grid, so that ||f||^2 = c^H G c.
'''
import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from ..errors import IllConditionedError, MetricCorruptionError, DomainError
from ..carleson_sets import NodeFamily, distance_to_set
from ..outer_builder import OuterFunction
from .kernels import evaluate

__all__ = ['CONDITIONING_FACTOR', 'EVALUATION_SLACK', 'GramMatrix', 'weighted_kernel_samples',
           'gram_matrix', 'assert_well_conditioned', 'norm', 'kernel_gap', 'evaluation_bound_check']

CONDITIONING_FACTOR = 10
EVALUATION_SLACK = 0.05

# grid points closer than this to a node contribute nothing to the quadrature
COINCIDENCE_TOL = 1e-12


def _same_nodes(a, b):
    return len(a) == len(b) and np.array_equal(a.angles, b.angles)


@dataclass(frozen=True)
class GramMatrix:
    '''Hermitian positive definite Gram matrix of the kernels at the nodes.

    Args:
        nodes (NodeFamily): the lambda_j.
        weight (OuterFunction): phi, the weight of the norm.
        entries (np.ndarray): the n x n Hermitian matrix.
    '''
    nodes: NodeFamily
    weight: OuterFunction
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        n = len(self.nodes)
        if entries.shape != (n, n):
            raise ValueError(f'Gram entries must be {n} x {n}. Get: {entries.shape}')
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    def __len__(self):
        return len(self.nodes)

    @cached_property
    def _eigh(self):
        return scipy.linalg.eigh(self.entries)

    @property
    def eigenvalues(self):
        return self._eigh[0]

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0]) if len(self) else math.inf

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1]) if len(self) else 0.0

    @property
    def condition_number(self) -> float:
        if self.min_eigenvalue <= 0:
            return math.inf
        return self.max_eigenvalue / self.min_eigenvalue

    @cached_property
    def sqrt(self):
        '''Symmetric square root G^{1/2} (the G-orthonormal frame).'''
        values, vectors = self._eigh
        return (vectors * np.sqrt(np.clip(values, 0, None))) @ vectors.conj().T

    @cached_property
    def inv_sqrt(self):
        values, vectors = self._eigh
        return (vectors / np.sqrt(values)) @ vectors.conj().T

    @cached_property
    def cholesky(self):
        return scipy.linalg.cho_factor(self.entries, lower=True)

    def solve(self, rhs):
        '''G^{-1} rhs through the Cholesky factor.'''
        return scipy.linalg.cho_solve(self.cholesky, rhs)

    def quadratic(self, c) -> float:
        return float(np.real(np.vdot(c, self.entries @ c)))

    def to_dict(self):
        return {'nodes': [float(a) for a in self.nodes.angles],
                'entries': [[[float(v.real), float(v.imag)] for v in row] for row in self.entries]}

    def save(self, path):
        with open(path, 'w') as fp:
            json.dump(self.to_dict(), fp)


def weighted_kernel_samples(nodes, weight):
    '''K[m, j] = w_m / (e_m - lambda_j), the boundary samples of phi * k_{lambda_j}
    in modulus.

    Grid points that coincide with a node (only possible for clamp-floor
    points) are set to 0.

    Args:
        nodes (NodeFamily): the lambda_j.
        weight (WeightGrid): the boundary modulus.

    Returns:
        np.ndarray: N x n complex samples.
    '''
    boundary = np.exp(1j * weight.angles)
    difference = boundary[:, None] - nodes.nodes[None, :]
    coincide = np.abs(difference) < COINCIDENCE_TOL
    difference[coincide] = 1
    samples = weight.modulus[:, None] / difference
    samples[coincide] = 0
    return samples


def assert_well_conditioned(gram):
    '''Raise IllConditionedError when min_eig <= 10 * eps * max_eig.

    Args:
        gram (GramMatrix): the matrix to test.

    Raises:
        IllConditionedError: G is numerically singular; names the closest nodes.
    '''
    if len(gram) == 0:
        return
    threshold = CONDITIONING_FACTOR * np.finfo(float).eps * gram.max_eigenvalue
    if gram.min_eigenvalue <= threshold:
        pair = gram.nodes.closest_pair() if len(gram) > 1 else (0, 0)
        distance = abs(gram.nodes.nodes[pair[0]] - gram.nodes.nodes[pair[1]])
        raise IllConditionedError(
            f'Gram matrix is numerically singular: min eigenvalue {gram.min_eigenvalue:.3e} <= '
            f'{threshold:.3e}. Closest nodes: {pair} at chordal distance {distance:.3e}. '
            f'Remove one of them or lower the node generation.', pair)


def gram_matrix(nodes, outer, check_conditioning=True):
    '''Assemble G by trapezoidal quadrature on the weight grid.

    Args:
        nodes (NodeFamily): the lambda_j, all in E.
        outer (OuterFunction): phi.
        check_conditioning (bool, optional): raise on a numerically singular G. Defaults to True.

    Raises:
        IllConditionedError: see ``assert_well_conditioned``.

    Returns:
        GramMatrix: G.
    '''
    samples = weighted_kernel_samples(nodes, outer.weight)
    entries = samples.conj().T @ samples / outer.grid_size
    entries = (entries + entries.conj().T) / 2
    gram = GramMatrix(nodes, outer, entries)
    if check_conditioning:
        assert_well_conditioned(gram)
    return gram


def norm(f, gram):
    '''||f||_{H_*} = sqrt(c^H G c).

    Raises:
        ValueError: f and G are over different nodes.
        MetricCorruptionError: the quadratic form is below -1e-10.
    '''
    if not _same_nodes(f.nodes, gram.nodes):
        raise ValueError('f and G must be built over the same nodes.')
    value = gram.quadratic(f.coeffs)
    if value < -1e-10:
        raise MetricCorruptionError(f'Negative quadratic form c^H G c = {value:.3e}.')
    return math.sqrt(max(value, 0.0))


def kernel_gap(gram, j, k):
    '''||k_{lambda_j} - k_{lambda_k}||_{H_*} from the Gram form.'''
    # one summation order for both (j, k) and (k, j)
    j, k = min(j, k), max(j, k)
    g = gram.entries
    value = float(np.real(g[j, j] - 2 * g[j, k] + g[k, k]))
    return math.sqrt(max(value, 0.0))


def evaluation_bound_check(f, mu, gram, outer, carleson_set=None, epsilon_scale=1.0):
    '''Check |f(mu)| <= sqrt(2*pi) * ||f|| / (sqrt(pi) * eps * delta) * (1 + 0.05).

    eps = epsilon_scale * dist(mu, E) / 2 and delta is the minimum of w over the
    grid points within chordal distance eps of mu. The norm of phi*f is taken
    against arc length d(theta), which is 2*pi times the normalized square norm.

    Args:
        f (KernelCoefficients): the function.
        mu (complex): a unimodular point outside E.
        gram (GramMatrix): G over the nodes of f.
        outer (OuterFunction): phi.
        carleson_set (CarlesonSet, optional): E. Defaults to the set behind the weight.
        epsilon_scale (float, optional): shrinks eps below dist(mu, E) / 2. Defaults to 1.

    Raises:
        DomainError: mu lies in E, or no set is available.

    Returns:
        Dict: lhs, rhs, epsilon, delta, passed, inconclusive.
    '''
    carleson_set = carleson_set if carleson_set is not None else outer.weight.carleson_set
    if carleson_set is None:
        raise DomainError('evaluation_bound_check needs the set E (none attached to the weight).')
    distance = distance_to_set(mu, carleson_set)
    if distance <= 0:
        raise DomainError(f'mu = {mu} lies in E.')

    epsilon = epsilon_scale * distance / 2
    weight = outer.weight
    near = np.abs(np.exp(1j * weight.angles) - mu) < epsilon
    report = {'mu': [float(mu.real), float(mu.imag)], 'epsilon': epsilon,
              'lhs': abs(evaluate(f, mu)), 'rhs': None, 'delta': None,
              'passed': None, 'inconclusive': False}
    if not np.any(near) or np.any(weight.floor_mask[near]):
        warnings.warn(f'Evaluation bound at mu = {mu} is inconclusive: the eps-neighborhood '
                      f'has no grid points or meets the clamp region.')
        report['inconclusive'] = True
        return report

    delta = float(weight.modulus[near].min())
    f_norm = norm(f, gram)
    rhs = math.sqrt(2 * math.pi) * f_norm / (math.sqrt(math.pi) * epsilon * delta) * (1 + EVALUATION_SLACK)
    report.update(delta=delta, rhs=rhs, passed=bool(report['lhs'] <= rhs))
    return report
