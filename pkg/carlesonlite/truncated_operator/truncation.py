'''
The backward shift S* = (f - f(0)) / z on the kernel span.

S* k_lambda = 1 / (lambda (z - lambda)), so in kernel coordinates S* is the
diagonal matrix diag(1 / lambda_j).
'''
from dataclasses import dataclass

import numpy as np

from ..carleson_sets import TWO_PI, NodeFamily
from ..hstar_space import GramMatrix, KernelCoefficients, boundary_samples, value_at_zero

__all__ = ['TruncatedOperator', 'build_truncation', 'eigen_relation_check']


@dataclass(frozen=True)
class TruncatedOperator:
    '''S* restricted to span{k_{lambda_j}}.

    Args:
        nodes (NodeFamily): the lambda_j.
        gram (GramMatrix): the metric.
        diagonal (np.ndarray): 1 / lambda_j, the eigenvalues.
    '''
    nodes: NodeFamily
    gram: GramMatrix
    diagonal: np.ndarray

    def __len__(self):
        return len(self.nodes)

    @property
    def matrix(self):
        return np.diag(self.diagonal)

    def apply(self, coeffs):
        '''Coefficient action c_j -> c_j / lambda_j (vectors or column blocks).'''
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.ndim == 1:
            return self.diagonal * coeffs
        return self.diagonal[:, None] * coeffs

    def __call__(self, f):
        return KernelCoefficients(self.nodes, self.apply(f.coeffs))


def build_truncation(nodes, gram):
    '''Build S*|_{H_0} over the nodes of G.

    Raises:
        ValueError: the nodes differ from the nodes of G.
    '''
    if len(nodes) != len(gram.nodes) or not np.array_equal(nodes.angles, gram.nodes.angles):
        raise ValueError(f'Nodes do not match the Gram matrix. Expect: {len(gram.nodes)} nodes, '
                         f'Get: {len(nodes)}')
    diagonal = 1 / nodes.nodes
    diagonal.setflags(write=False)
    return TruncatedOperator(nodes, gram, diagonal)


def eigen_relation_check(operator, f=None, sample_count=10 ** 4, rng=None, tol=1e-10):
    '''Compare the coefficient image of S*f with (f(e^{it}) - f(0)) / e^{it}.

    Samples sit on a uniform grid shifted by half a step; samples within
    1e-6 of a node are skipped.

    Args:
        operator (TruncatedOperator): T.
        f (KernelCoefficients, optional): the test function. Defaults to random coefficients.
        sample_count (int, optional): number of boundary samples. Defaults to 10^4.
        rng (np.random.Generator, optional): source of the random f.
        tol (float, optional): pass threshold on the relative sup error. Defaults to 1e-10.

    Returns:
        Dict: max_error, relative_error, sample_count, passed.
    '''
    if f is None:
        rng = rng if rng is not None else np.random.default_rng(0)
        n = len(operator)
        f = KernelCoefficients(operator.nodes, rng.standard_normal(n) + 1j * rng.standard_normal(n))

    angles = TWO_PI * (np.arange(sample_count) + 0.5) / sample_count
    distance = np.abs(np.exp(1j * angles)[:, None] - operator.nodes.nodes[None, :]).min(axis=1)
    angles = angles[distance > 1e-6]
    boundary = np.exp(1j * angles)

    oracle = (boundary_samples(f, angles) - value_at_zero(f)) / boundary
    image = boundary_samples(operator(f), angles)
    max_error = float(np.abs(oracle - image).max())
    scale = float(np.abs(oracle).max())
    relative = max_error / scale if scale > 0 else max_error
    return {'max_error': max_error, 'relative_error': relative,
            'sample_count': int(len(boundary)), 'passed': bool(relative <= tol)}
