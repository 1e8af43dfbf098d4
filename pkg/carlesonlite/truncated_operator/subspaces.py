'''
H_1 = {f(0) = 0} and H~_1 = {(zf)_inf = 0} in kernel coordinates, and the
identity S* H_1 = H~_1.
'''
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..hstar_space import KernelCoefficients, norm, value_at_infinity

__all__ = ['RANK_TOL', 'SubspacePair', 'zero_functional', 'subspaces', 'verify_subspace_identity',
           'h1tilde_correction', 'isometry_check']

RANK_TOL = 1e-10


@dataclass(frozen=True)
class SubspacePair:
    '''Orthonormal (in coefficient space) bases of H_1 and H~_1.

    Args:
        h1_basis (np.ndarray): n x (n-1), columns with f(0) = 0.
        h1tilde_basis (np.ndarray): n x (n-1), columns with sum of coefficients 0.
    '''
    h1_basis: np.ndarray
    h1tilde_basis: np.ndarray

    @property
    def dimension(self) -> int:
        return self.h1_basis.shape[1]


def zero_functional(nodes):
    '''Row vector a with f(0) = a^T c, i.e. a_j = -1 / lambda_j.'''
    return -1 / nodes.nodes


def subspaces(operator):
    '''Null-space bases of the functionals f(0) and (zf)_inf.

    Raises:
        ValueError: fewer than 2 nodes (both subspaces are trivial).
    '''
    n = len(operator)
    if n < 2:
        raise ValueError(f'H_1 and H~_1 are trivial for fewer than 2 nodes. Get: n = {n}')
    h1 = scipy.linalg.null_space(zero_functional(operator.nodes)[None, :])
    h1tilde = scipy.linalg.null_space(np.ones((1, n), dtype=complex))
    return SubspacePair(h1, h1tilde)


def _rank(matrix, tol=RANK_TOL):
    singular = scipy.linalg.svdvals(matrix)
    if len(singular) == 0 or singular[0] == 0:
        return 0
    return int(np.sum(singular > tol * singular[0]))


def verify_subspace_identity(operator, pair, tol=RANK_TOL):
    '''Check T(H_1) = H~_1: inclusion, rank equality and the explicit preimage.

    For f in H~_1 with coefficients c, g with coefficients (lambda_j c_j)
    lies in H_1 and T g = f.

    Returns:
        Dict: inclusion_error, image_rank, h1tilde_rank, joint_rank,
        preimage_error, expected_rank, offending_nodes, passed.
    '''
    n = len(operator)
    image = operator.apply(pair.h1_basis)
    inclusion_error = float(np.abs(image.sum(axis=0)).max())

    image_rank = _rank(image, tol)
    h1tilde_rank = _rank(pair.h1tilde_basis, tol)
    joint_rank = _rank(np.hstack([image, pair.h1tilde_basis]), tol)

    preimage = operator.nodes.nodes[:, None] * pair.h1tilde_basis
    at_zero = np.abs((preimage * (-1 / operator.nodes.nodes)[:, None]).sum(axis=0)).max()
    roundtrip = np.abs(operator.apply(preimage) - pair.h1tilde_basis).max()
    preimage_error = float(max(at_zero, roundtrip))

    passed = (inclusion_error <= tol and image_rank == n - 1 == h1tilde_rank
              and joint_rank == n - 1 and preimage_error <= tol)
    offending = [] if passed else [list(p) for p in operator.nodes.duplicates()]
    return {'inclusion_error': inclusion_error, 'image_rank': image_rank,
            'h1tilde_rank': h1tilde_rank, 'joint_rank': joint_rank,
            'preimage_error': preimage_error, 'expected_rank': n - 1,
            'offending_nodes': offending, 'passed': bool(passed)}


def h1tilde_correction(f, gram, j=0):
    '''Project f into H~_1 along k_{lambda_j}: f~ = f - (sum c) k_{lambda_j}.

    Returns:
        Tuple[KernelCoefficients, float]: f~ and ||f - f~|| = |sum c| * ||k_{lambda_j}||.
    '''
    total = value_at_infinity(f)
    coeffs = np.array(f.coeffs)
    coeffs[j] -= total
    distance = abs(total) * np.sqrt(np.real(gram.entries[j, j]))
    return KernelCoefficients(f.nodes, coeffs), float(distance)


def isometry_check(operator, pair, count=100, rng=None, tol=1e-8):
    '''||T h||_G / ||h||_G on random h in H_1, and on random generic c for contrast.

    Returns:
        Dict: max_h1_deviation, generic_min_deviation, count, passed.
    '''
    rng = rng if rng is not None else np.random.default_rng(0)
    gram = operator.gram
    dim = pair.dimension
    weights = rng.standard_normal((dim, count)) + 1j * rng.standard_normal((dim, count))
    h = pair.h1_basis @ weights
    deviations = []
    for column in h.T:
        f = KernelCoefficients(operator.nodes, column)
        deviations.append(abs(norm(operator(f), gram) / norm(f, gram) - 1))

    n = len(operator)
    generic = rng.standard_normal((n, count)) + 1j * rng.standard_normal((n, count))
    generic_deviation = [abs(np.sqrt(gram.quadratic(operator.apply(c)) / gram.quadratic(c)) - 1)
                         for c in generic.T]
    max_deviation = float(max(deviations))
    return {'max_h1_deviation': max_deviation,
            'generic_min_deviation': float(min(generic_deviation)),
            'count': count, 'passed': bool(max_deviation <= tol)}
