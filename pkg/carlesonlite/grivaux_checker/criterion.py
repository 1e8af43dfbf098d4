'''
Conditions (i) and (ii) of the eigenvector criterion: unimodular, pairwise
distinct eigenvalues and a complete (nondegenerate) kernel family.
'''
import numpy as np

from ..carleson_sets import ANGLE_TOL
from ..hstar_space import CONDITIONING_FACTOR

__all__ = ['check_eigenvectors', 'check_completeness']


def check_eigenvectors(operator, tol=1e-12):
    '''T e_j = (1/lambda_j) e_j, |1/lambda_j| = 1 and all eigenvalues distinct.

    Returns:
        Dict: max_residual, max_modulus_deviation, min_gap, duplicates, passed.
    '''
    n = len(operator)
    identity = np.eye(n, dtype=complex)
    images = operator.apply(identity)
    residual = float(np.abs(images - identity * operator.diagonal[None, :]).max()) if n else 0.0
    modulus = float(np.abs(np.abs(operator.diagonal) - 1).max()) if n else 0.0

    duplicates = operator.nodes.duplicates(ANGLE_TOL)
    if n > 1:
        gaps = np.abs(operator.diagonal[:, None] - operator.diagonal[None, :])
        gaps[np.diag_indices(n)] = np.inf
        min_gap = float(gaps.min())
    else:
        min_gap = None
    return {'n': n, 'max_residual': residual, 'max_modulus_deviation': modulus,
            'min_gap': min_gap, 'duplicates': [list(p) for p in duplicates],
            'passed': bool(residual <= tol and modulus <= tol and not duplicates)}


def check_completeness(operator, gram):
    '''At finite rank completeness of the kernels means G is nondegenerate.

    Returns:
        Dict: min_eigenvalue, max_eigenvalue, condition_number, threshold, alarm, passed.
    '''
    threshold = CONDITIONING_FACTOR * np.finfo(float).eps * gram.max_eigenvalue
    alarm = gram.min_eigenvalue <= threshold
    return {'n': len(operator), 'min_eigenvalue': gram.min_eigenvalue,
            'max_eigenvalue': gram.max_eigenvalue, 'condition_number': gram.condition_number,
            'threshold': float(threshold), 'alarm': bool(alarm),
            'passed': bool(gram.min_eigenvalue > 0 and not alarm)}
