'''
The unitary U with U = S* on H_1 and the rank-one defect R = S* - U.

With a = (-1/lambda_j) (so that f(0) = a^T c):

- the G-complement of H_1 is spanned by q = G^{-1} conj(a);
- the G-complement of T(H_1) = H~_1 is spanned by w = G^{-1} 1;
- g' = q / (a^T q) is the projection of the generator g onto span{q};
- U g' = alpha * (||g'|| / ||w||) * w and U = T on H_1.

Every c splits as c = h + g' (a^T c) with h in H_1, so
R c = (T g' - U g') (a^T c) = u <c, v>_G with v = q / ||q||_G.
'''
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import DegenerateComplementError, RangeError
from ..carleson_sets import interlaced
from ..hstar_space import CONDITIONING_FACTOR, KernelCoefficients
from .subspaces import zero_functional

__all__ = ['UnitaryDecomposition', 'build_unitary', 'unitary_checks',
           'unitary_spectrum', 'unitary_family_spectra']

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitaryDecomposition:
    '''S* = U + R on the kernel span.

    Args:
        unitary (np.ndarray): U in kernel coordinates.
        rank_one (Tuple[np.ndarray, np.ndarray]): (u, v) with R c = u <c, v>_G.
        alpha (complex): the free unimodular phase on the complement.
        generator (KernelCoefficients): g = -lambda_1 k_{lambda_1}, g(0) = 1.
        complement (np.ndarray): w, spanning the G-complement of T(H_1).
    '''
    unitary: np.ndarray
    rank_one: tuple
    alpha: complex
    generator: KernelCoefficients
    complement: np.ndarray

    def defect(self, gram):
        '''R = T - U as a matrix: u (G v)^H.'''
        u, v = self.rank_one
        return np.outer(u, (gram.entries @ v).conj())


def _check_alpha(alpha):
    if abs(abs(alpha) - 1) > 1e-12:
        raise RangeError(f'alpha must be unimodular. Get: |alpha| = {abs(alpha)}')


def _complement_norm(gram, functional_value, name):
    '''sqrt of a G-norm square that must be positive; guards the complement.'''
    value = float(np.real(functional_value))
    floor = CONDITIONING_FACTOR * np.finfo(float).eps * len(gram) / gram.max_eigenvalue
    if not np.isfinite(value) or value <= floor:
        raise DegenerateComplementError(f'The G-complement vector {name} is numerically degenerate: '
                                        f'||{name}||_G^2 = {value:.3e} <= {floor:.3e}.')
    return math.sqrt(value)


def build_unitary(operator, pair, alpha=1.0):
    '''Construct U and R for the phase alpha.

    Args:
        operator (TruncatedOperator): T.
        pair (SubspacePair): H_1 and H~_1; only their dimensions are consulted.
        alpha (complex, optional): unimodular phase. Defaults to 1.

    Raises:
        RangeError: alpha is not unimodular.
        DegenerateComplementError: the complement of T(H_1) is numerically degenerate.

    Returns:
        UnitaryDecomposition: U, (u, v), alpha, g and w.
    '''
    alpha = complex(alpha)
    _check_alpha(alpha)
    gram = operator.gram
    n = len(operator)
    if pair.dimension != n - 1:
        raise ValueError(f'Subspaces do not match the operator. Expect: {n - 1}, Get: {pair.dimension}')

    a = zero_functional(operator.nodes)
    ones = np.ones(n, dtype=complex)
    q = gram.solve(a.conj())
    w = gram.solve(ones)
    q_norm = _complement_norm(gram, a @ q, 'q')
    w_norm = _complement_norm(gram, ones @ w, 'w')

    g_prime = q / (a @ q)
    g_prime_norm = 1 / q_norm
    u_g_prime = alpha * (g_prime_norm / w_norm) * w
    u = q_norm * (operator.apply(g_prime) - u_g_prime)
    v = q / q_norm

    # R c = u (a^T c) / ||q||_G
    unitary = operator.matrix - np.outer(u, a) / q_norm

    coeffs = np.zeros(n, dtype=complex)
    coeffs[0] = -operator.nodes.nodes[0]
    generator = KernelCoefficients(operator.nodes, coeffs)
    LOGGER.debug('Built U for alpha = %s: ||q||_G = %.3e, ||w||_G = %.3e', alpha, q_norm, w_norm)
    return UnitaryDecomposition(unitary, (u, v), alpha, generator, w)


def unitary_checks(operator, pair, decomposition, count=100, rng=None, tol=1e-8):
    '''G-unitarity, rank of the defect, isometry on H_1 and alpha-independence on H_1.

    Returns:
        Dict: unitarity_defect, defect_singular_values, defect_rank,
        h1_residual, h1_isometry_deviation, alpha_independence, passed.
    '''
    rng = rng if rng is not None else np.random.default_rng(0)
    gram = operator.gram
    g = gram.entries
    unitary = decomposition.unitary

    unitarity = (scipy.linalg.norm(unitary.conj().T @ g @ unitary - g, 2)
                 / scipy.linalg.norm(g, 2))

    framed = gram.sqrt @ (operator.matrix - unitary) @ gram.inv_sqrt
    singular = scipy.linalg.svdvals(framed)
    rank = int(np.sum(singular > tol * singular[0])) if singular[0] > 0 else 0

    h1 = pair.h1_basis
    h1_residual = float(np.abs((operator.matrix - unitary) @ h1).max()) if h1.size else 0.0

    weights = rng.standard_normal((pair.dimension, count)) + 1j * rng.standard_normal((pair.dimension, count))
    h = h1 @ weights
    deviation = max(abs(math.sqrt(gram.quadratic(unitary @ c) / gram.quadratic(c)) - 1) for c in h.T)

    other = build_unitary(operator, pair, -decomposition.alpha)
    alpha_independence = float(np.abs((unitary - other.unitary) @ h1).max()) if h1.size else 0.0

    passed = (unitarity <= tol and rank == 1 and h1_residual <= 1e-10
              and deviation <= tol and alpha_independence <= 1e-10)
    return {'unitarity_defect': float(unitarity),
            'defect_singular_values': [float(s) for s in singular],
            'defect_rank': rank,
            'h1_residual': h1_residual,
            'h1_isometry_deviation': float(deviation),
            'alpha_independence': alpha_independence,
            'passed': bool(passed)}


def unitary_spectrum(decomposition, gram, vector=None):
    '''Eigenvalues of U and the spectral measure of a vector.

    In the frame G^{1/2} the matrix U is unitary, so its complex Schur form is
    diagonal; the masses |<e_k, G^{1/2} c>|^2 sum to ||c||_G^2.

    Args:
        decomposition (UnitaryDecomposition): U.
        gram (GramMatrix): G.
        vector (np.ndarray, optional): coefficients c. Defaults to the generator g.

    Returns:
        Dict: eigenvalues, masses, total_mass, norm_square, max_modulus_deviation,
        normality_defect.
    '''
    c = decomposition.generator.coeffs if vector is None else np.asarray(vector, dtype=complex)
    framed = gram.sqrt @ decomposition.unitary @ gram.inv_sqrt
    schur, vectors = scipy.linalg.schur(framed, output='complex')
    eigenvalues = np.diag(schur)
    off_diagonal = float(np.abs(np.triu(schur, k=1)).max()) if len(schur) > 1 else 0.0

    masses = np.abs(vectors.conj().T @ (gram.sqrt @ c)) ** 2
    order = np.argsort(np.angle(eigenvalues))
    eigenvalues, masses = eigenvalues[order], masses[order]
    return {'eigenvalues': [[float(z.real), float(z.imag)] for z in eigenvalues],
            'masses': [float(m) for m in masses],
            'total_mass': float(masses.sum()),
            'norm_square': gram.quadratic(c),
            'max_modulus_deviation': float(np.abs(np.abs(eigenvalues) - 1).max()),
            'normality_defect': off_diagonal}


def unitary_family_spectra(operator, pair, alphas):
    '''Spectra of U_alpha for several phases and their pairwise strict interlacing.

    Returns:
        Dict: alphas, spectra (eigenvalue angles per alpha), interlaced.
    '''
    distinct = []
    for alpha in alphas:
        alpha = complex(alpha)
        if any(abs(alpha - other) <= 1e-12 for other in distinct):
            warnings.warn(f'Duplicate alpha {alpha} dropped.')
            continue
        distinct.append(alpha)

    spectra = []
    for alpha in distinct:
        decomposition = build_unitary(operator, pair, alpha)
        eigenvalues = scipy.linalg.eigvals(decomposition.unitary)
        spectra.append(np.sort(np.mod(np.angle(eigenvalues), 2 * np.pi)))

    pairwise = all(interlaced(spectra[i], spectra[k])
                   for i in range(len(spectra)) for k in range(i + 1, len(spectra)))
    return {'alphas': [[a.real, a.imag] for a in distinct],
            'spectra': [s.tolist() for s in spectra],
            'interlaced': bool(pairwise)}
