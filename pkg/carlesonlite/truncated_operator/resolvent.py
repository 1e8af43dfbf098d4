'''
Resolvent of S* on the kernel span.

(S* - lambda) f = g reads f (1 - lambda z) = z g + f(0). For lambda != 0 the
pole at mu = 1/lambda must cancel, so f(0) = -mu g(mu); for lambda = 0, f
must vanish at infinity, so f(0) = -(zg)_inf.
'''
import numpy as np

from ..errors import ResolventSingularError
from ..carleson_sets import TWO_PI
from ..hstar_space import KernelCoefficients, evaluate, value_at_infinity

__all__ = ['SPECTRUM_MARGIN', 'resolve', 'resolvent_cross_check']

SPECTRUM_MARGIN = 1e-8


def resolve(operator, lam, g):
    '''Solve (T - lambda) f = g coefficientwise: f_j = c_j / (1/lambda_j - lambda).

    Raises:
        ResolventSingularError: lambda within 1e-8 of an eigenvalue.
    '''
    lam = complex(lam)
    gap = np.abs(operator.diagonal - lam)
    if gap.min() <= SPECTRUM_MARGIN:
        j = int(np.argmin(gap))
        raise ResolventSingularError(f'lambda = {lam} is within {SPECTRUM_MARGIN} of the eigenvalue '
                                     f'{operator.diagonal[j]} (node {j}).')
    return KernelCoefficients(g.nodes, g.coeffs / (operator.diagonal - lam))


def _sample_radius(lam):
    radius = 0.6
    if lam != 0 and abs(1 / abs(lam) - radius) < 0.1:
        radius = 0.3
    return radius


def resolvent_cross_check(operator, lam, g, sample_count=100, rng=None, tol=1e-8):
    '''Compare resolve() with f = (z g(z) + f(0)) / (1 - lambda z) at interior samples.

    Samples lie on a circle of radius 0.6 (0.3 when 1/|lambda| is near 0.6)
    at random angles.

    Returns:
        Dict: lambda, f0, max_relative_error, residual, passed.
    '''
    rng = rng if rng is not None else np.random.default_rng(0)
    lam = complex(lam)
    f = resolve(operator, lam, g)

    if lam == 0:
        f0 = -value_at_infinity(g)
    else:
        mu = 1 / lam
        f0 = -mu * evaluate(g, mu)

    z = _sample_radius(lam) * np.exp(1j * TWO_PI * rng.random(sample_count))
    route = (z * evaluate(g, z) + f0) / (1 - lam * z)
    direct = evaluate(f, z)
    error = float(np.abs(route - direct).max() / (np.abs(direct).max() or 1.0))

    residual = float(np.abs(operator.apply(f.coeffs) - lam * f.coeffs - g.coeffs).max())
    scale = float(np.abs(g.coeffs).max()) or 1.0
    return {'lambda': [lam.real, lam.imag], 'f0': [f0.real, f0.imag],
            'max_relative_error': error, 'residual': residual / scale,
            'passed': bool(error <= tol and residual / scale <= 1e-10)}
