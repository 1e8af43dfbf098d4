'''
Finite-rank orbit statistics of the diagonal flow c -> diag^n c.

A finite-dimensional operator is never hypercyclic; these numbers are
recurrence evidence only and every report is labeled heuristic.
'''
import numpy as np

from ..errors import RangeError

__all__ = ['MAX_ORBIT_STEPS', 'orbit_diagnostics']

MAX_ORBIT_STEPS = 10 ** 6


def _orbit_distances(phases, start, target, gram_entries, steps, chunk_size):
    '''||diag^n c - t||_G for n = 0..steps, in chunks.'''
    distances = np.empty(steps + 1)
    for first in range(0, steps + 1, chunk_size):
        n = np.arange(first, min(first + chunk_size, steps + 1))
        orbit = np.exp(1j * np.outer(n, phases)) * start[None, :] - target[None, :]
        quadratic = np.einsum('ij,jk,ik->i', orbit.conj(), gram_entries, orbit)
        distances[first:first + len(n)] = np.sqrt(np.clip(np.real(quadratic), 0, None))
    return distances


def orbit_diagnostics(operator, gram, start, steps, targets, return_radius=0.1, chunk_size=4096):
    '''Minimal G-distances from the orbit of ``start`` to each target.

    Args:
        operator (TruncatedOperator): T.
        gram (GramMatrix): G.
        start (KernelCoefficients): the initial vector.
        steps (int): orbit length, at most 10^6.
        targets (List[KernelCoefficients]): target vectors.
        return_radius (float, optional): relative radius counted as a return to start.

    Raises:
        RangeError: steps outside [0, 10^6].

    Returns:
        Dict: heuristic (always True), steps, eigenphases, targets (min distance
        and first step), returns (count, first return, min distance).
    '''
    if steps < 0 or steps > MAX_ORBIT_STEPS:
        raise RangeError(f'steps must lie in [0, {MAX_ORBIT_STEPS}]. Get: {steps}')
    phases = np.angle(operator.diagonal)
    c = start.coeffs
    g = gram.entries

    target_reports = []
    for target in targets:
        distances = _orbit_distances(phases, c, target.coeffs, g, steps, chunk_size)
        k = int(np.argmin(distances))
        target_reports.append({'min_distance': float(distances[k]), 'at_step': k})

    start_norm = np.sqrt(max(gram.quadratic(c), 0.0))
    to_start = _orbit_distances(phases, c, c, g, steps, chunk_size)[1:]
    close = np.nonzero(to_start <= return_radius * start_norm)[0]
    returns = {'count': int(len(close)),
               'first_return': int(close[0] + 1) if len(close) else None,
               'min_distance': float(to_start.min()) if steps else None,
               'radius': float(return_radius * start_norm)}
    return {'heuristic': True, 'steps': steps,
            'eigenphases': [float(p) for p in np.mod(phases, 2 * np.pi) / (2 * np.pi)],
            'targets': target_reports, 'returns': returns}
