'''
Entropy of a Carleson set and the finiteness diagnostic over depths.
'''
import math
import warnings

import numpy as np

from ..errors import InsufficientDataError

__all__ = ['entropy', 'carleson_margin']


def entropy(carleson_set):
    '''Sum over complementary arcs of |I_j| log(1/|I_j|).

    Natural logarithm, normalized arc measure.

    Args:
        carleson_set (CarlesonSet): the set.

    Returns:
        float: the entropy at the set's truncation depth (0 with a warning when
        there are no arcs).
    '''
    lengths = carleson_set.lengths
    if len(lengths) == 0:
        warnings.warn('The set has no complementary arcs (E has full measure at this depth); '
                      'entropy is 0.')
        return 0.0
    # sorted summation makes the result independent of arc order
    terms = np.sort(lengths * np.log(1 / lengths))
    return float(math.fsum(terms))


def _fit_limit_ratio(depths, ratios):
    '''Least-squares fit of ratio_k = rho + b / k; returns rho.'''
    if len(ratios) == 1:
        return float(ratios[0])
    x = 1.0 / np.asarray(depths, dtype=float)
    design = np.column_stack([np.ones_like(x), x])
    (rho, _), *_ = np.linalg.lstsq(design, np.asarray(ratios), rcond=None)
    return float(rho)


def carleson_margin(set_sequence, ratio_threshold=0.95, zero_tol=1e-15):
    '''Entropy partial sums over increasing depths and their decay.

    Increments d_k = S_k - S_(k-1) of a finite-entropy generator decay
    geometrically; the ratios d_(k+1)/d_k are fitted as rho + b/k on the
    tail half and the sequence is flagged Carleson-consistent when rho is
    below ``ratio_threshold`` (or all increments vanish).

    Args:
        set_sequence (list of CarlesonSet): sets of one generator at increasing depth.
        ratio_threshold (float, optional): the consistency threshold for rho. Defaults to 0.95.
        zero_tol (float, optional): increments below this count as zero.

    Raises:
        InsufficientDataError: fewer than 3 depths.

    Returns:
        Dict: depths, partial_sums, increments, increment_ratios, fitted_ratio,
        carleson_consistent.
    '''
    sets = list(set_sequence)
    if len(sets) < 3:
        raise InsufficientDataError(f'carleson_margin needs at least 3 depths. Get: {len(sets)}')

    depths = [int(s.generation_depth) for s in sets]
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        partial_sums = [entropy(s) for s in sets]
    increments = np.diff(partial_sums)

    report = {
        'depths': depths,
        'partial_sums': partial_sums,
        'increments': increments.tolist(),
    }

    if np.all(np.abs(increments) <= zero_tol):
        report.update(increment_ratios=[], fitted_ratio=0.0, carleson_consistent=True)
        return report

    ratio_depths, ratios = [], []
    for k in range(len(increments) - 1):
        if abs(increments[k]) > zero_tol:
            ratio_depths.append(depths[k + 1])
            ratios.append(increments[k + 1] / increments[k])
    if not ratios:
        # a single nonzero increment followed by nothing to compare
        report.update(increment_ratios=[], fitted_ratio=math.nan, carleson_consistent=False)
        return report

    tail = len(ratios) // 2 if len(ratios) >= 4 else 0
    fitted = _fit_limit_ratio(ratio_depths[tail:], ratios[tail:])
    report.update(increment_ratios=[float(r) for r in ratios],
                  fitted_ratio=fitted,
                  carleson_consistent=bool(fitted < ratio_threshold))
    return report
