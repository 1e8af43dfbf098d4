'''
Generators of Carleson sets and of node families inside them.

Cantor construction: a middle portion of relative size ``removal_ratio`` is
removed from every surviving interval, generation after generation. The
limit set is perfect and has finite entropy.
'''
import math
import warnings

import numpy as np

from ..errors import RangeError, ConsistencyError
from .basic_arcs import TWO_PI, ANGLE_TOL, Arc, NodeFamily, normalize_angle
from .carleson_set import CarlesonSet, distance_to_set_many

__all__ = ['FULL_CIRCLE', 'MAX_DEPTH', 'MIN_ARC_LENGTH', 'cantor_like_set',
           'point_set', 'arc_sequence_set', 'log_squared_lengths', 'sample_nodes']

FULL_CIRCLE = Arc(0.0, 1.0)

MAX_DEPTH = 30

# arcs shorter than this are not representable next to angles of size 2*pi
MIN_ARC_LENGTH = 1e-15


def _check_removal_ratio(removal_ratio):
    if not (0 < removal_ratio < 1):
        raise RangeError(f'removal_ratio must lie in (0, 1). Get: {removal_ratio}')


def cantor_like_set(depth, removal_ratio=1/3, base=FULL_CIRCLE):
    '''Cantor-type perfect set obtained by repeated middle removal.

    The base arc is treated as the parameter interval [start, start + length];
    for the full circle its two ends are the same point 1. At generation k
    the open middle fraction ``removal_ratio`` of each of the 2^(k-1)
    surviving intervals is removed, producing arcs tagged with generation k.
    If the base is not the full circle, the complement of the base is an arc
    of generation 0.

    Args:
        depth (int): number of removal generations, 0 <= depth <= 30.
        removal_ratio (float, optional): relative size of the removed middle. Defaults to 1/3.
        base (Arc, optional): the initial arc. Defaults to the full circle.

    Raises:
        RangeError: invalid depth or ratio, or arcs shorter than 1e-15.

    Returns:
        CarlesonSet: the truncated set.
    '''
    if not isinstance(depth, (int, np.integer)) or depth < 0:
        raise RangeError(f'depth must be a nonnegative integer. Get: {depth}')
    if depth > MAX_DEPTH:
        raise RangeError(f'depth must not exceed {MAX_DEPTH}. Get: {depth}')
    _check_removal_ratio(removal_ratio)

    keep = (1 - removal_ratio) / 2
    if depth > 0:
        smallest = base.length * removal_ratio * keep ** (depth - 1)
        if smallest < MIN_ARC_LENGTH:
            raise RangeError(f'Arcs at depth {depth} have normalized length {smallest:.3e}, '
                             f'below the representable {MIN_ARC_LENGTH}. Reduce depth.')

    # surviving intervals in normalized circle coordinates t = angle / 2pi
    base_start = base.start / TWO_PI
    lefts = np.array([base_start])
    widths = np.array([base.length])

    starts, lengths, generations = [], [], []
    if base.length < 1:
        starts.append(np.array([base_start + base.length]))
        lengths.append(np.array([1 - base.length]))
        generations.append(np.array([0]))

    for generation in range(1, depth + 1):
        starts.append(lefts + widths * keep)
        lengths.append(widths * removal_ratio)
        generations.append(np.full(len(lefts), generation))
        lefts = np.concatenate([lefts, lefts + widths * (1 - keep)])
        widths = np.concatenate([widths * keep, widths * keep])

    if starts:
        starts = np.concatenate(starts) * TWO_PI
        lengths = np.concatenate(lengths)
        generations = np.concatenate(generations)
    else:
        starts, lengths, generations = np.zeros(0), np.zeros(0), np.zeros(0, dtype=int)

    tag = f'cantor(ratio={removal_ratio!r}, depth={depth}, base=({base.start!r}, {base.length!r}))'
    return CarlesonSet(starts, lengths, generations, depth, tag)


def point_set(angles):
    '''Finite set E = {e^{i*angle}}; the arcs between consecutive points are
    its complementary arcs, all tagged with generation 1.

    Args:
        angles (list of float): the points of E, in radians.

    Returns:
        CarlesonSet: the finite set.
    '''
    angles = np.unique(normalize_angle(np.asarray(angles, dtype=float)))
    if len(angles) == 0:
        raise ValueError('A point set needs at least one point.')
    following = np.append(angles[1:], angles[0] + TWO_PI)
    lengths = (following - angles) / TWO_PI
    keep = lengths > 0
    tag = 'points(' + ', '.join(repr(float(a)) for a in angles) + ')'
    return CarlesonSet(angles[keep], lengths[keep], np.ones(int(keep.sum()), dtype=int), 1, tag)


def log_squared_lengths(count, scale=0.45):
    '''Arc lengths scale / ((k+1) * log^2(k+1)), k = 1..count.

    The lengths are summable (the series of 1/(n log^2 n) converges to about
    2.1) but the entropy series diverges.
    '''
    k = np.arange(1, count + 1, dtype=float)
    return scale / ((k + 1) * np.log(k + 1) ** 2)


def arc_sequence_set(lengths, start=0.0):
    '''Arcs of the given normalized lengths placed one after another,
    counterclockwise from ``start``, separated by single points of E.

    The k-th arc carries generation k (1-based), and the depth equals the
    number of arcs, so the sets built from prefixes of one length sequence
    form a sequence of increasing depth.

    Args:
        lengths (list of float): normalized arc lengths, total at most 1.
        start (float, optional): starting angle. Defaults to 0.

    Returns:
        CarlesonSet: the set.
    '''
    lengths = np.asarray(lengths, dtype=float)
    offsets = np.concatenate([[0.0], np.cumsum(lengths)[:-1]]) if len(lengths) else np.zeros(0)
    starts = start + TWO_PI * offsets
    generations = np.arange(1, len(lengths) + 1)
    tag = f'arc_sequence(count={len(lengths)}, start={start!r})'
    return CarlesonSet(starts, lengths, generations, len(lengths), tag)


def _unique_angles(angles):
    angles = np.sort(normalize_angle(angles))
    if len(angles) == 0:
        return angles
    keep = np.append(True, np.diff(angles) > ANGLE_TOL)
    # first and last may coincide across angle 0
    if len(angles) > 1 and TWO_PI - angles[-1] + angles[0] <= ANGLE_TOL:
        keep[-1] = False
    return angles[keep]


def _survivor_pairs(carleson_set, generation, node_angles):
    '''Consecutive node pairs that bound a surviving interval (a gap that is
    not itself a complementary arc of generation <= generation).'''
    removed = carleson_set.arcs_up_to(generation)
    removed_starts = normalize_angle(carleson_set.starts[removed])
    pairs = []
    n = len(node_angles)
    for i in range(n):
        left = node_angles[i]
        right = node_angles[(i + 1) % n]
        if np.any(np.abs(removed_starts - left) <= ANGLE_TOL):
            continue
        pairs.append((left, right))
    return pairs


def sample_nodes(carleson_set, generation, count_cap=None):
    '''Nodes lambda_j in E: the endpoints of all arcs removed in rounds
    1..generation (and round 0, if present).

    When there are more nodes than ``count_cap``, whole surviving intervals
    are selected in angular order, two endpoints each, so that every kept
    node keeps a partner at the distance of its interval. Sets without
    surviving intervals between nodes (finite point sets) fall back to a
    contiguous angular run.

    Args:
        carleson_set (CarlesonSet): the set E.
        generation (int): generation of the endpoints, at most the set depth.
        count_cap (int, optional): maximal number of nodes. Defaults to no cap.

    Raises:
        RangeError: count_cap < 2 or generation beyond the set depth.
        ConsistencyError: an endpoint is not in E (overlapping generator).

    Returns:
        NodeFamily: the nodes.
    '''
    if count_cap is not None and count_cap < 2:
        raise RangeError(f'count_cap must be at least 2. Get: {count_cap}')
    if generation > carleson_set.generation_depth:
        raise RangeError(f'generation {generation} exceeds the set depth '
                         f'{carleson_set.generation_depth}.')

    arcs = carleson_set.arcs_up_to(generation)
    start, end = carleson_set.endpoint_angles(arcs)
    angles = _unique_angles(np.concatenate([start, end]))
    if len(angles) == 0:
        warnings.warn(f'No complementary arcs up to generation {generation}; the node family is empty.')
        return NodeFamily(angles)

    if count_cap is not None and len(angles) > count_cap:
        pairs = _survivor_pairs(carleson_set, generation, angles)
        if pairs:
            chosen = []
            for left, right in pairs[:count_cap // 2]:
                chosen.extend([left, right])
            angles = _unique_angles(np.array(chosen))
        else:
            angles = angles[:count_cap]

    distance = distance_to_set_many(angles, carleson_set)
    outside = np.nonzero(distance > ANGLE_TOL)[0]
    if len(outside):
        raise ConsistencyError(f'Endpoints are not in E (non-nested generator). '
                               f'Angles: {angles[outside].tolist()}')
    return NodeFamily(angles)
