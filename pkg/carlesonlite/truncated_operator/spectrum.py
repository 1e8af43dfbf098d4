'''
Point spectrum of the truncation and its Hausdorff position relative to conj(E).

Conjugation is an isometry of the circle, so distances between {conj(lambda_j)}
and conj(E) equal those between the nodes and E.
'''
import logging
import math

import numpy as np

from ..carleson_sets import (TWO_PI, CarlesonSet, chord, normalize_angle, sample_nodes,
                             distance_to_set_many)

__all__ = ['covering_distance', 'largest_survivor_half_chord', 'spectrum_report', 'spectrum_sweep']

LOGGER = logging.getLogger(__name__)


def _cyclic_gaps(node_angles):
    angles = np.sort(normalize_angle(np.atleast_1d(node_angles)))
    following = np.append(angles[1:], angles[0] + TWO_PI)
    return angles, following


def covering_distance(node_angles, carleson_set):
    '''sup over x in E of the chordal distance from x to the nearest node.

    Between consecutive nodes a < b the farthest point of E is the midpoint
    when it lies in E; otherwise it is one of the two endpoints of the
    complementary arc containing the midpoint.

    Args:
        node_angles (np.ndarray): node angles.
        carleson_set (CarlesonSet): E.

    Returns:
        float: the covering distance (inf without nodes).
    '''
    if len(np.atleast_1d(node_angles)) == 0:
        return math.inf
    left, right = _cyclic_gaps(node_angles)
    midpoints = (left + right) / 2
    arcs = carleson_set.containing_arc(midpoints)

    best = 0.0
    for a, b, arc in zip(left, right, arcs):
        if arc < 0:
            best = max(best, float(chord((b - a) / 2)))
            continue
        start, end = carleson_set.endpoint_angles([arc])
        for x in (start[0], end[0]):
            # unroll x into [a, b]
            offset = normalize_angle(x - a)
            best = max(best, float(min(chord(offset), chord(b - a - offset))))
    return best


def largest_survivor_half_chord(node_angles, carleson_set, generation):
    '''Chord of half the largest node gap that is not a removed arc of round <= generation.

    For the complete endpoint family of generation g against a set truncated
    at depth g this equals the covering distance.
    '''
    left, right = _cyclic_gaps(node_angles)
    midpoints = (left + right) / 2
    arcs = carleson_set.containing_arc(midpoints)
    largest = 0.0
    for a, b, arc in zip(left, right, arcs):
        removed = arc >= 0 and carleson_set.generations[arc] <= generation
        if removed:
            # a removed gap starts at its left node
            removed = chord(carleson_set.starts[arc] - a) <= 1e-12
        if not removed:
            largest = max(largest, b - a)
    return float(chord(largest / 2))


def spectrum_report(operator, carleson_set, generation=None):
    '''Eigenvalues conj(lambda_j) and both one-sided Hausdorff distances to conj(E).

    Args:
        operator (TruncatedOperator): T.
        carleson_set (CarlesonSet): E, the set the nodes were sampled from.
        generation (int, optional): node generation recorded in the report.

    Returns:
        Dict: generation, eigenvalues, hausdorff_to_E, hausdorff_from_E,
        max_conjugate_error, survivor_half_chord.
    '''
    eigenvalues = operator.diagonal
    angles = operator.nodes.angles
    to_set = distance_to_set_many(-angles, _conjugate(carleson_set)) if len(angles) else np.zeros(0)
    report = {
        'generation': generation,
        'eigenvalues': [[float(z.real), float(z.imag)] for z in eigenvalues],
        'max_conjugate_error': float(np.abs(eigenvalues - operator.nodes.nodes.conj()).max()),
        'hausdorff_to_E': float(to_set.max()) if len(to_set) else 0.0,
        'hausdorff_from_E': covering_distance(angles, carleson_set),
    }
    if generation is not None:
        report['survivor_half_chord'] = largest_survivor_half_chord(angles, carleson_set, generation)
    return report


def _conjugate(carleson_set):
    '''conj(E): arcs reflected through the real axis.'''
    ends = carleson_set.starts + TWO_PI * carleson_set.lengths
    return CarlesonSet(normalize_angle(-ends), carleson_set.lengths, carleson_set.generations,
                       carleson_set.generation_depth, carleson_set.construction_tag)


def spectrum_sweep(carleson_set, generations, count_cap=None):
    '''Covering distance from E to the full endpoint family over several generations.

    Returns:
        Dict: generations, covering_distances, survivor_half_chords, monotone.
    '''
    distances, half_chords = [], []
    for generation in generations:
        nodes = sample_nodes(carleson_set, generation, count_cap)
        distances.append(covering_distance(nodes.angles, carleson_set))
        half_chords.append(largest_survivor_half_chord(nodes.angles, carleson_set, generation))
        LOGGER.debug('generation %d: covering distance %.6e', generation, distances[-1])
    monotone = all(b < a for a, b in zip(distances, distances[1:]))
    return {'generations': list(generations), 'covering_distances': distances,
            'survivor_half_chords': half_chords, 'monotone': bool(monotone)}
