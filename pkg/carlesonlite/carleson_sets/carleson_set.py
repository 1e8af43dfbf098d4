'''
Definition of a Carleson set (CarlesonSet).

A closed set E of the unit circle is stored through its complementary arcs
I_j, which are open, pairwise disjoint and cover T minus E. Arc data live in
numpy arrays so that sets with many thousands of arcs stay cheap.
'''
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .basic_arcs import TWO_PI, ANGLE_TOL, Arc, normalize_angle, chord

__all__ = ['CarlesonSet', 'distance_to_set', 'distance_to_set_many', 'load_carleson_set']


@dataclass(frozen=True)
class CarlesonSet:
    '''A closed subset E of the circle given by its complementary arcs.

    Args:
        starts (np.ndarray): arc starting angles in [0, 2*pi).
        lengths (np.ndarray): normalized arc lengths in (0, 1].
        generations (np.ndarray): removal round of every arc.
        generation_depth (int): depth of the truncated construction.
        construction_tag (str): the generator and its parameters.

    Raises:
        ValueError: arcs overlap, or their total length exceeds 1.
    '''
    starts: np.ndarray
    lengths: np.ndarray
    generations: np.ndarray
    generation_depth: int = 0
    construction_tag: str = ''
    _order: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        starts = normalize_angle(np.atleast_1d(np.asarray(self.starts, dtype=float)))
        lengths = np.atleast_1d(np.asarray(self.lengths, dtype=float))
        generations = np.atleast_1d(np.asarray(self.generations, dtype=int))
        if not (len(starts) == len(lengths) == len(generations)):
            raise ValueError('Arc arrays must share one length. '
                             f'Get: {len(starts)}, {len(lengths)}, {len(generations)}')
        if np.any(lengths <= 0) or np.any(lengths > 1):
            raise ValueError('Arc lengths must lie in (0, 1].')
        if lengths.sum() > 1 + 1e-12:
            raise ValueError(f'Total arc length exceeds 1. Get: {lengths.sum()}')

        order = np.argsort(starts, kind='stable')
        if len(order) > 1:
            # each arc must end before the next one (cyclically) starts
            sorted_starts = starts[order]
            ends = sorted_starts + TWO_PI * lengths[order]
            next_starts = np.append(sorted_starts[1:], sorted_starts[0] + TWO_PI)
            if np.any(ends > next_starts + 1e-12):
                raise ValueError('Complementary arcs must be pairwise disjoint.')

        for name, value in (('starts', starts), ('lengths', lengths),
                            ('generations', generations), ('_order', order)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def from_arcs(cls, arcs, generation_depth=0, construction_tag=''):
        '''Build a set from a list of Arc objects.'''
        arcs = list(arcs)
        return cls(np.array([a.start for a in arcs], dtype=float),
                   np.array([a.length for a in arcs], dtype=float),
                   np.array([a.generation for a in arcs], dtype=int),
                   generation_depth, construction_tag)

    @property
    def complementary_arcs(self):
        '''The arcs I_j as a tuple of Arc, ordered by starting angle.'''
        return tuple(Arc(float(self.starts[i]), float(self.lengths[i]), int(self.generations[i]))
                     for i in self._order)

    @property
    def n_arcs(self) -> int:
        return len(self.starts)

    @property
    def measure(self) -> float:
        '''Normalized Lebesgue measure of E at this truncation depth.'''
        return max(0.0, 1.0 - float(self.lengths.sum()))

    def arcs_up_to(self, generation):
        '''Indices (in starting-angle order) of arcs removed in rounds <= generation.'''
        return self._order[self.generations[self._order] <= generation]

    def containing_arc(self, angles, tol=ANGLE_TOL):
        '''For each angle, the index of the open arc containing it, or -1.

        Args:
            angles (np.ndarray): angles in radians.
            tol (float, optional): angular tolerance at arc endpoints.

        Returns:
            np.ndarray: arc indices into ``starts``/``lengths``.
        '''
        angles = normalize_angle(np.atleast_1d(np.asarray(angles, dtype=float)))
        result = np.full(angles.shape, -1, dtype=int)
        if self.n_arcs == 0:
            return result

        # unroll arcs crossing angle 0 into a shifted copy so that a sorted
        # search by start angle finds the only candidate arc
        starts = self.starts[self._order]
        ends = starts + TWO_PI * self.lengths[self._order]
        index = self._order
        wrapping = ends > TWO_PI
        if np.any(wrapping):
            starts = np.concatenate([starts[wrapping] - TWO_PI, starts])
            ends = np.concatenate([ends[wrapping] - TWO_PI, ends])
            index = np.concatenate([index[wrapping], index])

        candidate = np.searchsorted(starts, angles, side='right') - 1
        valid = candidate >= 0
        safe = np.where(valid, candidate, 0)
        inside = valid & (angles - starts[safe] > tol) & (ends[safe] - angles > tol)
        result[inside] = index[safe[inside]]
        return result

    def endpoint_angles(self, arc_indices):
        '''Start and end angles (in [0, 2*pi)) of the given arcs.'''
        arc_indices = np.asarray(arc_indices, dtype=int)
        start = self.starts[arc_indices]
        end = normalize_angle(start + TWO_PI * self.lengths[arc_indices])
        return start, end

    def to_dict(self):
        '''JSON document {"arcs": [...], "depth": int, "tag": str}.'''
        arcs = [{'start': float(self.starts[i]), 'length': float(self.lengths[i]),
                 'generation': int(self.generations[i])} for i in self._order]
        return {'arcs': arcs, 'depth': int(self.generation_depth), 'tag': self.construction_tag}

    @classmethod
    def from_dict(cls, data):
        arcs = data['arcs']
        return cls(np.array([a['start'] for a in arcs], dtype=float),
                   np.array([a['length'] for a in arcs], dtype=float),
                   np.array([a.get('generation', 0) for a in arcs], dtype=int),
                   int(data.get('depth', 0)), data.get('tag', ''))

    def save(self, path):
        with open(path, 'w') as fp:
            json.dump(self.to_dict(), fp)


def load_carleson_set(path):
    '''Load a CarlesonSet written by ``CarlesonSet.save``.

    Args:
        path (PathLikeObject(str, pathlib.Path, etc...)): the JSON file.

    Returns:
        CarlesonSet: the loaded set.
    '''
    with open(Path(path), 'r') as fp:
        return CarlesonSet.from_dict(json.load(fp))


def distance_to_set_many(angles, carleson_set, tol=ANGLE_TOL):
    '''Chordal distance from every e^{i*angle} to E.

    The nearest point of E is the point itself when it lies outside all open
    arcs, and otherwise an endpoint of the arc containing it.

    Args:
        angles (np.ndarray): angles in radians.
        carleson_set (CarlesonSet): the set E.
        tol (float, optional): angular tolerance at arc endpoints.

    Returns:
        np.ndarray: distances, same shape as ``angles``.
    '''
    angles = normalize_angle(np.atleast_1d(np.asarray(angles, dtype=float)))
    arc = carleson_set.containing_arc(angles, tol)
    distance = np.zeros(angles.shape)
    inside = arc >= 0
    if np.any(inside):
        start, end = carleson_set.endpoint_angles(arc[inside])
        theta = angles[inside]
        distance[inside] = np.minimum(chord(theta - start), chord(theta - end))
    return distance


def distance_to_set(z, carleson_set):
    '''Chordal distance min_{lambda in E} |z - lambda| for a unimodular z.

    Args:
        z (complex): a point with |z| = 1 up to 1e-12.
        carleson_set (CarlesonSet): the set E.

    Raises:
        ValueError: z is not unimodular.

    Returns:
        float: the distance.
    '''
    if abs(abs(z) - 1) > 1e-12:
        raise ValueError(f'distance_to_set expects a unimodular point. Get: |z| = {abs(z)}')
    return float(distance_to_set_many(np.angle(z), carleson_set)[0])
