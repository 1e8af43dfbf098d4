'''
Basic objects on the unit circle: arcs and node families.

Angles are radians in [0, 2*pi); arc lengths are normalized (the full
circle has length 1).
'''
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ['TWO_PI', 'ANGLE_TOL', 'normalize_angle', 'chord', 'chordal_distance',
           'Arc', 'NodeFamily', 'interlaced']

TWO_PI = 2 * math.pi

# chordal tolerance for equality of unimodular points
ANGLE_TOL = 1e-12


def normalize_angle(angle):
    '''Map an angle (or an array of angles) into [0, 2*pi).'''
    wrapped = np.mod(np.asarray(angle, dtype=float), TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    return float(wrapped) if wrapped.ndim == 0 else wrapped


def chord(angle_difference):
    '''Chordal distance between two unit points separated by the given angle.'''
    return 2 * np.abs(np.sin(np.asarray(angle_difference) / 2))


def chordal_distance(z, w):
    '''|z - w| for complex numbers or arrays.'''
    return np.abs(np.asarray(z) - np.asarray(w))


@dataclass(frozen=True)
class Arc:
    '''An open arc of the unit circle.

    Args:
        start (float): starting angle in [0, 2*pi).
        length (float): normalized length in (0, 1].
        generation (int, optional): removal round that produced the arc. Defaults to 0.
    '''
    start: float
    length: float
    generation: int = 0

    def __post_init__(self):
        if not (0 < self.length <= 1):
            raise ValueError(f'Arc length must lie in (0, 1]. Get: {self.length}')
        object.__setattr__(self, 'start', normalize_angle(float(self.start)))

    @property
    def end(self) -> float:
        '''Ending angle, possibly beyond 2*pi for arcs crossing angle 0.'''
        return self.start + TWO_PI * self.length

    def endpoints(self):
        '''Return the two endpoints as unimodular complex numbers.'''
        return np.exp(1j * self.start), np.exp(1j * self.end)

    def to_dict(self):
        return {'start': self.start, 'length': self.length, 'generation': self.generation}


@dataclass(frozen=True)
class NodeFamily:
    '''An ordered family of unimodular nodes lambda_j.

    Nodes are built as exp(i*angle), so |lambda_j| = 1 up to rounding.
    Distinctness is not enforced here: the eigenvector check of the
    Grivaux criterion reports duplicates by name.

    Args:
        angles (np.ndarray): node angles in [0, 2*pi).
    '''
    angles: np.ndarray
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        angles = normalize_angle(np.atleast_1d(np.asarray(self.angles, dtype=float)))
        angles.setflags(write=False)
        nodes = np.exp(1j * angles)
        nodes.setflags(write=False)
        object.__setattr__(self, 'angles', angles)
        object.__setattr__(self, 'nodes', nodes)

    def __len__(self):
        return len(self.angles)

    @property
    def spacing(self) -> float:
        '''Minimal pairwise chordal distance (inf for a single node).'''
        if len(self) < 2:
            return math.inf
        j, k = self.closest_pair()
        return float(abs(self.nodes[j] - self.nodes[k]))

    def pairwise_distances(self):
        return np.abs(self.nodes[:, None] - self.nodes[None, :])

    def closest_pair(self):
        '''Indices (j, k), j < k, of the chordally closest nodes.'''
        if len(self) < 2:
            raise ValueError('A node family with fewer than 2 nodes has no pairs.')
        dist = self.pairwise_distances()
        dist[np.diag_indices_from(dist)] = np.inf
        j, k = np.unravel_index(np.argmin(dist), dist.shape)
        return (int(min(j, k)), int(max(j, k)))

    def duplicates(self, tol=ANGLE_TOL):
        '''Return every pair (j, k), j < k, of nodes closer than tol.'''
        if len(self) < 2:
            return []
        dist = self.pairwise_distances()
        j, k = np.nonzero(np.triu(dist <= tol, k=1))
        return [(int(a), int(b)) for a, b in zip(j, k)]

    def nearest_partners(self):
        '''For every node, the index of the chordally nearest other node.'''
        dist = self.pairwise_distances()
        dist[np.diag_indices_from(dist)] = np.inf
        return np.argmin(dist, axis=1)

    def to_dict(self):
        return {'angles': [float(a) for a in self.angles]}


def interlaced(angles_a, angles_b, tol=ANGLE_TOL) -> bool:
    '''Whether two point families of equal size alternate strictly around the circle.'''
    a = normalize_angle(np.atleast_1d(np.asarray(angles_a, dtype=float)))
    b = normalize_angle(np.atleast_1d(np.asarray(angles_b, dtype=float)))
    if len(a) != len(b) or len(a) == 0:
        return False
    merged = np.concatenate([a, b])
    labels = np.concatenate([np.zeros(len(a), dtype=int), np.ones(len(b), dtype=int)])
    order = np.argsort(merged, kind='stable')
    merged, labels = merged[order], labels[order]
    gaps = np.diff(np.append(merged, merged[0] + TWO_PI))
    if np.any(gaps <= tol):
        return False
    return bool(np.all(labels != np.roll(labels, -1)))
