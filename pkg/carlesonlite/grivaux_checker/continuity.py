'''
Condition (iii): every kernel is approximated by a kernel at a nearby node.

The continuity table pairs each node with its chordally nearest partner and
records ||k_lambda - k_mu||_{H_*}; a power law kernel_gap ~ C * chordal_gap^beta
is fitted and reported, never asserted.
'''
import csv
import json
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..errors import RangeError
from ..hstar_space import kernel_gap

__all__ = ['CSV_HEADER', 'LOG_SPREAD_TOL', 'ContinuityTable', 'continuity_table', 'fit_power_law',
           'pooled_modulus_fit', 'epsilon_certificate', 'epsilon_generation_scan']

CSV_HEADER = ['n', 'm', 'chordal_gap', 'kernel_gap']

# smallest spread of log chordal gaps that supports a power-law fit
LOG_SPREAD_TOL = 1e-6


@dataclass(frozen=True)
class ContinuityTable:
    '''Rows (n, m, chordal_gap, kernel_gap), sorted by chordal_gap descending.

    Args:
        rows (List[Tuple[int, int, float, float]]): the nearest-partner rows.
        modulus_fit (float, optional): fitted exponent beta.
        prefactor (float, optional): fitted constant C.
        generation (int, optional): generation of the node family.
    '''
    rows: List[Tuple[int, int, float, float]]
    modulus_fit: Optional[float] = None
    prefactor: Optional[float] = None
    generation: Optional[int] = None

    def __len__(self):
        return len(self.rows)

    @property
    def kernel_gaps(self):
        return np.array([row[3] for row in self.rows])

    def gap_of(self, n):
        '''kernel_gap of the row of node n.'''
        for row in self.rows:
            if row[0] == n:
                return row[3]
        raise KeyError(n)

    def to_dict(self):
        return {'header': CSV_HEADER,
                'rows': [list(row) for row in self.rows],
                'modulus_fit': self.modulus_fit,
                'prefactor': self.prefactor,
                'generation': self.generation}

    def save_csv(self, path):
        with open(path, 'w', newline='') as fp:
            writer = csv.writer(fp)
            writer.writerow(CSV_HEADER)
            for n, m, chordal, gap in self.rows:
                writer.writerow([n, m, repr(chordal), repr(gap)])

    def save_json(self, path):
        with open(path, 'w') as fp:
            json.dump(self.to_dict(), fp, sort_keys=True, indent=2)


def fit_power_law(chordal, gaps):
    '''Least squares on log kernel_gap = log C + beta log chordal_gap.

    Returns (None, None) when the chordal gaps do not spread over more than
    LOG_SPREAD_TOL in log scale (Cantor endpoint families of one generation
    have a single nearest-partner distance).
    '''
    chordal, gaps = np.asarray(chordal, dtype=float), np.asarray(gaps, dtype=float)
    keep = (chordal > 0) & (gaps > 0)
    if np.count_nonzero(keep) < 2:
        return None, None
    log_chordal = np.log(chordal[keep])
    if np.ptp(log_chordal) < LOG_SPREAD_TOL:
        return None, None
    beta, log_c = np.polyfit(log_chordal, np.log(gaps[keep]), 1)
    return float(beta), float(math.exp(log_c))


def pooled_modulus_fit(tables):
    '''Power-law fit over the rows of several tables (one per generation).

    Returns:
        Dict: modulus_fit, prefactor, rows.
    '''
    rows = [row for table in tables for row in table.rows]
    beta, prefactor = fit_power_law([r[2] for r in rows], [r[3] for r in rows])
    return {'modulus_fit': beta, 'prefactor': prefactor, 'rows': len(rows)}


def continuity_table(nodes, gram, generation=None):
    '''Nearest-partner kernel gaps.

    Args:
        nodes (NodeFamily): the nodes, n >= 2.
        gram (GramMatrix): G over the nodes.
        generation (int, optional): recorded in the table.

    Raises:
        RangeError: fewer than 2 nodes.

    Returns:
        ContinuityTable: the table.
    '''
    if len(nodes) < 2:
        raise RangeError(f'A continuity table needs at least 2 nodes. Get: {len(nodes)}')
    partners = nodes.nearest_partners()
    rows = []
    for n, m in enumerate(partners):
        m = int(m)
        chordal = float(abs(nodes.nodes[n] - nodes.nodes[m]))
        rows.append((n, m, chordal, kernel_gap(gram, n, m)))
    rows.sort(key=lambda row: (-row[2], row[0]))
    beta, prefactor = fit_power_law([r[2] for r in rows], [r[3] for r in rows])
    return ContinuityTable(rows, beta, prefactor, generation)


def epsilon_certificate(table, epsilon):
    '''Nodes whose nearest-partner kernel_gap is below epsilon, and the rest.

    Returns:
        Dict: epsilon, satisfied, failing, all_pass, max_gap.
    '''
    satisfied = [row[0] for row in table.rows if row[3] < epsilon]
    failing = [row[0] for row in table.rows if not row[3] < epsilon]
    return {'epsilon': epsilon, 'generation': table.generation,
            'satisfied': sorted(satisfied), 'failing': sorted(failing),
            'all_pass': not failing,
            'max_gap': float(table.kernel_gaps.max()) if len(table) else 0.0}


def epsilon_generation_scan(tables, epsilon):
    '''The minimal generation whose table passes epsilon_certificate entirely.

    Args:
        tables (List[ContinuityTable]): tables carrying their generation.
        epsilon (float): the threshold.

    Returns:
        Dict: epsilon, per_generation (max gap and failure count), passing_generation.
    '''
    per_generation = []
    passing = None
    for table in sorted(tables, key=lambda t: t.generation):
        certificate = epsilon_certificate(table, epsilon)
        per_generation.append({'generation': table.generation, 'max_gap': certificate['max_gap'],
                               'failing': len(certificate['failing'])})
        if passing is None and certificate['all_pass']:
            passing = table.generation
    return {'epsilon': epsilon, 'per_generation': per_generation, 'passing_generation': passing}
