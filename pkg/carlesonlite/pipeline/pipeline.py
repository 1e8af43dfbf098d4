'''
The stage runner: set -> weight -> nodes -> operator -> checks -> reports.

Every stage writes ``<stage>.json`` under the savepath; the run ends with
``summary.json``. A constructive stage that raises, or a gating check that
does not pass, stops the run with StageFailure; a numerically singular Gram
matrix stops it with IllConditionedError.
'''
import logging
import math

import numpy as np

from ..errors import DomainError, IllConditionedError, StageFailure
from ..carleson_sets import (NodeFamily, cantor_like_set, carleson_margin, distance_to_set_many,
                             entropy, sample_nodes)
from ..outer_builder import boundary_weight, boundedness_certificate, outer_function
from ..hstar_space import (KernelCoefficients, assert_well_conditioned, evaluation_bound_check,
                           gram_matrix)
from ..truncated_operator import (build_truncation, build_unitary, eigen_relation_check,
                                  isometry_check, resolvent_cross_check, spectrum_report,
                                  spectrum_sweep, subspaces, unitary_checks, unitary_spectrum,
                                  verify_subspace_identity)
from ..grivaux_checker import (check_completeness, check_eigenvectors, continuity_table,
                               epsilon_generation_scan, orbit_diagnostics, pooled_modulus_fit)
from .report_utils import make_savepath, write_report, write_table_csv

__all__ = ['STAGES', 'HEURISTIC_STAGES', 'EXIT_OK', 'EXIT_USAGE', 'EXIT_STAGE_FAILURE',
           'EXIT_ILL_CONDITIONED', 'EVALUATION_MIN_DISTANCE', 'far_from_set_angles', 'Pipeline',
           'run_pipeline']

LOGGER = logging.getLogger(__name__)

STAGES = ['set', 'weight', 'nodes', 'certificate', 'gram', 'truncation', 'eigenvectors',
          'conditioning', 'eigen_relation', 'subspaces', 'subspace_identity', 'unitary', 'resolvent',
          'spectrum', 'completeness', 'continuity', 'evaluation_bound', 'orbit']

# reported, never gating
HEURISTIC_STAGES = {'orbit'}

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_STAGE_FAILURE = 3
EXIT_ILL_CONDITIONED = 4

# minimal chordal distance from E of the random points of the evaluation bound
EVALUATION_MIN_DISTANCE = 0.1
# share of the largest achievable distance used when it is below the minimum
EVALUATION_DISTANCE_FRACTION = 0.5
EVALUATION_DRAW_BATCH = 4096
EVALUATION_MAX_BATCHES = 64

SPECTRUM_TOL = 1e-12
HALF_CHORD_TOL = 1e-6


def _random_coefficients(rng, n, count=None):
    shape = (n,) if count is None else (n, count)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def far_from_set_angles(carleson_set, count, rng, min_distance = EVALUATION_MIN_DISTANCE):
    '''Draw up to ``count`` uniform angles whose points keep a distance from E.

    The distance asked for is lowered to half the largest achievable one,
    2 sin(pi * l_max / 2) for the widest complementary arc of length l_max,
    when that is smaller. At most EVALUATION_MAX_BATCHES batches are drawn.

    Args:
        carleson_set (CarlesonSet): the set E.
        count (int): the number of angles wanted.
        rng (np.random.Generator): the random source.
        min_distance (float, optional): distance from E asked for. Defaults to 0.1.

    Returns:
        Tuple[List[float], float, float]: the angles, the distance used and the largest achievable one.
    '''
    if carleson_set.n_arcs == 0:
        LOGGER.warning('E has no complementary arcs; no point lies outside E.')
        return [], 0.0, 0.0
    max_distance = float(2 * np.sin(np.pi * carleson_set.lengths.max() / 2))
    if max_distance < min_distance:
        LOGGER.warning('No point lies %.3g away from E (largest distance %.3g); using %.3g.',
                       min_distance, max_distance, EVALUATION_DISTANCE_FRACTION * max_distance)
        min_distance = EVALUATION_DISTANCE_FRACTION * max_distance

    angles = []
    for _ in range(EVALUATION_MAX_BATCHES):
        candidates = 2 * np.pi * rng.random(EVALUATION_DRAW_BATCH)
        far = distance_to_set_many(candidates, carleson_set) >= min_distance
        angles.extend(candidates[far].tolist())
        if len(angles) >= count:
            break
    if len(angles) < count:
        LOGGER.warning('Only %d of %d evaluation points found at distance %.3g from E.',
                       len(angles), count, min_distance)
    return angles[:count], min_distance, max_distance


class Pipeline:
    '''Sequential run of all stages for one configuration.

    Args:
        config (PipelineConfig): the validated configuration.
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): output directory.
            Defaults to ``config.out_dir``.
    '''
    def __init__(self, config, savepath = None):
        self.config = config
        self.savepath = make_savepath(savepath if savepath else config.out_dir, reset_index=True)
        self.rng = np.random.default_rng(config.seed)
        self.stage_results = []

    def run(self):
        '''Run every stage in order.

        Raises:
            StageFailure: a stage raised, or a gating check did not pass.
            IllConditionedError: the Gram matrix is numerically singular.

        Returns:
            Dict: the summary (stages, all_passed, failed_stage, exit_code).
        '''
        for stage in STAGES:
            LOGGER.info('Stage %s', stage)
            try:
                report = getattr(self, f'_stage_{stage}')()
            except IllConditionedError as e:
                self._record_error(stage, e)
                self._finish(stage, EXIT_ILL_CONDITIONED)
                raise
            except Exception as e:
                self._record_error(stage, e)
                self._finish(stage, EXIT_STAGE_FAILURE)
                raise StageFailure(stage, str(e)) from e

            write_report(stage, report, self.config, self.savepath)
            passed = report.get('passed')
            self.stage_results.append({'stage': stage, 'passed': passed,
                                       'heuristic': stage in HEURISTIC_STAGES})
            if passed is False and stage not in HEURISTIC_STAGES:
                LOGGER.error('Stage %s did not pass', stage)
                self._finish(stage, EXIT_STAGE_FAILURE)
                raise StageFailure(stage, f'the check did not pass (see {stage}.json).')
            LOGGER.debug('Stage %s done, passed = %s', stage, passed)
        return self._finish(None, EXIT_OK)

    def _record_error(self, stage, error):
        LOGGER.error('Stage %s raised %s: %s', stage, type(error).__name__, error)
        write_report(stage, {'passed': False, 'error': f'{type(error).__name__}: {error}'},
                     self.config, self.savepath)
        self.stage_results.append({'stage': stage, 'passed': False,
                                   'heuristic': stage in HEURISTIC_STAGES})

    def _finish(self, failed_stage, exit_code):
        gating = [r['passed'] for r in self.stage_results if not r['heuristic']]
        summary = {'stages': self.stage_results,
                   'all_passed': failed_stage is None and all(p is not False for p in gating),
                   'failed_stage': failed_stage,
                   'exit_code': exit_code}
        write_report('summary', summary, self.config, self.savepath)
        return summary

    # constructive stages

    def _stage_set(self):
        config = self.config
        self.carleson_set = cantor_like_set(config.depth, config.ratio)
        sequence = [cantor_like_set(d, config.ratio) for d in range(1, config.depth + 1)]
        margin = carleson_margin(sequence) if len(sequence) >= 3 else None
        return {'set': self.carleson_set.to_dict(), 'n_arcs': self.carleson_set.n_arcs,
                'measure': self.carleson_set.measure, 'entropy': entropy(self.carleson_set),
                'carleson_margin': margin, 'passed': None}

    def _stage_weight(self):
        weight = boundary_weight(self.carleson_set, self.config.exponent, self.config.grid_size)
        self.outer = outer_function(weight)
        phi0 = self.outer.value_at_zero
        return {'N': weight.grid_size, 'p': weight.exponent, 'floor': weight.floor,
                'floor_points': int(weight.floor_mask.sum()), 'mean_log': weight.mean_log,
                'phi0': phi0, 'passed': None}

    def _stage_nodes(self):
        config = self.config
        nodes = sample_nodes(self.carleson_set, config.generation, config.count_cap)
        if config.extra_node_angles:
            extra = np.asarray(config.extra_node_angles, dtype=float)
            outside = distance_to_set_many(extra, self.carleson_set) > 0
            if np.any(outside):
                raise DomainError(f'Extra nodes must lie in E. Get: {extra[outside].tolist()}')
            nodes = NodeFamily(np.concatenate([nodes.angles, extra]))
        self.nodes = nodes
        return {'generation': config.generation, 'n': len(nodes), 'angles': nodes.angles,
                'spacing': nodes.spacing if len(nodes) > 1 else None,
                'duplicates': nodes.duplicates(), 'passed': None}

    def _stage_certificate(self):
        value = boundedness_certificate(self.outer, self.nodes)
        bound = 2 ** (self.config.exponent - 1)
        self.certificate = value
        return {'certificate': value, 'bound': bound,
                'passed': bool(math.isfinite(value) and value <= bound * (1 + 1e-9))}

    def _stage_gram(self):
        self.gram = gram_matrix(self.nodes, self.outer, check_conditioning=False)
        entries = self.gram.entries
        return {'n': len(self.gram), 'min_eigenvalue': self.gram.min_eigenvalue,
                'max_eigenvalue': self.gram.max_eigenvalue,
                'hermitian_defect': float(np.abs(entries - entries.conj().T).max()),
                'diagonal': np.real(np.diag(entries)), 'passed': None}

    def _stage_truncation(self):
        self.operator = build_truncation(self.nodes, self.gram)
        return {'n': len(self.operator), 'eigenvalues': self.operator.diagonal, 'passed': None}

    def _stage_subspaces(self):
        self.pair = subspaces(self.operator)
        return {'dimension': self.pair.dimension, 'n': len(self.operator), 'passed': None}

    # checks

    def _stage_eigenvectors(self):
        return check_eigenvectors(self.operator)

    def _stage_conditioning(self):
        assert_well_conditioned(self.gram)
        return {'condition_number': self.gram.condition_number,
                'min_eigenvalue': self.gram.min_eigenvalue, 'passed': True}

    def _stage_eigen_relation(self):
        return eigen_relation_check(self.operator, rng=self.rng)

    def _stage_subspace_identity(self):
        report = verify_subspace_identity(self.operator, self.pair)
        isometry = isometry_check(self.operator, self.pair, self.config.random_checks, self.rng)
        report['isometry'] = isometry
        report['passed'] = bool(report['passed'] and isometry['passed'])
        return report

    def _stage_unitary(self):
        decomposition = build_unitary(self.operator, self.pair, self.config.alpha)
        report = unitary_checks(self.operator, self.pair, decomposition,
                                self.config.random_checks, self.rng)
        spectrum = unitary_spectrum(decomposition, self.gram)
        mass_error = abs(spectrum['total_mass'] - spectrum['norm_square']) / spectrum['norm_square']
        report['spectrum'] = spectrum
        report['spectral_mass_error'] = mass_error
        report['passed'] = bool(report['passed'] and mass_error <= 1e-8)
        return report

    def _stage_resolvent(self):
        checks = []
        for re, im in self.config.resolvent_points:
            g = KernelCoefficients(self.nodes, _random_coefficients(self.rng, len(self.nodes)))
            checks.append(resolvent_cross_check(self.operator, complex(re, im), g,
                                                self.config.random_checks, self.rng))
        return {'checks': checks, 'passed': all(c['passed'] for c in checks)}

    def _stage_spectrum(self):
        config = self.config
        report = spectrum_report(self.operator, self.carleson_set, config.generation)
        generations = list(range(1, config.depth + 1))
        report['sweep'] = spectrum_sweep(self.carleson_set, generations)

        # against the set truncated at the node generation the covering
        # distance is the chord of half the largest surviving interval
        agreement = []
        for generation in generations:
            truncated = cantor_like_set(generation, config.ratio)
            sweep = spectrum_sweep(truncated, [generation])
            covering, half_chord = sweep['covering_distances'][0], sweep['survivor_half_chords'][0]
            agreement.append(abs(covering - half_chord) / half_chord)
        report['half_chord_relative_errors'] = agreement

        report['passed'] = bool(report['max_conjugate_error'] <= SPECTRUM_TOL
                                and report['hausdorff_to_E'] <= SPECTRUM_TOL
                                and report['sweep']['monotone']
                                and max(agreement) <= HALF_CHORD_TOL)
        return report

    def _stage_completeness(self):
        return check_completeness(self.operator, self.gram)

    def _stage_continuity(self):
        config = self.config
        tables, per_generation = [], []
        for generation in range(1, config.depth + 1):
            nodes = sample_nodes(self.carleson_set, generation, config.count_cap)
            if len(nodes) < 2:
                continue
            capped = len(sample_nodes(self.carleson_set, generation)) > len(nodes)
            gram = gram_matrix(nodes, self.outer)
            table = continuity_table(nodes, gram, generation)
            write_table_csv(f'continuity_g{generation}', table, self.savepath)
            tables.append((nodes, table, capped))

            partners = nodes.nearest_partners()
            reverse = [abs(gap - table.gap_of(m)) for n, m, _, gap in table.rows
                       if int(partners[m]) == n]
            per_generation.append({'generation': generation, 'n': len(nodes), 'capped': capped,
                                   'modulus_fit': table.modulus_fit, 'prefactor': table.prefactor,
                                   'min_gap': float(table.kernel_gaps.min()),
                                   'max_gap': float(table.kernel_gaps.max()),
                                   'symmetry_defect': float(max(reverse)) if reverse else 0.0})

        scans = [epsilon_generation_scan([t for _, t, _ in tables], epsilon) for epsilon in config.epsilons]
        transitions = self._gap_transitions(tables)
        positive = all(entry['min_gap'] > 0 for entry in per_generation)
        symmetric = all(entry['symmetry_defect'] <= 1e-12 for entry in per_generation)
        dominated = all(entry['max_gap'] <= 2 * self.certificate * (1 + 1e-9)
                        for entry in per_generation)
        # capped families are not nested, so only uncapped refinements gate
        nonincreasing = all(t['nonincreasing'] for t in transitions if not t['capped'])
        found = all(scan['passing_generation'] is not None for scan in scans)
        return {'per_generation': per_generation, 'epsilon_scans': scans,
                'pooled_fit': pooled_modulus_fit([t for _, t, _ in tables]),
                'transitions': transitions, 'nonincreasing': nonincreasing,
                'positive': positive, 'symmetric': symmetric, 'dominated': dominated,
                'passed': bool(positive and symmetric and dominated and nonincreasing and found)}

    @staticmethod
    def _gap_transitions(tables):
        '''Whether nearest-partner gaps of nodes shared by consecutive generations do not grow.'''
        transitions = []
        for (nodes, table, capped), (next_nodes, next_table, next_capped) in zip(tables, tables[1:]):
            grown = []
            for n, angle in enumerate(nodes.angles):
                match = np.nonzero(np.abs(next_nodes.angles - angle) <= 1e-12)[0]
                if len(match) and next_table.gap_of(int(match[0])) > table.gap_of(n) * (1 + 1e-9):
                    grown.append(n)
            transitions.append({'from': table.generation, 'to': next_table.generation,
                                'capped': bool(capped or next_capped), 'grown': grown,
                                'nonincreasing': not grown})
        return transitions

    def _stage_evaluation_bound(self):
        count = self.config.random_checks
        angles, min_distance, max_distance = far_from_set_angles(self.carleson_set, count, self.rng)
        checks = []
        for angle in angles:
            f = KernelCoefficients(self.nodes, _random_coefficients(self.rng, len(self.nodes)))
            checks.append(evaluation_bound_check(f, complex(np.exp(1j * angle)), self.gram,
                                                 self.outer, self.carleson_set))
        decided = [c for c in checks if not c['inconclusive']]
        return {'count': count, 'drawn': len(angles), 'inconclusive': count - len(decided),
                'min_distance': min_distance, 'max_distance': max_distance,
                'max_ratio': max((c['lhs'] / c['rhs'] for c in decided), default=None),
                'checks': checks,
                'passed': all(c['passed'] for c in decided) if decided else None}

    def _stage_orbit(self):
        n = len(self.nodes)
        start = KernelCoefficients(self.nodes, np.ones(n, dtype=complex))
        # targets on the torus of the start vector: same moduli, random phases
        targets = [start.with_coeffs(np.exp(2j * np.pi * self.rng.random(n))) for _ in range(3)]
        report = orbit_diagnostics(self.operator, self.gram, start, self.config.orbit_steps, targets)
        report['passed'] = None
        return report


def run_pipeline(config, savepath = None):
    '''Run the pipeline for a configuration.

    Args:
        config (PipelineConfig): the configuration.
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): output directory.
            Defaults to ``config.out_dir``.

    Raises:
        StageFailure: see ``Pipeline.run``.
        IllConditionedError: see ``Pipeline.run``.

    Returns:
        Dict: the summary.
    '''
    return Pipeline(config, savepath).run()
