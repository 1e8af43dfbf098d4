import json
import math

import numpy as np
import pytest

from carlesonlite import (IllConditionedError, RangeError, StageFailure, boundary_weight, cantor_like_set,
                          continuity_table, create_pipeline_config, distance_to_set_many, gram_matrix,
                          load_pipeline_config, outer_function, run_pipeline, sample_nodes)
from carlesonlite.cli import main
from carlesonlite.pipeline import (STAGES, Pipeline, archive_reports, clear_reports, far_from_set_angles,
                                  load_all_reports, load_index, load_report, write_report)
from carlesonlite.pipeline_config import PipelineConfig, validate_pipeline_config

SMALL = dict(ratio=1 / 3, depth=4, generation=3, grid_size=2 ** 12, count_cap=64,
             random_checks=10, orbit_steps=200, seed=7)


def small_config(**overrides):
    parameters = dict(SMALL)
    parameters.update(overrides)
    return validate_pipeline_config(PipelineConfig(**parameters))


def test_config_round_trip(tmp_path):
    path = tmp_path / 'pipeline_config.json'
    written = create_pipeline_config(path, **SMALL)
    assert load_pipeline_config(path) == written


@pytest.mark.parametrize('overrides', [
    {'ratio': 1.5},
    {'depth': 31},
    {'generation': 5},
    {'grid_size': 1000},
    {'count_cap': 1},
    {'epsilons': []},
    {'orbit_steps': 10 ** 6 + 1},
    {'resolvent_points': [[1.0]]},
])
def test_config_ranges(overrides):
    with pytest.raises(RangeError):
        small_config(**overrides)


def test_config_unknown_parameter(tmp_path):
    with pytest.raises(TypeError):
        create_pipeline_config(tmp_path / 'c.json', colour='blue')


def test_config_alpha():
    assert small_config(alpha_phase=math.pi).alpha == pytest.approx(-1)


def test_report_index(tmp_path):
    write_report('first', {'value': 1 + 2j, 'array': np.arange(3), 'passed': True}, savepath=tmp_path)
    write_report('second', {'flag': np.bool_(False), 'passed': None}, savepath=tmp_path)
    reports = load_all_reports(tmp_path)
    assert [r['header']['stage'] for r in reports] == ['first', 'second']
    assert load_report('first', tmp_path)['value'] == [1.0, 2.0]
    assert load_report('first', tmp_path)['array'] == [0, 1, 2]
    assert [e['file'] for e in load_index(tmp_path)] == ['first.json', 'second.json']
    clear_reports(tmp_path)
    assert not (tmp_path / 'first.json').exists()
    assert not (tmp_path / 'reports.txt').exists()


def test_small_pipeline_passes(tmp_path):
    summary = run_pipeline(small_config(), tmp_path)
    assert summary['exit_code'] == 0
    assert summary['all_passed']
    assert [s['stage'] for s in summary['stages']] == STAGES
    for stage in STAGES:
        assert (tmp_path / f'{stage}.json').exists()
    assert (tmp_path / 'continuity_g4.csv').exists()
    assert load_report('orbit', tmp_path)['heuristic']
    assert load_report('summary', tmp_path)['failed_stage'] is None

    continuity = load_report('continuity', tmp_path)
    assert continuity['nonincreasing']
    assert [(t['from'], t['to'], t['capped']) for t in continuity['transitions']] == \
        [(1, 2, False), (2, 3, False), (3, 4, False)]
    assert continuity['pooled_fit']['modulus_fit'] > 0
    assert all(entry['modulus_fit'] is None for entry in continuity['per_generation'])


def test_pipeline_is_reproducible(tmp_path):
    run_pipeline(small_config(), tmp_path)
    first = {p.name: p.read_bytes() for p in tmp_path.glob('*.json')}
    run_pipeline(small_config(), tmp_path)
    second = {p.name: p.read_bytes() for p in tmp_path.glob('*.json')}
    assert first == second


def test_duplicate_node_fails_at_eigenvectors(tmp_path):
    nodes = sample_nodes(cantor_like_set(4, 1 / 3), 3, 64)
    config = small_config(extra_node_angles=[float(nodes.angles[0])])
    with pytest.raises(StageFailure) as info:
        run_pipeline(config, tmp_path)
    assert info.value.stage == 'eigenvectors'
    summary = load_report('summary', tmp_path)
    assert summary['exit_code'] == 3
    assert load_report('eigenvectors', tmp_path)['duplicates'] == [[0, 14]]


def test_near_duplicate_nodes_are_ill_conditioned(tmp_path):
    config = small_config(extra_node_angles=[1e-3, 1e-3 + 1e-9])
    with pytest.raises(IllConditionedError):
        run_pipeline(config, tmp_path)
    summary = load_report('summary', tmp_path)
    assert summary['failed_stage'] == 'conditioning'
    assert summary['exit_code'] == 4


def test_extra_node_outside_set(tmp_path):
    with pytest.raises(StageFailure) as info:
        run_pipeline(small_config(extra_node_angles=[math.pi]), tmp_path)
    assert info.value.stage == 'nodes'


def test_exponent_one_refuses_certificate(tmp_path):
    with pytest.raises(StageFailure) as info:
        run_pipeline(small_config(exponent=1.0), tmp_path)
    assert info.value.stage == 'certificate'
    assert load_report('summary', tmp_path)['exit_code'] == 3


def test_cli_gen_set(tmp_path, capsys):
    assert main(['gen-set', '--ratio', '0.3333333333333333', '--depth', '5', '--out', str(tmp_path)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary['n_arcs'] == 31
    assert summary['carleson_margin']['carleson_consistent']
    assert (tmp_path / 'carleson_set.json').exists()


def test_cli_usage_errors(tmp_path):
    assert main(['gen-set', '--ratio', '1.5', '--out', str(tmp_path)]) == 2
    assert main(['clark', '--zeros', '1.2', '--out', str(tmp_path)]) == 2
    assert main(['clark', '--zeros', 'abc', '--out', str(tmp_path)]) == 2
    assert main(['no-such-command']) == 2


def test_cli_clark(tmp_path, capsys):
    assert main(['clark', '--zeros', '0,0', '--alpha=1,-1', '--out', str(tmp_path)]) == 0
    output = json.loads(capsys.readouterr().out)
    assert output['passed']
    taus = sorted(atom['tau'][0] for atom in output['atoms'][0])
    assert taus == pytest.approx([-1, 1], abs=1e-10)
    report = load_report('clark', tmp_path)
    assert report['family']['interlaced']
    assert (tmp_path / 'clark_measure_1.json').exists()


def test_cli_pipeline(tmp_path):
    config_path = tmp_path / 'pipeline_config.json'
    create_pipeline_config(config_path, **SMALL)
    out = tmp_path / 'out'
    assert main(['pipeline', '--config', str(config_path), '--out', str(out)]) == 0
    assert load_report('summary', out)['all_passed']

    create_pipeline_config(config_path, **dict(SMALL, exponent=1.0))
    assert main(['pipeline', '--config', str(config_path), '--out', str(out)]) == 3


def test_cli_continuity(tmp_path):
    arguments = ['continuity', '--depth', '3', '--generation', '3', '--grid-size', '4096',
                 '--epsilon', '0.5', '--epsilon', '0.01', '--out', str(tmp_path)]
    assert main(arguments) == 0
    report = load_report('epsilon_certificates', tmp_path)
    assert [c['epsilon'] for c in report['certificates']] == [0.5, 0.01]
    assert (tmp_path / 'continuity.csv').exists()


def test_cli_init_config(tmp_path):
    path = tmp_path / 'pipeline_config.json'
    assert main(['init-config', '--path', str(path), '--seed', '3']) == 0
    assert load_pipeline_config(path).seed == 3


def test_archive_reports(tmp_path):
    savepath, history = tmp_path / 'out', tmp_path / 'history'
    write_report('first', {'passed': True}, savepath=savepath)
    write_report('second', {'passed': None}, savepath=savepath)
    (savepath / 'unlisted.txt').write_text('kept')

    assert archive_reports(savepath, history) == history
    assert sorted(p.name for p in history.iterdir()) == ['first.json', 'reports.txt', 'second.json']
    assert [r['header']['stage'] for r in load_all_reports(history)] == ['first', 'second']
    assert sorted(p.name for p in savepath.iterdir()) == ['unlisted.txt']
    assert archive_reports(savepath, history) is None


def test_far_from_set_angles_keeps_requested_distance():
    carleson_set = cantor_like_set(4, 1 / 3)
    angles, used, largest = far_from_set_angles(carleson_set, 25, np.random.default_rng(0))
    assert largest == pytest.approx(1.0)
    assert used == 0.1
    assert len(angles) == 25
    assert np.all(distance_to_set_many(np.array(angles), carleson_set) >= 0.1)


def test_far_from_set_angles_on_narrow_gaps():
    # the widest arc has normalized length 0.01, so no point lies 0.1 away from E
    carleson_set = cantor_like_set(6, 0.01)
    angles, used, largest = far_from_set_angles(carleson_set, 10, np.random.default_rng(0))
    assert largest == pytest.approx(2 * math.sin(math.pi * 0.01 / 2))
    assert used == pytest.approx(largest / 2)
    assert len(angles) == 10
    assert np.all(distance_to_set_many(np.array(angles), carleson_set) >= used)


def test_far_from_set_angles_without_arcs():
    assert far_from_set_angles(cantor_like_set(0), 10, np.random.default_rng(0)) == ([], 0.0, 0.0)


def test_pipeline_on_narrow_gaps(tmp_path):
    config = validate_pipeline_config(PipelineConfig(ratio=0.01, random_checks=10, orbit_steps=100))
    summary = run_pipeline(config, tmp_path)
    assert summary['exit_code'] == 0
    report = load_report('evaluation_bound', tmp_path)
    assert report['max_distance'] == pytest.approx(2 * math.sin(math.pi * 0.01 / 2))
    assert report['min_distance'] == pytest.approx(report['max_distance'] / 2)
    assert report['drawn'] == 10


def test_gap_transitions_skip_capped_generations():
    carleson_set = cantor_like_set(3, 1 / 3)
    outer = outer_function(boundary_weight(carleson_set, 2.0, 2 ** 12))
    tables = []
    for generation, capped in ((1, False), (2, False), (3, True)):
        nodes = sample_nodes(carleson_set, generation)
        tables.append((nodes, continuity_table(nodes, gram_matrix(nodes, outer), generation), capped))
    transitions = Pipeline._gap_transitions(tables)
    assert [(t['from'], t['to'], t['capped']) for t in transitions] == [(1, 2, False), (2, 3, True)]
    assert all(t['nonincreasing'] and t['grown'] == [] for t in transitions)
