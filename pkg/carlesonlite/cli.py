'''Command line front end: gen-set, pipeline, clark, continuity, spectrum, init-config.

Exit codes: 0 success, 2 usage or range error, 3 stage failure, 4 ill-conditioned Gram matrix.
'''
import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import IllConditionedError, StageFailure
from .carleson_sets import cantor_like_set, carleson_margin, entropy, sample_nodes
from .outer_builder import boundary_weight, outer_function
from .hstar_space import gram_matrix
from .truncated_operator import build_truncation, spectrum_report, spectrum_sweep
from .grivaux_checker import continuity_table, epsilon_certificate
from .clark import InnerFunction, clark_family_spectra, clark_measure, total_mass_law, verify_herglotz
from .pipeline_config.pipeline_config import (CONFIG_FILENAME, create_pipeline_config,
                                              load_pipeline_config, validate_pipeline_config)
from .pipeline import (EXIT_ILL_CONDITIONED, EXIT_OK, EXIT_STAGE_FAILURE, EXIT_USAGE,
                       index_file, make_savepath, run_pipeline, write_report, write_table_csv)

__all__ = ['build_parser', 'register_commands', 'handle', 'main']

LOGGER = logging.getLogger(__name__)

# interior sample radius of the Herglotz check
HERGLOTZ_RADIUS = 0.5


def _json_print(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _complex_list(value):
    '''"0,0.5+0.2j" -> [0j, (0.5+0.2j)]'''
    try:
        return [complex(item.strip()) for item in value.split(',') if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f'Expect: comma-separated complex numbers, Get: {value}') from e


def _common_flags():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--out', type=Path, default=None, help='Output directory')
    parent.add_argument('--seed', type=int, default=None, help='Seed of the randomized checks')
    parent.add_argument('--verbose', action='store_true', help='Log at DEBUG level')
    return parent


def _set_flags(parser):
    parser.add_argument('--ratio', type=float, default=1 / 3, help='Removal ratio of the Cantor set')
    parser.add_argument('--depth', type=int, default=6, help='Number of removal generations')


def _operator_flags(parser):
    _set_flags(parser)
    parser.add_argument('--exponent', type=float, default=2.0, help='p in w = d^p')
    parser.add_argument('--grid-size', type=int, default=2 ** 16, help='Boundary grid size N')
    parser.add_argument('--generation', type=int, default=4, help='Node generation')
    parser.add_argument('--count-cap', type=int, default=64, help='Maximal number of nodes')


def register_commands(sub):
    '''Register the carlesonlite subcommands on a subparsers group.'''
    common = _common_flags()

    gen_set = sub.add_parser('gen-set', parents=[common], help='Generate a Cantor-type Carleson set')
    _set_flags(gen_set)

    pipeline = sub.add_parser('pipeline', parents=[common], help='Run the full verification pipeline')
    pipeline.add_argument('--config', type=Path, default=None,
                          help=f'Configuration file (default: {CONFIG_FILENAME} in the cwd)')

    clark = sub.add_parser('clark', parents=[common], help='Clark measures of a finite Blaschke product')
    clark.add_argument('--zeros', type=_complex_list, required=True, help='Blaschke zeros, e.g. 0,0.5j')
    clark.add_argument('--alpha', type=_complex_list, default=[1 + 0j], help='Unimodular alphas, e.g. 1,-1')
    clark.add_argument('--samples', type=int, default=100, help='Interior samples of the Herglotz check')

    continuity = sub.add_parser('continuity', parents=[common], help='Nearest-partner kernel gap table')
    _operator_flags(continuity)
    continuity.add_argument('--epsilon', type=float, action='append', default=None,
                            help='Threshold of the epsilon certificate (repeatable)')

    spectrum = sub.add_parser('spectrum', parents=[common], help='Spectrum of the truncation')
    _operator_flags(spectrum)

    init_config = sub.add_parser('init-config', parents=[common], help='Write a default configuration file')
    init_config.add_argument('--path', type=Path, default=None,
                             help=f'Target file (default: {CONFIG_FILENAME} in the cwd)')


def build_parser():
    parser = argparse.ArgumentParser(prog='carlesonlite', description=__doc__.splitlines()[0])
    parser.add_argument('--version', action='version', version=f'carlesonlite {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    register_commands(sub)
    return parser


def _savepath(args, default):
    return make_savepath(args.out if args.out else Path.cwd() / default)


def _operator(args):
    carleson_set = cantor_like_set(args.depth, args.ratio)
    outer = outer_function(boundary_weight(carleson_set, args.exponent, args.grid_size))
    nodes = sample_nodes(carleson_set, args.generation, args.count_cap)
    gram = gram_matrix(nodes, outer)
    return carleson_set, nodes, gram


def _cmd_gen_set(args):
    carleson_set = cantor_like_set(args.depth, args.ratio)
    savepath = _savepath(args, 'gen_set_output')
    filename = savepath / 'carleson_set.json'
    carleson_set.save(filename)
    index_file('carleson_set', filename, savepath)

    summary = {'file': str(filename), 'depth': args.depth, 'n_arcs': carleson_set.n_arcs,
               'entropy': entropy(carleson_set), 'carleson_margin': None}
    if args.depth >= 3:
        sequence = [cantor_like_set(d, args.ratio) for d in range(1, args.depth + 1)]
        margin = carleson_margin(sequence)
        summary['carleson_margin'] = {k: margin[k] for k in ('fitted_ratio', 'carleson_consistent')}
    _json_print(summary)
    return EXIT_OK


def _cmd_pipeline(args):
    config = load_pipeline_config(args.config)
    overrides = {}
    if args.out:
        overrides['out_dir'] = str(args.out)
    if args.seed is not None:
        overrides['seed'] = args.seed
    if overrides:
        config = validate_pipeline_config(dataclasses.replace(config, **overrides))
    summary = run_pipeline(config)
    _json_print({'all_passed': summary['all_passed'], 'out_dir': config.out_dir})
    return summary['exit_code']


def _cmd_clark(args):
    theta = InnerFunction(np.array(args.zeros, dtype=complex))
    savepath = _savepath(args, 'clark_output')
    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    samples = HERGLOTZ_RADIUS * np.sqrt(rng.random(args.samples)) * np.exp(2j * np.pi * rng.random(args.samples))

    measures, atoms = [], []
    for k, alpha in enumerate(args.alpha):
        measure = clark_measure(theta, alpha)
        atoms.append(measure.to_dict()['atoms'])
        filename = savepath / f'clark_measure_{k}.json'
        measure.save(filename)
        index_file(f'clark_measure_{k}', filename, savepath)
        measures.append({'alpha': measure.alpha, 'file': filename.name,
                         'herglotz': verify_herglotz(theta, measure, samples),
                         'total_mass_law': total_mass_law(theta, alpha, measure)})

    report = {'inner_function': theta.to_dict(), 'measures': measures}
    if len(args.alpha) > 1:
        report['family'] = clark_family_spectra(theta, args.alpha)
    report['passed'] = all(m['herglotz']['passed'] and m['total_mass_law']['passed'] for m in measures)
    write_report('clark', report, savepath=savepath)
    _json_print({'atoms': atoms, 'passed': report['passed']})
    return EXIT_OK if report['passed'] else EXIT_STAGE_FAILURE


def _cmd_continuity(args):
    _, nodes, gram = _operator(args)
    table = continuity_table(nodes, gram, args.generation)
    savepath = _savepath(args, 'continuity_output')
    write_table_csv('continuity', table, savepath)
    table.save_json(savepath / 'continuity_table.json')
    index_file('continuity_table', savepath / 'continuity_table.json', savepath)

    certificates = [epsilon_certificate(table, epsilon) for epsilon in (args.epsilon or [0.1])]
    write_report('epsilon_certificates', {'certificates': certificates, 'passed': None}, savepath=savepath)
    _json_print({'n': len(nodes), 'modulus_fit': table.modulus_fit, 'prefactor': table.prefactor,
                 'all_pass': {str(c['epsilon']): c['all_pass'] for c in certificates}})
    return EXIT_OK


def _cmd_spectrum(args):
    carleson_set, nodes, gram = _operator(args)
    operator = build_truncation(nodes, gram)
    report = spectrum_report(operator, carleson_set, args.generation)
    report['sweep'] = spectrum_sweep(carleson_set, list(range(1, args.depth + 1)))
    report['passed'] = None
    savepath = _savepath(args, 'spectrum_output')
    write_report('spectrum', report, savepath=savepath)
    _json_print({k: report[k] for k in ('hausdorff_to_E', 'hausdorff_from_E', 'max_conjugate_error')})
    return EXIT_OK


def _cmd_init_config(args):
    parameters = {}
    if args.out:
        parameters['out_dir'] = str(args.out)
    if args.seed is not None:
        parameters['seed'] = args.seed
    path = args.path if args.path else Path.cwd() / CONFIG_FILENAME
    create_pipeline_config(path, **parameters)
    _json_print({'file': str(path)})
    return EXIT_OK


COMMANDS = {
    'gen-set': _cmd_gen_set,
    'pipeline': _cmd_pipeline,
    'clark': _cmd_clark,
    'continuity': _cmd_continuity,
    'spectrum': _cmd_spectrum,
    'init-config': _cmd_init_config,
}


def handle(args):
    '''Run one subcommand and map exceptions to exit codes.

    Returns:
        int: the exit code.
    '''
    try:
        return COMMANDS[args.command](args)
    except StageFailure as e:
        LOGGER.error('%s', e)
        return EXIT_STAGE_FAILURE
    except IllConditionedError as e:
        LOGGER.error('%s', e)
        return EXIT_ILL_CONDITIONED
    except (ValueError, FileNotFoundError) as e:
        LOGGER.error('%s: %s', type(e).__name__, e)
        return EXIT_USAGE
    except RuntimeError as e:
        LOGGER.error('%s: %s', type(e).__name__, e)
        return EXIT_STAGE_FAILURE


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)
    return handle(args)


if __name__ == '__main__':
    sys.exit(main())
