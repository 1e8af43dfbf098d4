import math

import numpy as np
import pytest

from carlesonlite import (KernelCoefficients, NodeFamily, RangeError, ResolventSingularError,
                          boundary_weight, build_truncation, build_unitary, cantor_like_set,
                          covering_distance, eigen_relation_check, gram_matrix, h1tilde_correction,
                          isometry_check, outer_function, point_set, resolve, resolvent_cross_check,
                          sample_nodes, spectrum_report, spectrum_sweep, subspaces, unitary_checks,
                          unitary_family_spectra, unitary_spectrum, value_at_infinity, value_at_zero,
                          verify_subspace_identity)


@pytest.fixture(scope='module')
def two_node_operator():
    angles = [math.pi / 2, 1.0]
    outer = outer_function(boundary_weight(point_set(angles), 2.0, 2 ** 10))
    nodes = NodeFamily(np.array(angles))
    return build_truncation(nodes, gram_matrix(nodes, outer))


def test_diagonal_is_reciprocal_of_nodes():
    nodes = NodeFamily(np.array([math.pi / 2]))
    outer = outer_function(boundary_weight(point_set([math.pi / 2]), 2.0, 2 ** 8))
    operator = build_truncation(nodes, gram_matrix(nodes, outer))
    assert operator.diagonal[0] == pytest.approx(-1j)


def test_build_truncation_rejects_foreign_nodes(cantor_setup):
    with pytest.raises(ValueError):
        build_truncation(NodeFamily(np.array([0.0])), cantor_setup.gram)


def test_eigen_relation(cantor_setup, rng):
    report = eigen_relation_check(cantor_setup.operator, rng=rng)
    assert report['passed']
    assert report['sample_count'] == 10 ** 4


def test_two_node_subspaces(two_node_operator):
    pair = subspaces(two_node_operator)
    lam = two_node_operator.nodes.nodes
    assert pair.dimension == 1
    column = pair.h1_basis[:, 0]
    # H_1 is spanned by (lambda_1, -lambda_2)
    assert abs(column[0] * (-lam[1]) - column[1] * lam[0]) < 1e-12
    image = two_node_operator.apply(np.array([lam[0], -lam[1]]))
    np.testing.assert_allclose(image, [1, -1], atol=1e-14)


def test_subspace_functionals(cantor_setup):
    nodes, pair = cantor_setup.nodes, cantor_setup.pair
    assert pair.dimension == len(nodes) - 1
    for column in pair.h1_basis.T:
        assert abs(value_at_zero(KernelCoefficients(nodes, column))) < 1e-12
    for column in pair.h1tilde_basis.T:
        assert abs(value_at_infinity(KernelCoefficients(nodes, column))) < 1e-12


def test_subspaces_need_two_nodes():
    nodes = NodeFamily(np.array([0.0]))
    outer = outer_function(boundary_weight(point_set([0.0]), 2.0, 2 ** 8))
    with pytest.raises(ValueError):
        subspaces(build_truncation(nodes, gram_matrix(nodes, outer)))


def test_subspace_identity(cantor_setup):
    report = verify_subspace_identity(cantor_setup.operator, cantor_setup.pair)
    assert report['passed']
    assert report['image_rank'] == report['h1tilde_rank'] == report['joint_rank'] == len(cantor_setup.nodes) - 1
    assert report['offending_nodes'] == []


def test_h1tilde_correction(cantor_setup, rng):
    nodes, gram = cantor_setup.nodes, cantor_setup.gram
    f = KernelCoefficients(nodes, rng.standard_normal(len(nodes)) + 1j * rng.standard_normal(len(nodes)))
    corrected, distance = h1tilde_correction(f, gram)
    assert abs(value_at_infinity(corrected)) < 1e-12
    difference = f - corrected
    assert math.sqrt(gram.quadratic(difference.coeffs)) == pytest.approx(distance, rel=1e-10)


def test_isometry_on_h1_only(cantor_setup, rng):
    report = isometry_check(cantor_setup.operator, cantor_setup.pair, 50, rng)
    assert report['passed']
    assert report['max_h1_deviation'] <= 1e-8
    # off H_1 the truncation is not isometric
    assert report['generic_min_deviation'] > 1e-6


def test_unitary_checks(cantor_setup, rng):
    decomposition = build_unitary(cantor_setup.operator, cantor_setup.pair, 1)
    report = unitary_checks(cantor_setup.operator, cantor_setup.pair, decomposition, 50, rng)
    assert report['passed']
    assert report['defect_rank'] == 1


def test_rank_one_defect_matches_matrices(cantor_setup):
    operator, gram = cantor_setup.operator, cantor_setup.gram
    decomposition = build_unitary(operator, cantor_setup.pair, np.exp(0.7j))
    difference = operator.matrix - decomposition.unitary
    np.testing.assert_allclose(decomposition.defect(gram), difference,
                               atol=1e-6 * np.abs(difference).max())


def test_generator_value_at_zero(cantor_setup):
    decomposition = build_unitary(cantor_setup.operator, cantor_setup.pair)
    assert value_at_zero(decomposition.generator) == pytest.approx(1)


def test_alpha_must_be_unimodular(cantor_setup):
    with pytest.raises(RangeError):
        build_unitary(cantor_setup.operator, cantor_setup.pair, 1.1)


def test_unitary_spectral_measure(cantor_setup):
    decomposition = build_unitary(cantor_setup.operator, cantor_setup.pair, -1)
    spectrum = unitary_spectrum(decomposition, cantor_setup.gram)
    assert len(spectrum['eigenvalues']) == len(cantor_setup.nodes)
    assert spectrum['max_modulus_deviation'] < 1e-8
    assert spectrum['total_mass'] == pytest.approx(spectrum['norm_square'], rel=1e-8)


def test_unitary_family_drops_duplicate_alpha(cantor_setup):
    with pytest.warns(UserWarning):
        family = unitary_family_spectra(cantor_setup.operator, cantor_setup.pair, [1, -1, 1])
    assert len(family['alphas']) == 2
    assert all(len(s) == len(cantor_setup.nodes) for s in family['spectra'])


def test_resolve_single_kernel(cantor_setup):
    operator, nodes = cantor_setup.operator, cantor_setup.nodes
    g = KernelCoefficients.kernel(nodes, 0)
    f = resolve(operator, 2, g)
    assert f.coeffs[0] == pytest.approx(1 / (1 / nodes.nodes[0] - 2))
    assert np.all(f.coeffs[1:] == 0)


def test_resolve_on_spectrum(cantor_setup):
    operator = cantor_setup.operator
    g = KernelCoefficients.kernel(cantor_setup.nodes, 0)
    with pytest.raises(ResolventSingularError):
        resolve(operator, operator.diagonal[3], g)


@pytest.mark.parametrize('lam', [0, 2, 3j, 0.5 - 0.2j])
def test_resolvent_cross_check(cantor_setup, rng, lam):
    nodes = cantor_setup.nodes
    g = KernelCoefficients(nodes, rng.standard_normal(len(nodes)) + 1j * rng.standard_normal(len(nodes)))
    report = resolvent_cross_check(cantor_setup.operator, lam, g, rng=rng)
    assert report['passed']


def test_spectrum_report(cantor_setup):
    report = spectrum_report(cantor_setup.operator, cantor_setup.carleson_set, 3)
    assert report['max_conjugate_error'] < 1e-14
    assert report['hausdorff_to_E'] <= 1e-12
    expected = 2 * math.sin(math.pi / 27)
    assert report['hausdorff_from_E'] == pytest.approx(expected, rel=1e-9)
    assert report['survivor_half_chord'] == pytest.approx(expected, rel=1e-9)


def test_covering_distance_generation_one():
    carleson_set = cantor_like_set(1, 1 / 3)
    angles = np.array([2 * math.pi / 3, 4 * math.pi / 3])
    assert covering_distance(angles, carleson_set) == pytest.approx(math.sqrt(3), rel=1e-12)
    assert covering_distance(np.zeros(0), carleson_set) == math.inf


def test_spectrum_sweep_is_monotone():
    sweep = spectrum_sweep(cantor_like_set(5, 1 / 3), [1, 2, 3, 4, 5])
    assert sweep['monotone']
    assert len(sweep['covering_distances']) == 5


def test_unitary_family_interlaces(cantor_setup):
    family = unitary_family_spectra(cantor_setup.operator, cantor_setup.pair, [1, -1])
    assert family['interlaced']


@pytest.mark.parametrize('generation, n', [(4, 30), (5, 62)])
def test_subspace_identity_up_to_62_nodes(generation, n):
    carleson_set = cantor_like_set(5, 1 / 3)
    outer = outer_function(boundary_weight(carleson_set, 2.0, 2 ** 14))
    nodes = sample_nodes(carleson_set, generation, 64)
    operator = build_truncation(nodes, gram_matrix(nodes, outer))
    assert len(operator) == n
    report = verify_subspace_identity(operator, subspaces(operator))
    assert report['passed']
    assert report['joint_rank'] == n - 1
