import math

import numpy as np
import pytest

from carlesonlite import (CertificateRefusedError, DomainError, NodeFamily, RangeError, ResolutionError,
                          TWO_PI, WeightGrid, boundary_weight, boundedness_certificate, cantor_like_set,
                          conjugate_function, evaluate_inside, grid_angles, load_outer_function,
                          outer_function, point_set, sample_nodes)


def test_grid_size_must_be_power_of_two():
    carleson_set = point_set([0.0])
    with pytest.raises(RangeError):
        boundary_weight(carleson_set, 2.0, 1000)
    with pytest.raises(RangeError):
        boundary_weight(carleson_set, 2.0, 2 ** 7)
    with pytest.raises(RangeError):
        boundary_weight(carleson_set, 0.5, 2 ** 10)


def test_resolution_error_names_required_grid():
    with pytest.raises(ResolutionError) as info:
        boundary_weight(cantor_like_set(6, 1 / 3), 2.0, 2 ** 8)
    assert info.value.required_grid_size == 2 ** 12


def test_weight_matches_distance(single_point_outer):
    weight = single_point_outer.weight
    n = weight.grid_size
    assert weight.modulus[n // 2] == pytest.approx(4.0, rel=1e-14)
    assert weight.modulus[0] == weight.floor == pytest.approx((TWO_PI / n) ** 2)
    assert weight.floor_mask[0]
    assert np.all(weight.modulus > 0)


def test_value_at_zero_is_geometric_mean(single_point_outer):
    # the clamp raises log w on a few points near 1; the effect is O(log N / N)
    assert abs(single_point_outer.value_at_zero - 1) < 1e-4
    assert single_point_outer.value_at_zero == pytest.approx(np.exp(single_point_outer.weight.mean_log))


def test_boundary_values_of_squared_factor(single_point_outer):
    # phi = (1 - z)^2, so arg phi(e^{it}) = t - pi on (0, 2*pi)
    angles = single_point_outer.weight.angles
    n = single_point_outer.grid_size
    for k in (n // 4, n // 2, 3 * n // 4):
        assert single_point_outer.phase[k] == pytest.approx(angles[k] - math.pi, abs=1e-3)
    np.testing.assert_allclose(np.abs(single_point_outer.boundary_values()),
                               single_point_outer.weight.modulus)


def test_evaluate_inside(single_point_outer):
    for z in (0.5, 0.3j, -0.6 + 0.2j):
        assert evaluate_inside(single_point_outer, z) == pytest.approx((1 - z) ** 2, rel=1e-3)
    assert evaluate_inside(single_point_outer, 0) == pytest.approx(single_point_outer.value_at_zero,
                                                                   rel=1e-12)
    with pytest.raises(DomainError):
        evaluate_inside(single_point_outer, 0.9995)


def test_constant_weight_gives_constant_function():
    outer = outer_function(WeightGrid(np.ones(256), 2.0, 0.0))
    np.testing.assert_allclose(outer.phase, 0, atol=1e-14)
    values = evaluate_inside(outer, np.array([0, 0.5, -0.7j]))
    np.testing.assert_allclose(values, 1, atol=1e-12)


def test_conjugate_function_of_trigonometric_polynomial():
    angles = grid_angles(256)
    result = conjugate_function(np.cos(3 * angles) + 2.0)
    np.testing.assert_allclose(result, np.sin(3 * angles), atol=1e-12)


def test_certificate_closed_form():
    nodes = NodeFamily(np.array([0.0]))
    for exponent, expected in ((2.0, 2.0), (3.0, 4.0)):
        outer = outer_function(boundary_weight(point_set([0.0]), exponent, 2 ** 12))
        assert boundedness_certificate(outer, nodes) == pytest.approx(expected, rel=1e-12)


def test_certificate_refused_below_two():
    outer = outer_function(boundary_weight(point_set([0.0]), 1.5, 2 ** 10))
    with pytest.raises(CertificateRefusedError):
        boundedness_certificate(outer, NodeFamily(np.array([0.0])))


def test_certificate_bound_on_cantor(cantor_setup):
    value = boundedness_certificate(cantor_setup.outer, cantor_setup.nodes)
    assert 0 < value <= 2 * (1 + 1e-9)


def test_outer_json_round_trip(tmp_path):
    outer = outer_function(boundary_weight(point_set([0.0, 2.0]), 2.0, 2 ** 8))
    outer.save(tmp_path / 'outer.json')
    loaded = load_outer_function(tmp_path / 'outer.json')
    np.testing.assert_array_equal(loaded.weight.modulus, outer.weight.modulus)
    assert loaded.value_at_zero == outer.value_at_zero


def test_conjugate_function_is_an_involution_up_to_sign(rng):
    angles = grid_angles(512)
    frequencies = np.arange(1, 21)
    damping = np.exp(-frequencies / 4)
    a, b = rng.standard_normal(20) * damping, rng.standard_normal(20) * damping
    samples = (a[:, None] * np.cos(np.outer(frequencies, angles))
               + b[:, None] * np.sin(np.outer(frequencies, angles))).sum(axis=0)
    np.testing.assert_allclose(conjugate_function(conjugate_function(samples)), -samples, atol=1e-10)


def test_certificate_nonincreasing_in_exponent():
    # every point of the circle is within chordal distance 1 of the middle-thirds set
    carleson_set = cantor_like_set(3, 1 / 3)
    nodes = sample_nodes(carleson_set, 3)
    values = [boundedness_certificate(outer_function(boundary_weight(carleson_set, p, 2 ** 12)), nodes)
              for p in (2.0, 2.5, 3.0, 4.0)]
    assert all(later <= earlier * (1 + 1e-12) for earlier, later in zip(values, values[1:]))


def test_scaled_certificate_nonincreasing_in_exponent():
    # with distances up to 2 the certificate itself grows (2, 4 for E = {1});
    # divided by 2^(p-1) it does not
    carleson_set = point_set([0.0, math.pi])
    nodes = NodeFamily(np.array([0.0, math.pi]))
    exponents = (2.0, 2.5, 3.0, 4.0)
    scaled = [boundedness_certificate(outer_function(boundary_weight(carleson_set, p, 2 ** 12)), nodes)
              / 2 ** (p - 1) for p in exponents]
    assert all(later <= earlier * (1 + 1e-12) for earlier, later in zip(scaled, scaled[1:]))
