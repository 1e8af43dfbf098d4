import math

import numpy as np
import pytest

from carlesonlite import (Arc, CarlesonSet, InsufficientDataError, NodeFamily,
                          RangeError, TWO_PI, arc_sequence_set, cantor_like_set, carleson_margin,
                          distance_to_set, distance_to_set_many, entropy, interlaced,
                          load_carleson_set, log_squared_lengths, point_set, sample_nodes)


def test_arc_rejects_bad_length():
    with pytest.raises(ValueError):
        Arc(0.0, 0.0)
    with pytest.raises(ValueError):
        Arc(0.0, 1.5)


def test_cantor_depth_zero_has_no_arcs():
    carleson_set = cantor_like_set(0)
    assert carleson_set.n_arcs == 0
    with pytest.warns(UserWarning):
        assert entropy(carleson_set) == 0.0


def test_cantor_depth_one():
    carleson_set = cantor_like_set(1, 1 / 3)
    assert carleson_set.n_arcs == 1
    assert carleson_set.lengths[0] == pytest.approx(1 / 3, rel=1e-12)
    assert carleson_set.starts[0] == pytest.approx(TWO_PI / 3, rel=1e-12)


def test_cantor_arc_counts_and_lengths():
    depth = 5
    carleson_set = cantor_like_set(depth, 1 / 3)
    for j in range(depth):
        mask = carleson_set.generations == j + 1
        assert mask.sum() == 2 ** j
        np.testing.assert_allclose(carleson_set.lengths[mask], 3.0 ** -(j + 1), rtol=1e-12)


def test_cantor_arcs_disjoint():
    carleson_set = cantor_like_set(10, 0.4)
    order = np.argsort(carleson_set.starts)
    starts = carleson_set.starts[order]
    ends = starts + TWO_PI * carleson_set.lengths[order]
    assert np.all(ends[:-1] <= starts[1:] + 1e-12)


def test_cantor_range_errors():
    with pytest.raises(RangeError):
        cantor_like_set(31)
    with pytest.raises(RangeError):
        cantor_like_set(3, 1.5)
    with pytest.raises(RangeError):
        cantor_like_set(-1)


def test_entropy_point_sets():
    assert entropy(point_set([0.0])) == pytest.approx(0.0, abs=1e-15)
    assert entropy(point_set([0.0, math.pi])) == pytest.approx(math.log(2), rel=1e-12)


def test_entropy_partial_sums_of_middle_thirds():
    previous = 0.0
    for depth in range(1, 13):
        value = entropy(cantor_like_set(depth, 1 / 3))
        closed = sum(2 ** j * 3.0 ** -(j + 1) * (j + 1) * math.log(3) for j in range(depth))
        assert value == pytest.approx(closed, rel=1e-10)
        assert previous < value < 3 * math.log(3)
        previous = value


def test_entropy_is_order_independent():
    carleson_set = cantor_like_set(6, 1 / 3)
    reversed_set = CarlesonSet(carleson_set.starts[::-1], carleson_set.lengths[::-1],
                               carleson_set.generations[::-1], carleson_set.generation_depth)
    assert entropy(reversed_set) == entropy(carleson_set)


def test_carleson_margin_middle_thirds():
    sets = [cantor_like_set(d, 1 / 3) for d in range(1, 13)]
    report = carleson_margin(sets)
    assert report['carleson_consistent']
    assert report['fitted_ratio'] == pytest.approx(2 / 3, abs=1e-6)


def test_carleson_margin_constant_entropy():
    sets = [point_set([0.0]) for _ in range(4)]
    assert carleson_margin(sets)['carleson_consistent']


def test_carleson_margin_divergent_generator():
    lengths = log_squared_lengths(40)
    assert lengths.sum() <= 1
    sets = [arc_sequence_set(lengths[:k]) for k in range(2, 41)]
    report = carleson_margin(sets)
    assert not report['carleson_consistent']
    assert report['fitted_ratio'] > 0.95


def test_carleson_margin_needs_three_depths():
    with pytest.raises(InsufficientDataError):
        carleson_margin([cantor_like_set(1), cantor_like_set(2)])


def test_distance_to_set():
    carleson_set = point_set([0.0])
    assert distance_to_set(-1 + 0j, carleson_set) == pytest.approx(2.0)
    assert distance_to_set(1j, carleson_set) == pytest.approx(math.sqrt(2))
    assert distance_to_set(1 + 0j, carleson_set) == 0.0
    with pytest.raises(ValueError):
        distance_to_set(0.5 + 0j, carleson_set)


def test_distance_is_zero_exactly_outside_arcs():
    carleson_set = cantor_like_set(4, 1 / 3)
    angles = np.linspace(0, TWO_PI, 1001, endpoint=False)
    distance = distance_to_set_many(angles, carleson_set)
    inside = carleson_set.containing_arc(angles) >= 0
    assert np.all(distance[~inside] == 0)
    assert np.all(distance[inside] > 0)


def test_sample_nodes_generation_one():
    nodes = sample_nodes(cantor_like_set(3, 1 / 3), 1)
    np.testing.assert_allclose(nodes.angles, [TWO_PI / 3, 2 * TWO_PI / 3], rtol=1e-12)


@pytest.mark.parametrize('generation', [1, 2, 3, 4, 5])
def test_sample_nodes_count_and_membership(generation):
    carleson_set = cantor_like_set(6, 1 / 3)
    nodes = sample_nodes(carleson_set, generation)
    assert len(nodes) == 2 ** (generation + 1) - 2
    assert np.all(distance_to_set_many(nodes.angles, carleson_set) == 0)
    np.testing.assert_allclose(np.abs(nodes.nodes), 1.0, atol=1e-15)


def test_sample_nodes_spacing():
    generation = 3
    nodes = sample_nodes(cantor_like_set(generation, 1 / 3), generation)
    assert nodes.spacing == pytest.approx(2 * math.sin(math.pi / 3 ** generation), rel=1e-9)


def test_sample_nodes_cap_keeps_partners():
    carleson_set = cantor_like_set(6, 1 / 3)
    nodes = sample_nodes(carleson_set, 6, count_cap=20)
    assert len(nodes) <= 20
    nearest = np.abs(nodes.nodes - nodes.nodes[nodes.nearest_partners()])
    assert nearest.max() <= 2 * math.sin(math.pi / 3 ** 6) * (1 + 1e-9)


def test_sample_nodes_errors():
    carleson_set = cantor_like_set(3, 1 / 3)
    with pytest.raises(RangeError):
        sample_nodes(carleson_set, 2, count_cap=1)
    with pytest.raises(RangeError):
        sample_nodes(carleson_set, 4)


def test_sample_nodes_on_point_set():
    nodes = sample_nodes(point_set([0.0, math.pi]), 1)
    np.testing.assert_allclose(np.sort(nodes.angles), [0.0, math.pi], atol=1e-15)


def test_node_family_duplicates():
    nodes = NodeFamily(np.array([0.5, 1.0, 0.5]))
    assert nodes.duplicates() == [(0, 2)]
    assert nodes.closest_pair() == (0, 2)


def test_interlaced():
    assert interlaced([0.0, math.pi], [math.pi / 2, 3 * math.pi / 2])
    assert not interlaced([0.0, 0.1], [math.pi / 2, 3 * math.pi / 2])
    assert not interlaced([0.0], [0.0])
    assert not interlaced([0.0, 1.0], [2.0])


def test_set_json_round_trip(tmp_path):
    carleson_set = cantor_like_set(4, 0.3)
    carleson_set.save(tmp_path / 'set.json')
    loaded = load_carleson_set(tmp_path / 'set.json')
    assert loaded.generation_depth == 4
    assert loaded.construction_tag == carleson_set.construction_tag
    np.testing.assert_array_equal(np.sort(loaded.starts), np.sort(carleson_set.starts))
