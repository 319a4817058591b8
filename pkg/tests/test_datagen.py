import numpy as np
import pytest
from scipy.spatial.distance import cdist

from datagen import (BallSpec, SimplexSpec, SpectrumSpec, gen_balls, gen_simplex,
                     gen_spectrum, graph_hops, power_favoring_spec, pq_favoring_spec)
from dissim_core import find_triangle_violation, gram_decomposition, is_metric, validate_matrix
from power_embed import power_radius


def test_simplex_pair():
    D = gen_simplex(SimplexSpec(2, seed=1))
    assert D.n == 2
    assert D.entries[0, 1] == D.entries[1, 0]
    assert np.all(np.diag(D.entries) == 0.0)


def test_simplex_is_reproducible():
    a = gen_simplex(SimplexSpec(20, seed=4))
    b = gen_simplex(SimplexSpec(20, seed=4))
    np.testing.assert_array_equal(a.entries, b.entries)


@pytest.mark.parametrize('n', [100, 200])
def test_simplex_mostly_negative_spectrum(n):
    dec = gram_decomposition(gen_simplex(SimplexSpec(n, seed=0)))
    assert dec.q >= 0.8 * n


def test_simplex_without_dominance_is_euclidean():
    D = gen_simplex(SimplexSpec(30, dominance=1e-12, seed=0))
    assert gram_decomposition(D).q == 0


def test_squared_gap_gives_one_negative_direction():
    dec = gram_decomposition(gen_simplex(SimplexSpec(50, seed=2, gap_power=2.0)))
    assert dec.q == 1


@pytest.mark.parametrize('kwargs', [
    {'n': 1}, {'n': 5, 'dominance': -1.0}, {'n': 5, 'gap_power': 3.0},
])
def test_invalid_simplex_spec(kwargs):
    with pytest.raises(ValueError):
        SimplexSpec(**kwargs)


def test_balls_without_radius_are_center_distances():
    spec = BallSpec(12, dim=3, radius_range=(0.0, 0.0), seed=5)
    D = gen_balls(spec)
    centers = np.random.default_rng(5).standard_normal((12, 3))
    np.testing.assert_allclose(D.entries, cdist(centers, centers))
    assert is_metric(D)


def test_huge_balls_overlap():
    D = gen_balls(BallSpec(3, dim=2, radius_range=(10.0, 10.0), seed=1))
    assert not D.entries.any()


def test_balls_violate_triangle_inequality():
    D = gen_balls(BallSpec(50, seed=0))
    assert find_triangle_violation(D) is not None
    assert np.all(D.entries >= 0)


def test_balls_have_many_negative_eigenvalues():
    dec = gram_decomposition(gen_balls(BallSpec(300, seed=0)))
    assert dec.q >= 150


def test_invalid_ball_spec():
    with pytest.raises(ValueError):
        BallSpec(5, radius_range=(2.0, 1.0))


def test_spectrum_is_reproduced():
    spec = SpectrumSpec(10, positive=(3.0, 2.0, 1.0), negative=(1.5, 0.5), seed=3)
    dec = gram_decomposition(gen_spectrum(spec))
    assert (dec.p, dec.q) == (3, 2)
    nonzero = dec.eigenvalues[np.abs(dec.eigenvalues) > dec.tau]
    np.testing.assert_allclose(nonzero, [3.0, 2.0, 1.0, -0.5, -1.5], atol=1e-9)


def test_spectrum_rank_limit():
    with pytest.raises(ValueError):
        SpectrumSpec(3, positive=(1.0, 1.0), negative=(1.0,))


def test_favoring_presets():
    pq_dec = gram_decomposition(gen_spectrum(pq_favoring_spec(40, seed=1)))
    power_dec = gram_decomposition(gen_spectrum(power_favoring_spec(40, seed=1)))
    assert pq_dec.q == 1
    assert power_dec.q >= 15
    assert power_radius(power_dec) < power_radius(pq_dec)


def test_path_graph_hops(path_edges):
    D = graph_hops(path_edges)
    np.testing.assert_array_equal(D.entries, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def test_triangle_graph_hops():
    D = graph_hops([(0, 1), (1, 2), (2, 0), (0, 1), (2, 2)])
    expected = np.ones((3, 3)) - np.eye(3)
    np.testing.assert_array_equal(D.entries, expected)


def test_star_graph_hops():
    D = graph_hops([(0, 1), (0, 2), (0, 3)]).entries
    assert np.all(D[0, 1:] == 1)
    assert D[1, 2] == D[1, 3] == D[2, 3] == 2
    assert is_metric(D)


def test_disconnected_graph_keeps_largest_component(capsys):
    D = graph_hops([(0, 1), (1, 2), (3, 4)])
    assert D.n == 3
    assert '⚠️' in capsys.readouterr().out


def test_empty_edge_list():
    with pytest.raises(ValueError):
        graph_hops([])


def test_generator_outputs_validate():
    for D in (gen_simplex(SimplexSpec(8, seed=0)), gen_balls(BallSpec(8, seed=0)),
              gen_spectrum(pq_favoring_spec(8))):
        validate_matrix(D.entries)
