import math

import joblib
import numpy as np
import numpy.testing as npt
import pytest

from ball_interpolation import util_mod
from ball_interpolation import geometry
from ball_interpolation import projector_norm as pn
from ball_interpolation import regular_simplex
from ball_interpolation import absorption
from ball_interpolation import optimizer
import evaluation as my_eval


MINIMAL_NORMS = {1: 1.0, 2: 5 / 3, 3: 2.0, 4: 11 / 5}
SMALL_BUDGET = {'restarts': 3, 'max_iterations': 300}


def test_default_config():
    config = optimizer.make_search_config(3)
    assert config.n == 3
    assert (config.restarts, config.max_iterations) == (8, 5000)
    assert (config.initial_step, config.step_decay) == (0.3, 0.995)
    assert (config.tolerance, config.epsilon) == (1e-9, 1e-10)


@pytest.mark.parametrize('overrides', [
    {'restarts': 0},
    {'max_iterations': 0},
    {'step_decay': 1.0},
    {'step_decay': 0.0},
    {'initial_step': -0.1},
    {'tolerance': 0.5},
    {'epsilon': 0.0},
    {'n_jobs': 0},
    {'restarts': 'many'},
    {'colour': 'blue'},
    {'restarts': 2.7},
    {'max_iterations': True},
    {'initial_step': math.inf},
    {'epsilon': math.nan},
    {'tolerance': -math.inf},
    {'seed': -1},
    {'seed': 0.5},
])
def test_invalid_config(overrides):
    with pytest.raises(util_mod.ConfigError):
        optimizer.make_search_config(3, **overrides)


def test_integral_floats_are_accepted():
    config = optimizer.make_search_config(2, restarts=3.0, seed=5.0)
    assert (config.restarts, config.seed) == (3, 5)
    assert isinstance(config.restarts, int)


def test_dimension_beyond_the_cap_is_rejected():
    with pytest.raises(util_mod.ConfigError):
        optimizer.make_search_config(util_mod.ENUMERATION_CAP)
    with pytest.raises(util_mod.ConfigError):
        optimizer.make_search_config(0)


def test_regular_seed_in_the_plane():
    vertices = optimizer.center_regular_in_unit_ball(2).vertices
    npt.assert_allclose(np.linalg.norm(vertices, axis=1), 1.0, atol=1e-12)
    gram = vertices @ vertices.T
    npt.assert_allclose(gram[~np.eye(3, dtype=bool)], -0.5, atol=1e-12)


def test_regular_seed_in_space():
    vertices = optimizer.center_regular_in_unit_ball(3).vertices
    gram = vertices @ vertices.T
    npt.assert_allclose(np.diag(gram), 1.0, atol=1e-12)
    npt.assert_allclose(gram[~np.eye(4, dtype=bool)], -1 / 3, atol=1e-12)


@pytest.mark.parametrize('n', range(1, 13))
def test_regular_seed_keeps_the_norm(n):
    simplex = optimizer.center_regular_in_unit_ball(n)
    npt.assert_allclose(geometry.centroid(simplex), 0.0, atol=1e-12)
    value = pn.projector_norm(simplex, optimizer.unit_ball(n)).value
    assert value == pytest.approx(regular_simplex.regular_norm(n).norm,
                                  abs=1e-9)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_compress_to_sphere(n):
    rng = np.random.default_rng(n)
    ball = geometry.make_ball(rng.uniform(-1.0, 1.0, size=n), 2.0)
    for _ in range(10):
        simplex = my_eval.random_simplex_in_ball(n, ball, rng)
        compressed = optimizer.compress_to_sphere(simplex, ball)
        distances = np.linalg.norm(compressed.vertices - ball.center, axis=1)
        npt.assert_allclose(distances, ball.radius, rtol=1e-12)
        before = abs(geometry.lagrange_basis(simplex).determinant)
        after = abs(geometry.lagrange_basis(compressed).determinant)
        assert after >= before * (1 - 1e-12)


def test_compress_moves_one_node_along_the_face_normal():
    simplex = optimizer.center_regular_in_unit_ball(3)
    pulled = np.array(simplex.vertices)
    pulled[0] *= 0.5
    compressed = optimizer.compress_to_sphere(geometry.make_simplex(pulled),
                                              optimizer.unit_ball(3))
    npt.assert_allclose(compressed.vertices, simplex.vertices, atol=1e-12)


def test_compress_keeps_nodes_on_the_sphere():
    simplex = optimizer.center_regular_in_unit_ball(4)
    compressed = optimizer.compress_to_sphere(simplex, optimizer.unit_ball(4))
    npt.assert_array_equal(compressed.vertices, simplex.vertices)


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_minimal_norm_is_reached_by_the_regular_simplex(n):
    result = optimizer.minimize_norm(optimizer.make_search_config(n))
    assert result.best_norm == pytest.approx(MINIMAL_NORMS[n], abs=1e-3)
    assert result.regularity_defect < 1e-2
    npt.assert_allclose(np.linalg.norm(result.best_simplex.vertices, axis=1),
                        1.0, atol=1e-9)
    assert result.best_norm >= absorption.theta_lower_bound(n) - 1e-9


def test_lower_bound_is_not_attained_in_dimension_five():
    result = optimizer.minimize_norm(optimizer.make_search_config(5))
    assert 7 / 3 + 1e-4 < result.best_norm
    assert result.best_norm <= (1 + 2 * math.sqrt(10)) / 3 + 1e-9


def test_search_result_invariants():
    config = optimizer.make_search_config(3, **SMALL_BUDGET)
    result = optimizer.minimize_norm(config)
    assert len(result.history) == len(result.traces) == config.restarts
    assert result.history[result.best_restart] == result.best_norm
    assert result.best_norm == pytest.approx(min(result.history), abs=1e-11)
    assert result.best_norm <= regular_simplex.regular_norm(3).norm + 1e-9
    for trace in result.traces:
        assert all(later < earlier
                   for earlier, later in zip(trace, trace[1:]))
    exact = pn.projector_norm(result.best_simplex, optimizer.unit_ball(3))
    assert exact.value == pytest.approx(result.best_norm, abs=1e-12)


def test_search_is_deterministic():
    config = optimizer.make_search_config(2, seed=42, **SMALL_BUDGET)
    first = optimizer.minimize_norm(config)
    second = optimizer.minimize_norm(config)
    assert first.history == second.history
    npt.assert_array_equal(first.best_simplex.vertices,
                           second.best_simplex.vertices)


def test_parallel_restarts_give_the_same_result():
    config = optimizer.make_search_config(2, seed=7, **SMALL_BUDGET)
    sequential = optimizer.minimize_norm(config)
    with joblib.parallel_config(backend='threading'):
        parallel = optimizer.minimize_norm(config._replace(n_jobs=2))
    assert parallel.history == sequential.history
    assert parallel.best_restart == sequential.best_restart


def test_search_fails_when_every_restart_is_degenerate():
    config = optimizer.make_search_config(2, epsilon=1e3, restarts=2,
                                          max_iterations=5)
    with pytest.raises(util_mod.SearchError):
        optimizer.minimize_norm(config)
