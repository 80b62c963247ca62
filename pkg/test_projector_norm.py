import itertools
import math

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from ball_interpolation import util_mod
from ball_interpolation import geometry
from ball_interpolation import projector_norm as pn
from ball_interpolation import regular_simplex
import evaluation as my_eval


UNIT_DISK = geometry.make_ball([0.0, 0.0], 1.0)


def regular_inscribed(n):
    if n == 1:
        return geometry.make_simplex([[0.0], [1.0]]), \
            geometry.circumscribed_ball_regular(1)
    return regular_simplex.regular_simplex(n), \
        geometry.circumscribed_ball_regular(n)


def unit_ball(n):
    return geometry.make_ball(np.zeros(n), 1.0)


def brute_force_norm(simplex, ball):
    # every one of the 2^(n+1) sign vectors, no canonical quotient
    basis = geometry.lagrange_basis(simplex)
    center_values = geometry.barycentric(basis, ball.center)
    best = -np.inf
    for signs in itertools.product((-1.0, 1.0), repeat=simplex.n + 1):
        signs = np.array(signs)
        value = (ball.radius * np.linalg.norm(basis.coeffs[:simplex.n] @ signs)
                 + abs(signs @ center_values))
        best = max(best, value)
    return best


def test_sign_vectors_follow_lexicographic_order():
    signs = pn.sign_vectors(np.arange(4), 2)
    npt.assert_array_equal(signs, [[-1, -1, 1],
                                   [-1, 1, 1],
                                   [1, -1, 1],
                                   [1, 1, 1]])


def test_segment_norm_is_one():
    simplex = geometry.make_simplex([[-1.0], [1.0]])
    cert = pn.projector_norm(simplex, unit_ball(1))
    assert cert.value == pytest.approx(1.0, abs=1e-12)
    assert cert.k in (0, 1)
    assert cert.signs[-1] == 1


@pytest.mark.parametrize('n', range(2, 13))
def test_regular_inscribed_norm_matches_closed_form(n):
    simplex, ball = regular_inscribed(n)
    cert = pn.projector_norm(simplex, ball)
    report = regular_simplex.regular_norm(n)
    assert cert.value == pytest.approx(report.norm, abs=1e-9)
    assert cert.k == report.k_star


def test_regular_norms_from_the_table():
    assert pn.projector_norm(*regular_inscribed(2)).value == \
        pytest.approx(5 / 3, abs=1e-12)
    cert = pn.projector_norm(*regular_inscribed(10))
    assert cert.value == pytest.approx((3 + 4 * math.sqrt(70)) / 11, abs=1e-10)
    assert cert.k == 4


def test_centered_norm():
    assert pn.projector_norm_centered(*regular_inscribed(4)).value == \
        pytest.approx(11 / 5, abs=1e-12)
    cert = pn.projector_norm_centered(*regular_inscribed(12))
    assert cert.value == pytest.approx((3 + 8 * math.sqrt(30)) / 13, abs=1e-10)
    assert cert.k == 5
    segment = geometry.make_simplex([[-2.0], [4.0]])
    assert pn.projector_norm_centered(
        segment, geometry.make_ball([1.0], 3.0)).value == pytest.approx(1.0)


def test_centered_norm_requires_centroid_at_center():
    simplex, ball = regular_inscribed(3)
    shifted = geometry.make_ball(ball.center + 1e-3, ball.radius)
    with pytest.raises(util_mod.PreconditionError) as info:
        pn.projector_norm_centered(simplex, shifted)
    assert info.value.offset == pytest.approx(math.sqrt(3) * 1e-3, rel=1e-6)


@pytest.mark.parametrize('n', [2, 3, 5, 6])
def test_centered_and_general_norms_agree(n):
    simplex, ball = regular_inscribed(n)
    assert pn.projector_norm_centered(simplex, ball).value == pytest.approx(
        pn.projector_norm(simplex, ball).value, abs=1e-10)


def test_enumeration_cap():
    simplex = regular_simplex.regular_simplex(util_mod.ENUMERATION_CAP)
    ball = geometry.circumscribed_ball_regular(util_mod.ENUMERATION_CAP)
    with pytest.raises(util_mod.EnumerationCapError):
        pn.projector_norm(simplex, ball)


def test_degenerate_simplex_is_rejected():
    flat = geometry.make_simplex([[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(util_mod.DegenerateSimplexError):
        pn.projector_norm(flat, UNIT_DISK)


def test_ball_dimension_must_match():
    simplex, _ = regular_inscribed(3)
    with pytest.raises(util_mod.BallInterpolationError):
        pn.projector_norm(simplex, UNIT_DISK)


@pytest.mark.parametrize('n', range(1, 9))
def test_canonical_signs_give_the_full_maximum(n):
    rng = np.random.default_rng(10 + n)
    ball = unit_ball(n)
    simplex = my_eval.random_simplex_in_ball(n, ball, rng)
    assert pn.projector_norm(simplex, ball).value == pytest.approx(
        brute_force_norm(simplex, ball), rel=1e-12)


@seed(4)
@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=1, max_value=6),
       key=st.integers(min_value=0, max_value=2 ** 32 - 1),
       radius=st.floats(min_value=0.2, max_value=3.0))
def test_certificate_consistency(n, key, radius):
    rng = np.random.default_rng(key)
    ball = geometry.make_ball(rng.uniform(-2.0, 2.0, size=n), radius)
    # nodes may stick out of the ball
    simplex = my_eval.random_simplex_in_ball(
        n, geometry.make_ball(ball.center, 1.5 * radius), rng)
    basis = geometry.lagrange_basis(simplex)
    cert = pn.projector_norm(simplex, ball)
    assert cert.value >= 1.0 - 1e-12
    assert cert.signs[-1] == 1
    assert set(np.unique(cert.signs)) <= {-1, 1}
    center_values = geometry.barycentric(basis, ball.center)
    assert cert.value == pytest.approx(
        ball.radius * np.linalg.norm(cert.direction)
        + abs(cert.signs @ center_values), abs=1e-10 * max(1.0, cert.value))
    assert np.linalg.norm(cert.extremal_point - ball.center) == \
        pytest.approx(ball.radius, abs=1e-10 * max(1.0, ball.radius))
    assert np.abs(geometry.barycentric(basis, cert.extremal_point)).sum() == \
        pytest.approx(cert.value, abs=1e-9 * max(1.0, cert.value))


@pytest.mark.parametrize('n', [2, 3, 4])
def test_norm_is_invariant_under_rigid_motions(n):
    rng = np.random.default_rng(n)
    ball = unit_ball(n)
    simplex = my_eval.random_simplex_in_ball(n, ball, rng)
    rotation, _ = np.linalg.qr(rng.standard_normal((n, n)))
    shift = rng.uniform(-3.0, 3.0, size=n)
    moved = geometry.make_simplex(simplex.vertices @ rotation.T + shift)
    moved_ball = geometry.make_ball(rotation @ ball.center + shift, 1.0)
    assert pn.projector_norm(moved, moved_ball).value == pytest.approx(
        pn.projector_norm(simplex, ball).value, abs=1e-9)


def test_random_norm_matches_dense_sphere_sampling():
    rng = np.random.default_rng(2024)
    ball = unit_ball(3)
    simplex = my_eval.random_simplex_in_ball(3, ball, rng)
    exact = pn.projector_norm(simplex, ball).value
    sampled, point = my_eval.sphere_sampling_norm(simplex, ball, 10 ** 6,
                                                  seed=7)
    assert sampled <= exact + 1e-9
    assert sampled == pytest.approx(exact, rel=1e-3)
    assert np.linalg.norm(point) == pytest.approx(1.0)


def test_monte_carlo_lower_bound():
    simplex, ball = regular_inscribed(3)
    bound = pn.norm_lower_bound_mc(simplex, ball, 10 ** 6, seed=1)
    assert 2.0 - 5e-3 <= bound <= 2.0 + 1e-9
    assert pn.norm_lower_bound_mc(simplex, ball, 10 ** 6, seed=1) == bound
    single = pn.norm_lower_bound_mc(simplex, ball, 1, seed=3)
    assert 1.0 - 1e-12 <= single <= 2.0 + 1e-9


@pytest.mark.parametrize('n', [2, 4, 5])
def test_monte_carlo_never_exceeds_the_exact_norm(n):
    rng = np.random.default_rng(100 + n)
    ball = unit_ball(n)
    for _ in range(5):
        simplex = my_eval.random_simplex_in_ball(n, ball, rng)
        exact = pn.projector_norm(simplex, ball).value
        few = pn.norm_lower_bound_mc(simplex, ball, 100, seed=0)
        many = pn.norm_lower_bound_mc(simplex, ball, 20000, seed=0)
        assert few <= exact + 1e-9
        assert many <= exact + 1e-9
        assert exact - many <= exact - few + 1e-12


def test_monte_carlo_rejects_zero_samples():
    with pytest.raises(util_mod.DomainError):
        pn.norm_lower_bound_mc(*regular_inscribed(2), 0, seed=0)


def test_monte_carlo_rejects_negative_seed():
    with pytest.raises(util_mod.DomainError):
        pn.norm_lower_bound_mc(*regular_inscribed(2), 10, seed=-1)
    with pytest.raises(util_mod.DomainError):
        my_eval.sphere_sampling_norm(*regular_inscribed(2), 10, seed=-3)


@pytest.mark.parametrize('n', range(1, 9))
def test_one_point_witness_for_regular_simplex(n):
    simplex, ball = regular_inscribed(n)
    basis = geometry.lagrange_basis(simplex)
    cert = pn.projector_norm(simplex, ball)
    witness = pn.one_point_witness(cert, basis)
    if 2 <= n <= 4:
        assert witness is not None
        coords = geometry.barycentric(basis, witness)
        assert np.count_nonzero(coords < -util_mod.SIGN_TOLERANCE) == 1
        assert np.abs(coords).sum() == pytest.approx(cert.value, abs=1e-9)
    else:
        assert witness is None


@pytest.mark.parametrize('n', [2, 3, 4, 5, 6, 7])
def test_inscribed_simplices_respect_the_lower_bound(n):
    rng = np.random.default_rng(n)
    ball = unit_ball(n)
    bound = 3 - 4 / (n + 1)
    for _ in range(20):
        simplex = my_eval.random_simplex_in_ball(n, ball, rng, on_sphere=True)
        assert pn.projector_norm(simplex, ball).value >= bound - 1e-9
