'''
Norm of the linear interpolation projector P : C(B) -> Pi_1(R^n) whose nodes
are the vertices of a simplex S, for a Euclidean ball B = B(x0; R).

The norm equals the maximum over the ball of sum_j |lambda_j(x)|. For a fixed
sign vector f the linear function Lambda(x) = sum_j f_j lambda_j(x) attains
its largest modulus on B at x0 +- R v/||v||, where v_i = sum_j f_j l_ij, and
that modulus is R ||v|| + |Lambda(x0)|. Maximizing over the 2^n sign vectors
with last entry +1 (f and -f give the same value) yields the exact norm.

Sign vectors are coded by integers: bit n-1-i of the code is 1 when
f_{i+1} = +1, so increasing codes are increasing lexicographic order of f
with -1 < +1.
'''

import collections

import numpy as np

from . import util_mod
from . import geometry


# Sign vectors evaluated per vectorized block
ENUMERATION_CHUNK = 2 ** 16
# Sphere points drawn per Monte Carlo block; block i uses Philox(seed).jumped(i)
MC_CHUNK = 100000


NormCertificate = collections.namedtuple(
    'NormCertificate',
    ['value', 'signs', 'extremal_point', 'k', 'direction', 'maximizers',
     'ball'])
NormCertificate.__doc__ = '''Exact projector norm with the data attaining it.

value : float
    ||P||_B
signs : np.ndarray of int, shape=(n+1,)
    Lexicographically smallest maximizing sign vector, last entry +1
extremal_point : np.ndarray, shape=(n,)
    Point of the sphere where sum_j |lambda_j| equals ``value``
k : int
    Number of -1 entries of whichever of +-signs has fewer of them
direction : np.ndarray, shape=(n,)
    v_i = sum_j f_j l_ij for the stored signs
maximizers : np.ndarray of int8, shape=(m, n+1)
    Every canonical sign vector within the tie tolerance of the maximum
ball : Ball
    The ball the norm was computed on
'''


def sign_vectors(codes, n):
    """Decode sign-vector codes into rows of +-1 with a trailing +1.

    Parameters
    ----------
    codes : np.ndarray of int, shape=(m,)
        Codes in [0, 2**n)
    n : int
        Space dimension

    Returns
    -------
    signs : np.ndarray of int8, shape=(m, n+1)

    """
    codes = np.asarray(codes, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (codes[:, None] >> shifts) & 1
    signs = np.ones((codes.size, n + 1), dtype=np.int8)
    signs[:, :n] = 2 * bits - 1
    return signs


def _check_enumerable(n):
    if n + 1 > util_mod.ENUMERATION_CAP:
        raise util_mod.EnumerationCapError(
            'Exact norm needs 2^{} sign vectors; the cap is n+1 <= {}. Use '
            'norm_lower_bound_mc for a sampled lower bound.'.format(
                n, util_mod.ENUMERATION_CAP))


def _maximize_over_signs(gradients, center_values, radius):
    # gradients: (n, n+1) = A^{-1}[:n]; center_values: lambda_j(x0)
    n = gradients.shape[0]
    total = 2 ** n
    best = -np.inf
    kept_codes = np.empty(0, dtype=np.int64)
    kept_values = np.empty(0)
    for start in range(0, total, ENUMERATION_CHUNK):
        codes = np.arange(start, min(start + ENUMERATION_CHUNK, total),
                          dtype=np.int64)
        signs = sign_vectors(codes, n).astype(float)
        values = (radius * np.linalg.norm(signs @ gradients.T, axis=1)
                  + np.abs(signs @ center_values))
        best = max(best, float(values.max()))
        cutoff = best - util_mod.TIE_TOLERANCE * max(1.0, best)
        keep = values >= cutoff
        kept_codes = np.concatenate([kept_codes[kept_values >= cutoff],
                                     codes[keep]])
        kept_values = np.concatenate([kept_values[kept_values >= cutoff],
                                      values[keep]])
    return kept_codes, best


def _extremal_point(ball, direction, center_value):
    # x+ when Lambda(x0) >= 0, x- otherwise; e_1 when Lambda is constant
    norm_v = np.linalg.norm(direction)
    if norm_v == 0.0:
        step = np.zeros(ball.n)
        step[0] = 1.0
    else:
        step = direction / norm_v
        if center_value < 0:
            step = -step
    return ball.center + ball.radius * step


def _certificate(basis, ball, center_values):
    n = ball.n
    gradients = basis.coeffs[:n]
    codes, _ = _maximize_over_signs(gradients, center_values, ball.radius)
    maximizers = sign_vectors(codes, n)
    maximizers.flags.writeable = False
    signs = sign_vectors(codes[:1], n)[0].astype(int)
    direction = gradients @ signs
    center_value = float(signs @ center_values)
    value = ball.radius * float(np.linalg.norm(direction)) + abs(center_value)
    negatives = int(np.count_nonzero(signs < 0))
    point = _extremal_point(ball, direction, center_value)
    for array in (signs, direction, point):
        array.flags.writeable = False
    return NormCertificate(value, signs, point, min(negatives, n + 1 - negatives),
                           direction, maximizers, ball)


def projector_norm_from_basis(basis, ball):
    """Exact norm for an already inverted vertex matrix (see
    :func:`projector_norm`)."""
    n = basis.coeffs.shape[0] - 1
    _check_enumerable(n)
    return _certificate(basis, ball, geometry.barycentric(basis, ball.center))


def _check_ball(simplex, ball):
    if ball.n != simplex.n:
        raise util_mod.BallInterpolationError(
            'Ball lives in R^{} but the simplex in R^{}'.format(ball.n,
                                                                simplex.n))


def projector_norm(simplex, ball):
    """Exact norm ||P||_B by enumeration of the canonical sign vectors.

    Parameters
    ----------
    simplex : Simplex
        Interpolation nodes; they need not lie in the ball
    ball : Ball

    Returns
    -------
    certificate : NormCertificate

    Raises
    ------
    DegenerateSimplexError
    EnumerationCapError
        If n+1 exceeds ENUMERATION_CAP.

    """
    _check_ball(simplex, ball)
    _check_enumerable(simplex.n)
    return projector_norm_from_basis(geometry.lagrange_basis(simplex), ball)


def projector_norm_centered(simplex, ball):
    """Exact norm when the ball is centered at the centroid of the simplex.

    Then lambda_j(x0) = 1/(n+1) for every j and the free term reduces to
    |sum_j f_j| / (n+1).

    Raises
    ------
    PreconditionError
        If the centroid is farther than CENTER_TOLERANCE * R from the center.

    """
    _check_ball(simplex, ball)
    offset = float(np.linalg.norm(geometry.centroid(simplex) - ball.center))
    if offset > util_mod.CENTER_TOLERANCE * ball.radius:
        raise util_mod.PreconditionError(
            'Centroid is {:.3e} away from the ball center; the centered '
            'formula needs it within {:.1e} R'.format(
                offset, util_mod.CENTER_TOLERANCE), offset=offset)
    _check_enumerable(simplex.n)
    basis = geometry.lagrange_basis(simplex)
    n = simplex.n
    return _certificate(basis, ball, np.full(n + 1, 1.0 / (n + 1)))


def sphere_points(ball, count, rng):
    """``count`` points uniformly distributed on the boundary sphere."""
    gauss = rng.standard_normal((count, ball.n))
    norms = np.linalg.norm(gauss, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return ball.center + ball.radius * gauss / norms


def norm_lower_bound_mc(simplex, ball, samples, seed):
    """Monte Carlo lower bound: max of sum_j |lambda_j| over sphere samples.

    The result depends only on ``samples`` and ``seed``.

    Parameters
    ----------
    simplex : Simplex
    ball : Ball
    samples : int >= 1
        Number of sphere points
    seed : int >= 0
        Key of the Philox generator

    Returns
    -------
    bound : float
        Never larger than the exact norm

    """
    samples = util_mod.validate_integer(samples, 1, name='samples')
    seed = util_mod.validate_integer(seed, 0, name='seed')
    _check_ball(simplex, ball)
    basis = geometry.lagrange_basis(simplex)
    best = -np.inf
    for chunk, start in enumerate(range(0, samples, MC_CHUNK)):
        rng = np.random.Generator(np.random.Philox(seed).jumped(chunk))
        points = sphere_points(ball, min(MC_CHUNK, samples - start), rng)
        sums = np.abs(geometry.barycentric_many(basis, points)).sum(axis=1)
        best = max(best, float(sums.max()))
    return best


def _candidate_points(cert, basis):
    yield cert.extremal_point
    ball = cert.ball
    gradients = basis.coeffs[:ball.n]
    center_values = geometry.barycentric(basis, ball.center)
    for signs in cert.maximizers.astype(float):
        direction = gradients @ signs
        norm_v = np.linalg.norm(direction)
        if norm_v == 0.0:
            continue
        center_value = signs @ center_values
        step = ball.radius * direction / norm_v
        if center_value >= -util_mod.SIGN_TOLERANCE:
            yield ball.center + step
        if center_value <= util_mod.SIGN_TOLERANCE:
            yield ball.center - step


def one_point_witness(cert, basis):
    """A 1-point of the ball: an extremal point with exactly one negative
    barycentric coordinate.

    The stored extremal point is tried first, then the extremal points of
    every maximizing sign vector.

    Parameters
    ----------
    cert : NormCertificate
        Produced by :func:`projector_norm` for the simplex of ``basis``
    basis : LagrangeBasis

    Returns
    -------
    point : np.ndarray or None

    """
    for point in _candidate_points(cert, basis):
        coords = geometry.barycentric(basis, point)
        if np.count_nonzero(coords < -util_mod.SIGN_TOLERANCE) == 1:
            return point
    return None
