'''
Independent checks for the closed-form and enumeration results: brute-force
sampling of the sphere, a bisection oracle for the absorption index, and
textbook determinant / inverse routines. None of them reuse the sign-vector
enumeration or the face-margin formula of the library.
'''

import numpy as np
from tqdm import tqdm

from ball_interpolation import util_mod
from ball_interpolation import geometry
from ball_interpolation import projector_norm as pn


# Rounds of local refinement around the best sampled sphere point
REFINE_ROUNDS = 60
REFINE_SAMPLES = 200



def random_simplex_in_ball(n, ball, rng, on_sphere=False):
    '''n+1 vertices drawn uniformly in the ball (or on its sphere), redrawn until
    the simplex passes the degeneracy guard.'''
    while True:
        directions = rng.standard_normal((n + 1, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = 1.0 if on_sphere else rng.uniform(size=(n + 1, 1)) ** (1.0 / n)
        simplex = geometry.make_simplex(ball.center
                                        + ball.radius * radii * directions)
        try:
            geometry.lagrange_basis(simplex)
        except util_mod.DegenerateSimplexError:
            continue
        return simplex




def sphere_sampling_norm(simplex, ball, samples, seed, verbose=False):
    '''Maximum of sum_j |lambda_j| over ``samples`` sphere points.

    Returns:
        value (float): the sampled maximum, a lower bound of the norm.
        point (np.ndarray): the sphere point attaining it.
    '''
    samples = util_mod.validate_integer(samples, 1, name='samples')
    seed = util_mod.validate_integer(seed, 0, name='seed')
    basis = geometry.lagrange_basis(simplex)
    best, best_point = -np.inf, None
    starts = range(0, samples, pn.MC_CHUNK)
    for chunk, start in enumerate(tqdm(starts, disable=not verbose)):
        rng = np.random.Generator(np.random.Philox(seed).jumped(chunk))
        points = pn.sphere_points(ball, min(pn.MC_CHUNK, samples - start), rng)
        sums = np.abs(geometry.barycentric_many(basis, points)).sum(axis=1)
        index = int(np.argmax(sums))
        if sums[index] > best:
            best, best_point = float(sums[index]), points[index]
    return best, best_point



def sphere_minimum(function, ball, samples, rng):
    '''Minimum of ``function`` (vectorized over rows) on the sphere of ``ball``:
    random sampling followed by a shrinking local search.'''
    points = pn.sphere_points(ball, samples, rng)
    values = function(points)
    index = int(np.argmin(values))
    best_point, best_value = points[index], values[index]
    scale = 0.5
    for _ in range(REFINE_ROUNDS):
        offsets = best_point - ball.center
        trial = offsets + scale * ball.radius * rng.standard_normal(
            (REFINE_SAMPLES, ball.n))
        trial = ball.center + ball.radius * trial / np.linalg.norm(
            trial, axis=1, keepdims=True)
        trial_values = function(trial)
        index = int(np.argmin(trial_values))
        if trial_values[index] < best_value:
            best_point, best_value = trial[index], trial_values[index]
        else:
            scale *= 0.5
    return float(best_value)




def absorption_by_bisection(simplex, ball, samples=20000, seed=0,
                            tolerance=1e-9):
    '''Absorption index from the definition: the least sigma >= 1 with the ball
    inside the homothety sigma S about the centroid, located by bisection.

    Containment of the ball in sigma S is tested on sampled minima of every
    barycentric coordinate over the sphere.
    '''
    n = simplex.n
    basis = geometry.lagrange_basis(simplex)
    rng = np.random.Generator(np.random.Philox(seed))
    minima = np.array([
        sphere_minimum(
            lambda points, j=j: geometry.barycentric_many(basis, points)[:, j],
            ball, samples, rng)
        for j in range(n + 1)])

    def contains(sigma):
        # x lies in sigma S iff every lambda_j(x) >= -(sigma - 1)/(n+1)
        return np.all(minima >= -(sigma - 1) / (n + 1))

    if contains(1.0):
        return 1.0
    low, high = 1.0, 2.0
    while not contains(high):
        low, high = high, 2 * high
    while high - low > tolerance * high:
        middle = 0.5 * (low + high)
        if contains(middle):
            high = middle
        else:
            low = middle
    return high




def cofactor_determinant(matrix):
    '''Determinant by cofactor expansion along the first row (small matrices).'''
    matrix = np.asarray(matrix, dtype=float)
    size = matrix.shape[0]
    if size == 1:
        return float(matrix[0, 0])
    total = 0.0
    for column in range(size):
        minor = np.delete(matrix[1:], column, axis=1)
        total += (-1) ** column * matrix[0, column] * cofactor_determinant(minor)
    return total



def gauss_jordan_inverse(matrix):
    '''Inverse by Gauss-Jordan elimination with partial pivoting.'''
    matrix = np.asarray(matrix, dtype=float)
    size = matrix.shape[0]
    augmented = np.hstack([matrix, np.eye(size)])
    for column in range(size):
        pivot = column + int(np.argmax(np.abs(augmented[column:, column])))
        if augmented[pivot, column] == 0.0:
            raise util_mod.DegenerateSimplexError(0.0, 0.0)
        augmented[[column, pivot]] = augmented[[pivot, column]]
        augmented[column] /= augmented[column, column]
        for row in range(size):
            if row != column:
                augmented[row] -= augmented[row, column] * augmented[column]
    return augmented[:, size:]
