'''
Numerical search for minimal interpolation projectors on the unit ball B_n.

Some minimal projector has all its nodes on the unit sphere, so the search
only moves nodes over the sphere. Random starts are brought there by
:func:`compress_to_sphere`, which pushes interior nodes along the normal of
the opposite face. Each restart is a derivative-free descent: perturb one
vertex, renormalize it to the sphere, keep the move if the exact projector
norm drops. Restart 0 starts from the inscribed regular simplex, the others
from random nodes compressed onto the sphere.
'''

import collections
import warnings

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from . import util_mod
from . import geometry
from . import projector_norm as pn
from . import regular_simplex


# Draws per random restart before it is declared degenerate
MAX_START_ATTEMPTS = 100
# A vertex counts as on the sphere within this relative distance
SPHERE_TOLERANCE = 1e-12

DEFAULT_SEARCH_PARAMETERS = {
    'restarts': 8,
    'max_iterations': 5000,
    'initial_step': 0.3,
    'step_decay': 0.995,
    'tolerance': 1e-9,
    'seed': 0,
    'epsilon': 1e-10,
    'n_jobs': 1,
}


INTEGER_PARAMETERS = ('n', 'restarts', 'max_iterations', 'seed', 'n_jobs')


SearchConfig = collections.namedtuple(
    'SearchConfig', ['n'] + list(DEFAULT_SEARCH_PARAMETERS))

SearchResult = collections.namedtuple(
    'SearchResult',
    ['best_norm', 'best_simplex', 'history', 'regularity_defect',
     'best_restart', 'traces'])
SearchResult.__doc__ = '''Outcome of :func:`minimize_norm`.

best_norm : float
best_simplex : Simplex
    Vertices on the unit sphere
history : list of float
    Best norm reached by each restart (inf for a degenerate restart)
regularity_defect : float
    See :func:`geometry.regularity_defect`
best_restart : int
traces : list of list of float
    Accepted objective values of each restart, in order
'''


def make_search_config(n, **overrides):
    """Build a validated :class:`SearchConfig` from the defaults.

    Parameters
    ----------
    n : int
        Dimension of the ball
    overrides
        Any field of DEFAULT_SEARCH_PARAMETERS

    Returns
    -------
    config : SearchConfig

    Raises
    ------
    ConfigError
        For unknown fields or invalid values.

    """
    unknown = set(overrides) - set(DEFAULT_SEARCH_PARAMETERS)
    if unknown:
        raise util_mod.ConfigError('Unknown search parameters: {}'.format(
            ', '.join(sorted(unknown))))
    parameters = dict(DEFAULT_SEARCH_PARAMETERS, n=n, **overrides)
    values = {}
    for name in SearchConfig._fields:
        if name in INTEGER_PARAMETERS:
            values[name] = _integral(name, parameters[name])
        else:
            values[name] = _real(name, parameters[name])
    config = SearchConfig(**values)
    validate_search_config(config)
    return config


def _real(name, value):
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise util_mod.ConfigError('Invalid search parameter {}: {}'.format(
            name, exc))


def _integral(name, value):
    # 3 and 3.0 are accepted, 2.7 and True are not
    number = _real(name, value)
    if isinstance(value, bool) or not number.is_integer():
        raise util_mod.ConfigError('{} must be an integer, got {!r}'.format(
            name, value))
    return int(number)


def validate_search_config(config):
    """Checks a :class:`SearchConfig`, and raises ConfigError if not valid."""
    if config.n < 1:
        raise util_mod.ConfigError('n must be >= 1, got {}'.format(config.n))
    if config.n + 1 > util_mod.ENUMERATION_CAP:
        raise util_mod.ConfigError(
            'n = {} is beyond the exact-norm cap n+1 <= {}'.format(
                config.n, util_mod.ENUMERATION_CAP))
    if config.restarts < 1:
        raise util_mod.ConfigError('restarts must be >= 1')
    if config.max_iterations < 1:
        raise util_mod.ConfigError('max_iterations must be >= 1')
    if not 0 < config.step_decay < 1:
        raise util_mod.ConfigError('step_decay must lie in (0, 1)')
    for name in ('initial_step', 'tolerance', 'epsilon'):
        value = getattr(config, name)
        if not (np.isfinite(value) and value > 0):
            raise util_mod.ConfigError('{} must be positive and finite, '
                                       'got {}'.format(name, value))
    if config.seed < 0:
        raise util_mod.ConfigError('seed must be >= 0, got {}'.format(
            config.seed))
    if config.tolerance >= config.initial_step:
        raise util_mod.ConfigError('tolerance must be below initial_step')
    if config.n_jobs == 0:
        raise util_mod.ConfigError('n_jobs must be nonzero')


def unit_ball(n):
    return geometry.make_ball(np.zeros(n), 1.0)


def center_regular_in_unit_ball(n):
    """Regular simplex inscribed into B_n: centroid at the origin, vertices
    on the unit sphere.

    Parameters
    ----------
    n : int >= 1

    Returns
    -------
    simplex : Simplex

    """
    n = util_mod.validate_integer(n, 1)
    if n == 1:
        return geometry.make_simplex([[-1.0], [1.0]])
    ball = geometry.circumscribed_ball_regular(n)
    vertices = regular_simplex.regular_simplex(n).vertices
    return geometry.make_simplex((vertices - ball.center) / ball.radius)


def _on_sphere(point, ball):
    distance = np.linalg.norm(point - ball.center)
    return abs(distance - ball.radius) <= SPHERE_TOLERANCE * ball.radius


def compress_to_sphere(simplex, ball):
    """Move every node lying strictly inside the ball onto its sphere.

    Node i travels along the normal of the hyperplane lambda_i = 0, away from
    it, until it meets the sphere. The other nodes stay put and the moved
    node only gets farther from its opposite face.

    Parameters
    ----------
    simplex : Simplex
        Nodes inside (or on) the ball
    ball : Ball

    Returns
    -------
    simplex : Simplex
        All vertices on the sphere

    """
    vertices = np.array(simplex.vertices, dtype=float)
    for i in range(vertices.shape[0]):
        offset = vertices[i] - ball.center
        if np.linalg.norm(offset) > ball.radius or _on_sphere(vertices[i],
                                                               ball):
            continue
        basis = geometry.lagrange_basis(geometry.make_simplex(vertices))
        normal = basis.coeffs[:ball.n, i]
        normal = normal / np.linalg.norm(normal)
        b = normal @ offset
        c = offset @ offset - ball.radius ** 2
        moved = offset + (-b + np.sqrt(b * b - c)) * normal
        vertices[i] = ball.center + ball.radius * moved / np.linalg.norm(moved)
    return geometry.make_simplex(vertices)


def _objective(vertices, ball, epsilon):
    # exact norm, inf for configurations the degeneracy guard rejects
    try:
        basis = geometry.lagrange_basis(geometry.make_simplex(vertices))
    except util_mod.DegenerateSimplexError:
        return np.inf
    if abs(basis.determinant) < epsilon:
        return np.inf
    return pn.projector_norm_from_basis(basis, ball).value


def _random_start(config, ball, rng):
    n = config.n
    for _ in range(MAX_START_ATTEMPTS):
        directions = rng.standard_normal((n + 1, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = rng.uniform(size=(n + 1, 1)) ** (1.0 / n)
        try:
            start = compress_to_sphere(
                geometry.make_simplex(directions * radii), ball).vertices
        except util_mod.DegenerateSimplexError:
            continue
        if np.isfinite(_objective(start, ball, config.epsilon)):
            return np.array(start)
    return None


def _descend(start, config, ball, rng):
    current = np.array(start, dtype=float)
    value = _objective(current, ball, config.epsilon)
    trace = [value]
    step = config.initial_step
    for _ in range(config.max_iterations):
        if step < config.tolerance:
            break
        j = rng.integers(config.n + 1)
        proposal = current.copy()
        proposal[j] += step * rng.standard_normal(config.n)
        length = np.linalg.norm(proposal[j])
        if length > 0:
            proposal[j] /= length
            candidate = _objective(proposal, ball, config.epsilon)
            if candidate < value:
                current, value = proposal, candidate
                trace.append(value)
        step *= config.step_decay
    return current, value, trace


def _run_restart(index, seed_sequence, config):
    ball = unit_ball(config.n)
    rng = np.random.Generator(np.random.Philox(seed_sequence))
    if index == 0:
        start = np.array(center_regular_in_unit_ball(config.n).vertices)
    else:
        start = _random_start(config, ball, rng)
        if start is None:
            return None, np.inf, []
    return _descend(start, config, ball, rng)


def minimize_norm(config, verbose=False):
    """Search for the minimal projector norm on B_n.

    Parameters
    ----------
    config : SearchConfig
    verbose : bool
        Show a progress bar over the restarts on the error stream
        (Default value = False)

    Returns
    -------
    result : SearchResult
        Same output for the same config, whatever ``config.n_jobs``

    """
    validate_search_config(config)
    children = np.random.SeedSequence(config.seed).spawn(config.restarts)
    restarts = tqdm(range(config.restarts), desc='restarts',
                    disable=not verbose)
    outcomes = Parallel(n_jobs=config.n_jobs)(
        delayed(_run_restart)(index, children[index], config)
        for index in restarts)

    # ties within TIE_TOLERANCE go to the lowest restart index
    best_index = None
    for index, (_, value, _) in enumerate(outcomes):
        if not np.isfinite(value):
            continue
        if best_index is None:
            best_index = index
            continue
        best = outcomes[best_index][1]
        if value < best - util_mod.TIE_TOLERANCE * max(1.0, best):
            best_index = index
    if best_index is None:
        raise util_mod.SearchError('Every restart was degenerate')
    if config.restarts > 1 and not any(np.isfinite(value) for _, value, _
                                       in outcomes[1:]):
        warnings.warn('All random restarts hit the degeneracy guard')

    best_vertices, best_norm, _ = outcomes[best_index]
    best_simplex = geometry.make_simplex(best_vertices)
    return SearchResult(
        best_norm=float(best_norm),
        best_simplex=best_simplex,
        history=[float(value) for _, value, _ in outcomes],
        regularity_defect=geometry.regularity_defect(best_simplex),
        best_restart=best_index,
        traces=[[float(v) for v in trace] for _, _, trace in outcomes])
