'''
Simplices, balls and the basic Lagrange polynomials of linear interpolation.

Conventions
-----------

A simplex in R^n is stored as an (n+1, n) array, one vertex per row. The
vertex matrix A appends a column of ones to it; the columns of A^{-1} hold
the coefficients (l_1j, ..., l_nj, l_{n+1,j}) of the basic Lagrange
polynomial

    lambda_j(x) = l_1j x_1 + ... + l_nj x_n + l_{n+1,j}

so that ``np.append(x, 1) @ A^{-1}`` are the barycentric coordinates of x.
All arrays handed out by this module are read-only.
'''

import collections
import warnings

import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist

from . import util_mod


class Ball(collections.namedtuple('Ball', ['center', 'radius'])):
    """Euclidean ball ``||x - center|| <= radius``."""
    __slots__ = ()

    @property
    def n(self):
        return self.center.shape[0]


class Simplex(collections.namedtuple('Simplex', ['vertices'])):
    """n+1 vertices in R^n, one per row of ``vertices``."""
    __slots__ = ()

    @property
    def n(self):
        return self.vertices.shape[1]


VertexMatrix = collections.namedtuple('VertexMatrix', ['entries'])

# coeffs is A^{-1}; determinant is det A, kept for degeneracy reporting
LagrangeBasis = collections.namedtuple('LagrangeBasis',
                                       ['coeffs', 'determinant'])


def make_ball(center, radius):
    """Build a validated :class:`Ball`.

    Parameters
    ----------
    center : array_like, shape=(n,)
        Center of the ball
    radius : float > 0
        Radius of the ball

    Returns
    -------
    ball : Ball

    """
    center = util_mod.as_point(center, name='Ball center')
    radius = float(radius)
    util_mod.validate_radius(radius)
    return Ball(center, radius)


def make_simplex(vertices):
    """Build a validated :class:`Simplex` from n+1 vertices in R^n.

    Nondegeneracy is checked where it matters, by :func:`lagrange_basis`.

    Parameters
    ----------
    vertices : array_like, shape=(n+1, n)
        Vertex coordinates, one vertex per row

    Returns
    -------
    simplex : Simplex

    """
    try:
        vertices = np.array(vertices, dtype=float)
    except ValueError as exc:
        raise util_mod.MalformedSimplexError(
            'Vertices do not form a rectangular array: {}'.format(exc))
    util_mod.validate_vertices(vertices)
    vertices.flags.writeable = False
    return Simplex(vertices)


def vertex_matrix(simplex):
    """Vertex matrix A: the vertices with a trailing 1 appended to each row.

    Parameters
    ----------
    simplex : Simplex

    Returns
    -------
    matrix : VertexMatrix
        ``entries`` has shape (n+1, n+1) and its last column is all ones

    """
    vertices = np.asarray(simplex.vertices, dtype=float)
    util_mod.validate_vertices(vertices)
    entries = np.hstack([vertices, np.ones((vertices.shape[0], 1))])
    entries.flags.writeable = False
    return VertexMatrix(entries)


def _lu_determinant(lu, piv):
    # log|det| and sign from the LU factors of scipy.linalg.lu_factor
    diag = np.diag(lu)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    sign = (-1.0) ** swaps * np.prod(np.sign(diag))
    with np.errstate(divide='ignore'):
        log_abs = np.sum(np.log(np.abs(diag)))
    return sign, log_abs


def lagrange_basis(simplex):
    """Coefficients of the basic Lagrange polynomials, i.e. A^{-1}.

    The inverse comes from a partially pivoted LU factorization of A; the
    same factors give the determinant used by the degeneracy guard.

    Parameters
    ----------
    simplex : Simplex

    Returns
    -------
    basis : LagrangeBasis
        ``coeffs[:, j]`` holds the coefficients of lambda_j

    Raises
    ------
    DegenerateSimplexError
        If |det A| is below the scale-aware threshold.

    """
    entries = vertex_matrix(simplex).entries
    log_threshold = util_mod.degeneracy_threshold(simplex.vertices)
    with warnings.catch_warnings():
        # exactly singular input is reported below, not by scipy
        warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(entries)
    sign, log_abs = _lu_determinant(lu, piv)
    with np.errstate(over='ignore'):
        determinant = float(sign * np.exp(log_abs))
    if not log_abs >= log_threshold:
        raise util_mod.DegenerateSimplexError(determinant,
                                              float(np.exp(log_threshold)))
    coeffs = scipy.linalg.lu_solve((lu, piv), np.eye(entries.shape[0]))
    coeffs.flags.writeable = False
    return LagrangeBasis(coeffs, determinant)


def barycentric(basis, x):
    """Barycentric coordinates (lambda_1(x), ..., lambda_{n+1}(x)).

    Parameters
    ----------
    basis : LagrangeBasis
    x : array_like, shape=(n,)

    Returns
    -------
    coords : np.ndarray, shape=(n+1,)
        Components sum to 1

    """
    x = util_mod.as_point(x)
    util_mod.validate_dimension(x, basis.coeffs.shape[0] - 1)
    return np.append(x, 1.0) @ basis.coeffs


def barycentric_many(basis, points):
    """Barycentric coordinates of every row of ``points``.

    Parameters
    ----------
    basis : LagrangeBasis
    points : np.ndarray, shape=(m, n)

    Returns
    -------
    coords : np.ndarray, shape=(m, n+1)

    """
    n = basis.coeffs.shape[0] - 1
    points = np.asarray(points, dtype=float).reshape(-1, n)
    return points @ basis.coeffs[:n] + basis.coeffs[n]


def centroid(simplex):
    """Center of gravity of the simplex (mean of its vertices)."""
    point = np.mean(simplex.vertices, axis=0)
    point.flags.writeable = False
    return point


def circumscribed_ball_regular(n):
    """Ball circumscribed about the regular simplex built for dimension n.

    For n >= 2 the simplex has vertices e_1, ..., e_n and
    ((1 - sqrt(n+1))/n, ...); its center has all coordinates
    (1 - sqrt(1/(n+1)))/n and its radius is sqrt(n/(n+1)). For n = 1 the
    simplex is the segment [0, 1].

    Parameters
    ----------
    n : int >= 1

    Returns
    -------
    ball : Ball

    """
    n = util_mod.validate_integer(n, 1)
    if n == 1:
        return make_ball([0.5], 0.5)
    center = np.full(n, (1.0 - np.sqrt(1.0 / (n + 1))) / n)
    return make_ball(center, np.sqrt(n / (n + 1.0)))


def centered_ball(simplex):
    """Smallest ball centered at the centroid that contains the simplex.

    For a regular simplex this is the circumscribed ball.
    """
    center = centroid(simplex)
    radius = np.max(np.linalg.norm(simplex.vertices - center, axis=1))
    return make_ball(center, radius)


def regularity_defect(simplex):
    """Largest deviation of a pairwise vertex distance from their mean.

    Zero exactly for regular simplices.
    """
    distances = pdist(simplex.vertices)
    return float(np.max(np.abs(distances - distances.mean())))
