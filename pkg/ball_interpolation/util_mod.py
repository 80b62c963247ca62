'''
This submodule collects functionality required across the task submodules:
the exception hierarchy, the tolerances shared by the algorithms, and the
validation helpers every public operation runs before computing.
'''

import numpy as np


# Reject simplices with |det A| < DEGENERACY_FACTOR * (max |coordinate| + 1)**n
DEGENERACY_FACTOR = 1e-12
# Largest n+1 for which sign vectors are enumerated exactly
ENUMERATION_CAP = 26
# Sign vectors within this (relative) gap of the maximum count as maximizers
TIE_TOLERANCE = 1e-12
# A barycentric coordinate below -SIGN_TOLERANCE is negative
SIGN_TOLERANCE = 1e-10
# Relative centroid offset accepted by the centered norm formula
CENTER_TOLERANCE = 1e-9


class BallInterpolationError(ValueError):
    """Base class of every error raised by this package."""


class MalformedSimplexError(BallInterpolationError):
    """Vertex list does not describe n+1 points in R^n."""


class DegenerateSimplexError(BallInterpolationError):
    """The vertex matrix is (numerically) singular.

    Attributes
    ----------
    determinant : float
        The determinant of the vertex matrix.
    """

    def __init__(self, determinant, threshold):
        self.determinant = determinant
        self.threshold = threshold
        super().__init__('Degenerate simplex: |det A| = {:.3e} is below the '
                         'threshold {:.3e}'.format(abs(determinant), threshold))


class EnumerationCapError(BallInterpolationError):
    """Too many sign vectors for the exact norm."""


class PreconditionError(BallInterpolationError):
    """An operation was called outside its precondition.

    Attributes
    ----------
    offset : float or None
        The measured violation, when there is one (e.g. the centroid offset).
    """

    def __init__(self, message, offset=None):
        self.offset = offset
        super().__init__(message)


class DomainError(BallInterpolationError):
    """Argument outside the domain of a closed-form function."""


class SplineRangeError(BallInterpolationError):
    """Requested range is not covered by the spline nodes."""


class ConfigError(BallInterpolationError):
    """Invalid search or output configuration."""


class SearchError(BallInterpolationError):
    """The minimal-projector search could not produce a result."""


def as_point(coords, name='point'):
    """Convert ``coords`` to a read-only 1-d float array.

    Parameters
    ----------
    coords : array_like, shape=(n,)
        Point coordinates
    name : str
        Used in error messages
        (Default value = 'point')

    Returns
    -------
    point : np.ndarray, shape=(n,)
        Read-only copy of the coordinates

    """
    point = np.array(coords, dtype=float)
    if point.ndim == 0:
        point = point.reshape(1)
    if point.ndim != 1 or point.size == 0:
        raise BallInterpolationError('{} should be a non-empty 1-d array, '
                                     'but shape={}'.format(name, point.shape))
    if not np.all(np.isfinite(point)):
        raise BallInterpolationError('{} has non-finite entries: '
                                     '{}'.format(name, point))
    point.flags.writeable = False
    return point


def validate_vertices(vertices):
    """Checks that an array of vertices looks like n+1 points in R^n, and
    raises errors if not.

    Parameters
    ----------
    vertices : np.ndarray, shape=(n+1, n)
        Vertex coordinates, one vertex per row

    """
    if vertices.ndim != 2:
        raise MalformedSimplexError('Vertices should be a 2-d array, '
                                    'but shape={}'.format(vertices.shape))
    n_vertices, dim = vertices.shape
    if dim < 1:
        raise MalformedSimplexError('Vertices must have at least one '
                                    'coordinate')
    if n_vertices != dim + 1:
        raise MalformedSimplexError('A simplex in R^{} needs {} vertices, '
                                    'got {}'.format(dim, dim + 1, n_vertices))
    if not np.all(np.isfinite(vertices)):
        raise MalformedSimplexError('Vertices have non-finite entries')


def validate_radius(radius):
    """Checks that a ball radius is a finite positive number."""
    if not np.isfinite(radius) or radius <= 0:
        raise BallInterpolationError('Ball radius must be positive and '
                                     'finite, got {}'.format(radius))


def validate_dimension(point, n, name='point'):
    """Checks that ``point`` lives in R^n."""
    if point.shape != (n,):
        raise BallInterpolationError('{} has dimension {}, expected '
                                     '{}'.format(name, point.shape[0], n))


def validate_integer(value, minimum, name='n'):
    """Checks that ``value`` is an integer not smaller than ``minimum``.

    Returns
    -------
    value : int

    """
    if isinstance(value, bool) or int(value) != value:
        raise DomainError('{} must be an integer, got {!r}'.format(name, value))
    value = int(value)
    if value < minimum:
        raise DomainError('{} must be >= {}, got {}'.format(name, minimum,
                                                            value))
    return value


def degeneracy_threshold(vertices):
    """Scale-aware bound below which |det A| is treated as zero.

    Parameters
    ----------
    vertices : np.ndarray, shape=(n+1, n)

    Returns
    -------
    log_threshold : float
        Natural logarithm of DEGENERACY_FACTOR * (max |coordinate| + 1)**n

    """
    n = vertices.shape[1]
    scale = np.max(np.abs(vertices)) + 1.0
    return np.log(DEGENERACY_FACTOR) + n * np.log(scale)
