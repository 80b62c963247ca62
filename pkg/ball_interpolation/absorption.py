'''
Absorption index of a simplex with respect to a ball, and its relation to the
projector norm.

xi(B; S) is the least sigma >= 1 such that B lies in sigma S, the homothetic
copy of S about its centroid. A point x lies in sigma S exactly when
lambda_j(x) >= -(sigma - 1)/(n+1) for every j, and the minimum of the linear
lambda_j over B(x0; R) is lambda_j(x0) - R ||g_j|| with
g_j = (l_1j, ..., l_nj). Hence

    xi(B; S) = max(1, max_j [1 + (n+1) (R ||g_j|| - lambda_j(x0))]).
'''

import collections
import math
import warnings

import numpy as np

from . import util_mod
from . import geometry


# Report, but warn about, absorption indices beyond this size
HUGE_XI = 1e8
SANDWICH_TOLERANCE = 1e-9


AbsorptionResult = collections.namedtuple(
    'AbsorptionResult', ['xi', 'binding_face', 'face_margins'])
AbsorptionResult.__doc__ = '''Absorption index of a simplex for a ball.

xi : float >= 1
binding_face : int
    Index j whose face constraint fixes xi
face_margins : np.ndarray, shape=(n+1,)
    Minimum of lambda_j over the ball, per j; all >= 0 iff the ball lies in S
'''


def face_margins(basis, ball):
    """Minimum over the ball of every barycentric coordinate."""
    gradients = basis.coeffs[:ball.n]
    center_values = geometry.barycentric(basis, ball.center)
    return center_values - ball.radius * np.linalg.norm(gradients, axis=0)


def absorption_index_ball(simplex, ball):
    """Absorption index xi(B; S).

    The ball need not contain the simplex; very flat simplices give a huge
    index, which is reported as is.

    Parameters
    ----------
    simplex : Simplex
    ball : Ball

    Returns
    -------
    result : AbsorptionResult

    """
    if ball.n != simplex.n:
        raise util_mod.BallInterpolationError(
            'Ball lives in R^{} but the simplex in R^{}'.format(ball.n,
                                                                simplex.n))
    basis = geometry.lagrange_basis(simplex)
    margins = face_margins(basis, ball)
    margins.flags.writeable = False
    binding_face = int(np.argmin(margins))
    xi = max(1.0, 1.0 - (simplex.n + 1) * float(margins[binding_face]))
    if xi > HUGE_XI:
        warnings.warn('Absorption index {:.3e} for a nearly flat '
                      'simplex'.format(xi))
    return AbsorptionResult(xi, binding_face, margins)


def sandwich_bounds(norm, n):
    """Lower and upper bounds on xi implied by the projector norm.

    Returns
    -------
    lower : float
        (n+1)/(2n) (norm - 1) + 1
    upper : float
        (n+1)/2 (norm - 1) + 1

    """
    return ((n + 1) / (2 * n) * (norm - 1) + 1, (n + 1) / 2 * (norm - 1) + 1)


def sandwich_check(norm, xi, n):
    """Whether (n+1)/(2n) (||P|| - 1) + 1 <= xi <= (n+1)/2 (||P|| - 1) + 1 holds
    within SANDWICH_TOLERANCE."""
    n = util_mod.validate_integer(n, 1)
    lower, upper = sandwich_bounds(norm, n)
    return bool(lower - SANDWICH_TOLERANCE <= xi <= upper + SANDWICH_TOLERANCE)


def theta_lower_bound(n):
    """3 - 4/(n+1), below which no projector for nodes in B_n can go."""
    n = util_mod.validate_integer(n, 1)
    return 3.0 - 4.0 / (n + 1)


def theta_upper_bound(n):
    """sqrt(n+1), the norm bound given by the inscribed regular simplex."""
    n = util_mod.validate_integer(n, 1)
    return math.sqrt(n + 1)
