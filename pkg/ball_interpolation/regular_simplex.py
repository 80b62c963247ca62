'''
Closed forms for the regular simplex inscribed into a ball.

For the regular simplex the projector norm only depends on the dimension n.
With k sign entries equal to -1 it reduces to psi(k), where

    psi(t) = 2 sqrt(n)/(n+1) * sqrt(t (n+1-t)) + |1 - 2t/(n+1)|,  0 <= t <= n+1,

and the norm is max(psi(a), psi(a+1)) with a = floor(t_-),
t_-+ = (n+1)/2 -+ sqrt(n+1)/2. The norm reaches sqrt(n+1) exactly when
sqrt(n+1) is an integer; d_n = sqrt(n+1) - norm measures the gap.
'''

import collections
import math

import numpy as np
import pandas as pd

from . import util_mod
from . import geometry


# First spline node pair is (m^2 - 2, m^2) with m = SPLINE_FIRST_M, i.e. n = 23
SPLINE_FIRST_M = 5


RegularReport = collections.namedtuple(
    'RegularReport',
    ['n', 't_minus', 't_plus', 'a', 'psi_a', 'psi_a_plus_1', 'norm', 'k_star',
     'd_n'])

# columns of the regular-table CSV, in order
REPORT_COLUMNS = ['n', 't_minus', 'a', 'psi_a', 'psi_a1', 'norm', 'k_star',
                  'd_n']


class SplineBound(collections.namedtuple('SplineBound',
                                         ['nodes', 'n_from', 'n_to'])):
    """Piecewise-linear l(n) through (m^2-2, d_{m^2-2}) and (m^2, d_{m^2}).

    ``nodes`` is an array of shape (k, 2) sorted by n.
    """
    __slots__ = ()

    def evaluate(self, n):
        n = np.asarray(n, dtype=float)
        lowest, highest = self.nodes[0, 0], self.nodes[-1, 0]
        if np.any(n < lowest) or np.any(n > highest):
            raise util_mod.SplineRangeError(
                'Spline nodes cover [{:g}, {:g}] only'.format(lowest, highest))
        return np.interp(n, self.nodes[:, 0], self.nodes[:, 1])


def regular_simplex(n):
    """Regular simplex with vertices e_1, ..., e_n and
    ((1 - sqrt(n+1))/n, ..., (1 - sqrt(n+1))/n); every edge has length sqrt(2).

    Parameters
    ----------
    n : int >= 2
        Dimension (the segment [0, 1] covers n = 1)

    Returns
    -------
    simplex : Simplex

    """
    n = util_mod.validate_integer(n, 2)
    last = np.full((1, n), (1.0 - math.sqrt(n + 1)) / n)
    return geometry.make_simplex(np.vstack([np.eye(n), last]))


def sigma_tau(n):
    """sigma = ((n-1) sqrt(n+1) + 1)/n and tau = (sqrt(n+1) - 1)/n."""
    n = util_mod.validate_integer(n, 2)
    root = math.sqrt(n + 1)
    return ((n - 1) * root + 1) / n, (root - 1) / n


def regular_lagrange_coeffs(n):
    """A^{-1} of :func:`regular_simplex` assembled from sigma and tau.

    Returns
    -------
    coeffs : np.ndarray, shape=(n+1, n+1)

    """
    sigma, tau = sigma_tau(n)
    coeffs = np.full((n + 1, n + 1), -tau)
    np.fill_diagonal(coeffs[:n, :n], sigma)
    coeffs[:n, n] = -1.0
    coeffs[n, :n] = tau
    coeffs[n, n] = 1.0
    return coeffs / math.sqrt(n + 1)


def psi(n, t):
    """psi(t) for dimension n; ``t`` may be a scalar or an array.

    Raises
    ------
    DomainError
        If some t lies outside [0, n+1].

    """
    n = util_mod.validate_integer(n, 1)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > n + 1) or not np.all(np.isfinite(t)):
        raise util_mod.DomainError('psi is defined on [0, {}] only'.format(n + 1))
    product = np.maximum(t * (n + 1 - t), 0.0)
    value = (2 * math.sqrt(n) / (n + 1) * np.sqrt(product)
             + np.abs(1 - 2 * t / (n + 1)))
    return float(value) if value.ndim == 0 else value


def floor_t_minus(n):
    """a = floor(t_-) decided in integer arithmetic.

    a <= t_- exactly when n+1-2a >= 0 and (n+1-2a)^2 >= n+1.
    """
    n = util_mod.validate_integer(n, 1)

    def below(a):
        gap = n + 1 - 2 * a
        return gap >= 0 and gap * gap >= n + 1

    a = int(math.floor((n + 1 - math.sqrt(n + 1)) / 2))
    while not below(a):
        a -= 1
    while below(a + 1):
        a += 1
    return a


def critical_points(n):
    """The two zeros t_- < t_+ of psi' and a = floor(t_-).

    Returns
    -------
    t_minus : float
    t_plus : float
    a : int

    """
    n = util_mod.validate_integer(n, 1)
    if is_sqrt_integer_dimension(n):
        m = math.isqrt(n + 1)
        t_minus, t_plus = m * (m - 1) / 2, m * (m + 1) / 2
    else:
        half_root = math.sqrt(n + 1) / 2
        t_minus, t_plus = (n + 1) / 2 - half_root, (n + 1) / 2 + half_root
    return t_minus, t_plus, floor_t_minus(n)


def is_sqrt_integer_dimension(n):
    """True when n = m^2 - 1 for an integer m >= 2."""
    n = util_mod.validate_integer(n, 1)
    m = math.isqrt(n + 1)
    return m >= 2 and m * m == n + 1


def regular_norm(n):
    """Projector norm of the regular simplex inscribed into a ball.

    Parameters
    ----------
    n : int >= 1

    Returns
    -------
    report : RegularReport
        One row of the regular-simplex table

    """
    n = util_mod.validate_integer(n, 1)
    t_minus, t_plus, a = critical_points(n)
    psi_a, psi_a1 = psi(n, a), psi(n, a + 1)
    root = math.sqrt(n + 1)
    if n == 1:
        # the segment: norm 1, both sign patterns with one -1 attain it
        return RegularReport(n, t_minus, t_plus, a, psi_a, psi_a1, 1.0, 1,
                             root - 1.0)
    if is_sqrt_integer_dimension(n):
        # t_- = a is an integer and psi(t_-) = sqrt(n+1) = m exactly
        psi_a = float(math.isqrt(n + 1))
    norm = max(psi_a, psi_a1)
    k_star = a if psi_a >= psi_a1 else a + 1
    return RegularReport(n, t_minus, t_plus, a, psi_a, psi_a1, norm, k_star,
                         root - norm)


def regular_table(n_list):
    """:func:`regular_norm` for every n of ``n_list``, in order."""
    return [regular_norm(n) for n in n_list]


def report_rows(reports):
    """Reports as a DataFrame with the regular-table columns."""
    rows = [[r.n, r.t_minus, r.a, r.psi_a, r.psi_a_plus_1, r.norm, r.k_star,
             r.d_n] for r in reports]
    frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
    return frame.astype({'n': int, 'a': int, 'k_star': int})


def spline_bound(n_from, n_to):
    """Linear interpolation spline l through the nodes n = m^2 - 2 and n = m^2
    with values d_n, covering [n_from, n_to].

    Raises
    ------
    SplineRangeError
        If n_from < 23 or n_from > n_to.

    """
    n_from = util_mod.validate_integer(n_from, 1, name='n_from')
    n_to = util_mod.validate_integer(n_to, 1, name='n_to')
    first_node = SPLINE_FIRST_M ** 2 - 2
    if n_from < first_node or n_from > n_to:
        raise util_mod.SplineRangeError(
            'Spline covers {} <= n_from <= n_to only, got [{}, {}]'.format(
                first_node, n_from, n_to))
    last_m = max(SPLINE_FIRST_M, math.isqrt(n_to - 1) + 1)
    nodes = []
    for m in range(SPLINE_FIRST_M, last_m + 1):
        for node in (m * m - 2, m * m):
            nodes.append((node, regular_norm(node).d_n))
    return SplineBound(np.array(nodes, dtype=float), n_from, n_to)


def regular_two_sided_bounds(n, spline):
    """sqrt(n+1) - l(n) <= ||P|| <= sqrt(n+1) for the inscribed regular simplex.

    Returns
    -------
    lower : float
    upper : float

    """
    root = math.sqrt(n + 1)
    return root - float(spline.evaluate(n)), root


def psi_curve(n, samples):
    """psi on a uniform grid over [0, n+1] followed by marker rows.

    Parameters
    ----------
    n : int >= 1
    samples : int >= 2
        Grid size, endpoints included

    Returns
    -------
    curve : pd.DataFrame
        Columns ``t``, ``psi``, ``marker``; grid rows have an empty marker,
        then come rows for t_minus, t_plus, a and a+1.

    """
    n = util_mod.validate_integer(n, 1)
    samples = util_mod.validate_integer(samples, 2, name='samples')
    grid = np.linspace(0.0, n + 1, samples)
    curve = pd.DataFrame({'t': grid, 'psi': psi(n, grid), 'marker': ''})
    t_minus, t_plus, a = critical_points(n)
    markers = pd.DataFrame(
        [(t, psi(n, t), name) for name, t in
         (('t_minus', t_minus), ('t_plus', t_plus), ('a', float(a)),
          ('a+1', float(a + 1)))],
        columns=['t', 'psi', 'marker'])
    return pd.concat([curve, markers], ignore_index=True)


def dn_series(n_from, n_to, with_spline=False):
    """d_n = sqrt(n+1) - ||P|| for n_from <= n <= n_to, optionally with l(n).

    Returns
    -------
    series : pd.DataFrame
        Columns ``n``, ``d_n`` and, with the spline, ``l_n``

    """
    n_from = util_mod.validate_integer(n_from, 1, name='n_from')
    n_to = util_mod.validate_integer(n_to, 1, name='n_to')
    if n_from > n_to:
        raise util_mod.DomainError('n_from must not exceed n_to')
    ns = np.arange(n_from, n_to + 1)
    series = pd.DataFrame({'n': ns,
                           'd_n': [regular_norm(int(n)).d_n for n in ns]})
    if with_spline:
        spline = spline_bound(n_from, n_to)
        series['l_n'] = spline.evaluate(ns)
    return series
