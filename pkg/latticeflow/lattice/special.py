""" Special functions and combinatorial numbers used by kernels, weights and activation bounds """
from functools import lru_cache
from math import factorial

import numpy as np
from scipy import special

from .._const import BERNOULLI_MAX_ORDER, STIRLING_MAX, EULERIAN_MAX, EXACT_FACTORIAL_ORDER, MAX_FACTORIAL_ORDER
from ..exceptions import ValidationError, OverflowGuardError


@lru_cache(maxsize=None)
def _bernoulli_coefficients(n):
    """ Coefficients of B_n(x) in increasing powers of x """
    numbers = special.bernoulli(n)
    coefficients = np.zeros(n + 1)
    for k in range(n + 1):
        # B_n(x) = sum_k C(n, k) B_k x^(n-k)
        coefficients[n - k] = special.comb(n, k, exact=True) * numbers[k]
    coefficients.flags.writeable = False
    return coefficients


def bernoulli_poly(n, x):
    """ Bernoulli polynomial B_n(x)

    Parameters
    ----------
    n : int
        order, 0 <= n <= 12
    x : float or array-like
        points in [0, 1]

    Returns
    -------
    float or np.ndarray
    """
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= BERNOULLI_MAX_ORDER:
        raise ValidationError(f'Bernoulli polynomial order must be in [0, {BERNOULLI_MAX_ORDER}], got {n}')
    x = np.asarray(x, dtype=np.float64)
    value = np.polynomial.polynomial.polyval(x, _bernoulli_coefficients(int(n)))
    return value.item() if value.ndim == 0 else value


def riemann_zeta(x):
    """ Riemann zeta function for real x > 1 """
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= 1):
        raise ValidationError(f'Riemann zeta is evaluated for x > 1 only, got {x}')
    value = special.zeta(x, 1)
    return value.item() if value.ndim == 0 else value


def hurwitz_zeta(x, q):
    """ Hurwitz zeta function sum_{i>=0} (i + q)^(-x) for x > 1, q > 0 """
    if np.any(np.asarray(x) <= 1):
        raise ValidationError(f'Hurwitz zeta is evaluated for x > 1 only, got {x}')
    return special.zeta(x, q)


def rho(alpha, lam):
    """ 2 zeta(2 alpha lambda) / (2 pi)^(2 alpha lambda) """
    power = 2 * alpha * lam
    return 2 * riemann_zeta(power) / (2 * np.pi) ** power


@lru_cache(maxsize=None)
def stirling2(n, k):
    """ Stirling number of the second kind S(n, k) as an exact integer

    S(n, k) = k S(n-1, k) + S(n-1, k-1), S(n, 0) = [n == 0], S(n, k) = 0 for k > n.
    """
    for value in (n, k):
        if not isinstance(value, (int, np.integer)) or not 0 <= value <= STIRLING_MAX:
            raise ValidationError(f'Stirling arguments must be in [0, {STIRLING_MAX}], got ({n}, {k})')
    n, k = int(n), int(k)
    if k > n:
        return 0
    if k == 0:
        return int(n == 0)
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def eulerian(n, k):
    """ Eulerian number E(n, k): permutations of n elements with k ascents

    E(n, k) = (k+1) E(n-1, k) + (n-k) E(n-1, k-1), E(0, 0) = 1.
    """
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= EULERIAN_MAX:
        raise ValidationError(f'Eulerian numbers are supported for 0 <= n <= {EULERIAN_MAX}, got n={n}')
    n, k = int(n), int(k)
    if n == 0:
        return int(k == 0)
    if k < 0 or k >= n:
        return 0
    return (k + 1) * eulerian(n - 1, k) + (n - k) * eulerian(n - 1, k - 1)


def log_factorial(n):
    """ log(n!) for integer n >= 0, array-friendly """
    n = np.asarray(n, dtype=np.float64)
    return special.gammaln(n + 1)


def factorial_float(n):
    """ n! as float64; exact integer staging up to order 20, log-gamma above """
    if n < 0:
        raise ValidationError(f'factorial of a negative number {n}')
    if n > MAX_FACTORIAL_ORDER:
        raise OverflowGuardError(n, f'factorial of order {n} overflows float64, '
                                    f'the maximal supported order is {MAX_FACTORIAL_ORDER}')
    if n <= EXACT_FACTORIAL_ORDER:
        return float(factorial(int(n)))
    return float(np.exp(log_factorial(n)))
