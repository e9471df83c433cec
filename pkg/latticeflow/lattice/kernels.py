""" Function space settings and their shift-invariant kernels """
from math import factorial

import numpy as np

from .special import bernoulli_poly, hurwitz_zeta, rho
from ..exceptions import ValidationError


SERIES_TAIL = 1e-12


class SpaceSetting:
    """ One of the three function space settings

    - 'a': weighted Sobolev space of first order, randomly shifted lattice rules (r.m.s. error);
    - 'b': weighted Korobov space of smoothness α, a Hilbert space;
    - 'c': weighted non-Hilbert Korobov space of smoothness α >= 2.

    Parameters
    ----------
    label : {'a', 'b', 'c'}
    alpha : int
        smoothness; ignored for 'a'
    """
    LABELS = ('a', 'b', 'c')
    NAMES = {'a': 'sobolev-shifted', 'b': 'korobov-hilbert', 'c': 'korobov-non-hilbert'}

    def __init__(self, label, alpha=1):
        label = str(label).lower()
        if label not in self.LABELS:
            raise ValidationError(f"setting must be one of {self.LABELS}, got {label!r}")
        if not isinstance(alpha, (int, np.integer)) or alpha < 1:
            raise ValidationError(f'smoothness α must be a positive integer, got {alpha!r}')
        if label == 'a':
            alpha = 1
        if label == 'c' and alpha < 2:
            raise ValidationError(f'non-Hilbert Korobov setting requires α >= 2, got {alpha}')
        self.label = label
        self.alpha = int(alpha)

    @classmethod
    def sobolev(cls):
        """ Setting a """
        return cls('a')

    @classmethod
    def korobov(cls, alpha=1):
        """ Setting b """
        return cls('b', alpha)

    @classmethod
    def non_hilbert(cls, alpha=2):
        """ Setting c """
        return cls('c', alpha)

    @property
    def name(self):
        return self.NAMES[self.label]

    @property
    def periodic(self):
        """ Whether the space consists of periodic functions """
        return self.label != 'a'

    @property
    def criterion_is_squared(self):
        """ Settings a and b compute e^2, setting c the first power of e """
        return self.label != 'c'

    def lambda_interval(self):
        """ Open lower and closed upper end of the admissible λ range """
        if self.label == 'a':
            return 0.5, 1.0
        if self.label == 'b':
            return 1 / (2 * self.alpha), 1.0
        return 1 / self.alpha, 1.0

    def check_lambda(self, lam):
        low, high = self.lambda_interval()
        if not low < lam <= high:
            raise ValidationError(f'λ = {lam} is outside the admissible interval ({low}, {high}] of setting {self.label}')

    def zeta_argument(self, lam):
        """ Argument of the zeta function inside the bound factor """
        if self.label == 'a':
            return 2 * lam
        if self.label == 'b':
            return 2 * self.alpha * lam
        return self.alpha * lam

    def bound_factor(self, lam):
        """ Per-dimension factor of the worst-case error bound:
        ρ_1(λ) 2^λ for a, ρ_α(λ) for b, ρ_α(λ/2) for c """
        if self.label == 'a':
            return rho(1, lam) * 2 ** lam
        if self.label == 'b':
            return rho(self.alpha, lam)
        return rho(self.alpha, lam / 2)

    def bound_exponent(self, lam):
        """ Exponent applied to 2/N times the weighted sum """
        return 1 / (2 * lam) if self.criterion_is_squared else 1 / lam

    def kernel(self, x):
        """ Shorthand for :func:`kernel_omega` """
        return kernel_omega(self, x)

    def __eq__(self, other):
        if not isinstance(other, SpaceSetting):
            return NotImplemented
        return (self.label, self.alpha) == (other.label, other.alpha)

    def __hash__(self):
        return hash((self.label, self.alpha))

    def __repr__(self):
        return f"SpaceSetting('{self.label}', alpha={self.alpha})"


def series_cutoff(alpha, tail=SERIES_TAIL):
    """ Smallest H with 2 sum_{h>H} (2 pi h)^(-α) < tail, via the integral bound """
    if alpha < 2:
        raise ValidationError(f'the cosine series converges absolutely for α >= 2 only, got {alpha}')
    scale = 2 / (2 * np.pi) ** alpha / (alpha - 1) / tail
    return int(np.ceil(scale ** (1 / (alpha - 1))))


def cosine_series(alpha, x, chunk=2048):
    """ 2 sum_{h=1}^{H} cos(2 pi h x) / (2 pi h)^α truncated with a tail below 1e-12 """
    x = np.asarray(x, dtype=np.float64)
    flat = x.ravel()
    result = np.zeros_like(flat)
    cutoff = series_cutoff(alpha)
    for start in range(1, cutoff + 1, chunk):
        h = np.arange(start, min(start + chunk, cutoff + 1), dtype=np.float64)
        coefficients = 2 / (2 * np.pi * h) ** alpha
        result += np.cos(2 * np.pi * np.outer(flat, h)) @ coefficients
    return result.reshape(x.shape)


def kernel_omega(setting, x):
    """ Shift-invariant kernel ω of a setting

    - a: B_2(x), every frequency h != 0 weighted by 2 (2π|h|)^(-2);
    - b: (-1)^(α+1) B_2α(x) / (2α)!, frequencies weighted by (2π|h|)^(-2α);
    - c: (2π|h|)^(-α) weights, that is (-1)^(α/2+1) B_α(x) / α! for even α
      and a truncated cosine series for odd α.

    Parameters
    ----------
    setting : SpaceSetting
    x : float or array-like
        points in [0, 1)
    """
    x = np.asarray(x, dtype=np.float64)
    alpha = setting.alpha
    if setting.label == 'a':
        value = bernoulli_poly(2, x)
    elif setting.label == 'b':
        value = (-1) ** (alpha + 1) * np.asarray(bernoulli_poly(2 * alpha, x)) / factorial(2 * alpha)
    elif alpha % 2 == 0:
        value = (-1) ** (alpha // 2 + 1) * np.asarray(bernoulli_poly(alpha, x)) / factorial(alpha)
    else:
        value = cosine_series(alpha, x)
    value = np.asarray(value, dtype=np.float64)
    return value.item() if value.ndim == 0 else value


def kernel_table(setting, n):
    """ Kernel values ω(j/n) for j = 0, ..., n-1

    For odd α in setting c the frequencies are folded modulo n,
    sum_{h = r mod n} h^(-α) = n^(-α) ζ(α, r/n), and summed with one FFT.
    """
    if n < 1:
        raise ValidationError(f'table size must be positive, got {n}')
    if setting.label == 'c' and setting.alpha % 2 == 1:
        alpha = setting.alpha
        r = np.arange(n, dtype=np.float64)
        r[0] = n
        folded = hurwitz_zeta(alpha, r / n) / float(n) ** alpha
        table = 2 / (2 * np.pi) ** alpha * np.fft.fft(folded).real
    else:
        table = np.asarray(kernel_omega(setting, np.arange(n) / n), dtype=np.float64).reshape(n)
    table.flags.writeable = False
    return table
