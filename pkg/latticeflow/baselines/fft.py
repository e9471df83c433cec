""" FFT of power-of-2 length sequences """
import numpy as np

from ..exceptions import ValidationError
from ..utils import is_power_of_two


def _check_length(values):
    values = np.asarray(values, dtype=np.complex128).ravel()
    if not is_power_of_two(values.size):
        raise ValidationError(f'FFT length must be a power of 2, got {values.size}')
    return values


def fft_pow2(values):
    """ Forward DFT X_q = sum_r x_r e^(-2πi r q / n) of a power-of-2 length sequence """
    return np.fft.fft(_check_length(values))


def ifft_pow2(values):
    """ Inverse of :func:`fft_pow2` """
    return np.fft.ifft(_check_length(values))


def dft_naive(values):
    """ O(n^2) DFT by the defining sum """
    values = np.asarray(values, dtype=np.complex128).ravel()
    n = values.size
    index = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(index, index) / n) @ values
