""" Lattice-based kernel interpolation with shift-invariant product kernels """
from dataclasses import dataclass

import numpy as np

from .fft import fft_pow2, ifft_pow2
from ..lattice.core import lattice_points
from ..lattice.kernels import SpaceSetting, kernel_omega, kernel_table
from ..exceptions import ValidationError, SingularKernelError
from ..utils import as_points, is_power_of_two


EIGENVALUE_TOLERANCE = 1e-14
CHUNK_ENTRIES = 2 ** 22


@dataclass(frozen=True)
class KernelSpec:
    """ K(y, y') = prod_j (1 + γ_j ω_α({y_j - y'_j})) with the Korobov kernel ω_α """
    alpha: int
    gammas: tuple

    def __post_init__(self):
        if self.alpha < 1:
            raise ValidationError(f'smoothness must be at least 1, got {self.alpha}')
        gammas = tuple(float(g) for g in np.ravel(self.gammas))
        if any(g <= 0 for g in gammas):
            raise ValidationError('kernel weights must be positive')
        object.__setattr__(self, 'gammas', gammas)

    @property
    def setting(self):
        return SpaceSetting.korobov(self.alpha)

    def __call__(self, x, y):
        """ K(x, y) for batches x (n, s) and y (m, s) as an array (n, m) """
        x, y = as_points(x), as_points(y)
        if x.shape[1] != y.shape[1] or x.shape[1] > len(self.gammas):
            raise ValidationError(f'points of dimensions {x.shape[1]} and {y.shape[1]} '
                                  f'for a kernel with {len(self.gammas)} weights')
        values = np.ones((x.shape[0], y.shape[0]))
        for j in range(x.shape[1]):
            difference = x[:, j:j + 1] - y[None, :, j]
            values *= 1 + self.gammas[j] * np.asarray(kernel_omega(self.setting, difference - np.floor(difference)))
        return values


def kernel_first_row(gv, spec):
    """ c_r = K(t_r, 0) for r = 0..N-1, the first column of the circulant kernel matrix """
    if len(spec.gammas) < gv.dim:
        raise ValidationError(f'{len(spec.gammas)} kernel weights for a lattice of dimension {gv.dim}')
    table = kernel_table(spec.setting, gv.n)
    r = np.arange(gv.n, dtype=np.int64)[:, None]
    factors = 1 + np.asarray(spec.gammas[:gv.dim]) * table[(r * gv.z[None, :]) % gv.n]
    return np.prod(factors, axis=1)


def kernel_eigenvalues(gv, spec):
    """ Eigenvalues of the kernel matrix: the DFT of its first row """
    row = kernel_first_row(gv, spec)
    transform = fft_pow2(row) if is_power_of_two(gv.n) else np.fft.fft(row)
    return transform.real


def kernel_matrix_apply(coefficients, gv, spec):
    """ K a with K[k, k'] = K(t_k, t_k'), through the circulant structure """
    coefficients = np.asarray(coefficients, dtype=np.float64).ravel()
    product = np.fft.ifft(np.fft.fft(kernel_first_row(gv, spec)) * np.fft.fft(coefficients))
    return product.real


def kernel_fit(samples, gv, spec):
    """ Interpolation coefficients a solving sum_k' a_k' K(t_k, t_k') = F(t_k)

    The kernel matrix is circulant in k, so the system is diagonalized by one length-N FFT.

    Raises
    ------
    SingularKernelError
        if an eigenvalue vanishes
    """
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if samples.size != gv.n:
        raise ValidationError(f'{gv.n} samples expected, got {samples.size}')
    eigenvalues = kernel_eigenvalues(gv, spec)
    if np.min(np.abs(eigenvalues)) <= EIGENVALUE_TOLERANCE * np.max(np.abs(eigenvalues)):
        raise SingularKernelError('kernel matrix is singular; increase the kernel weights γ_j')
    if is_power_of_two(gv.n):
        return ifft_pow2(fft_pow2(samples) / eigenvalues).real
    return np.fft.ifft(np.fft.fft(samples) / eigenvalues).real


def kernel_predict(coefficients, gv, spec, y):
    """ sum_k a_k K(t_k, y) at a batch of points """
    y = as_points(y, gv.dim)
    nodes = lattice_points(gv)
    coefficients = np.asarray(coefficients, dtype=np.float64).ravel()
    chunk = max(1, CHUNK_ENTRIES // gv.n)
    values = np.empty(y.shape[0])
    for start in range(0, y.shape[0], chunk):
        values[start:start + chunk] = spec(y[start:start + chunk], nodes) @ coefficients
    return values
