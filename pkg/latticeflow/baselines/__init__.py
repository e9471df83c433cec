""" Lattice-based approximation baselines """
from .fft import fft_pow2, ifft_pow2, dft_naive
from .trig import IndexSet, trig_coefficients, trig_evaluate
from .kernel import KernelSpec, kernel_first_row, kernel_eigenvalues, kernel_matrix_apply, kernel_fit, \
                    kernel_predict
