""" Worst-case error criteria, their theoretical bounds and the component-by-component construction """
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np
from tqdm import tqdm

from .core import GeneratingVector
from .kernels import kernel_table
from .weights import order_recursion, order_ratios, recursion_step, check_overflow, weighted_sum
from .._const import TIE_TOLERANCE, LAMBDA_OFFSET, LAMBDA_GRID_SIZE
from ..exceptions import ValidationError, OverflowGuardError
from ..utils import is_power_of_two, log2_int


logger = logging.getLogger(__name__)

CHUNK_ENTRIES = 2 ** 22
LOG_FLOAT_MAX = np.log(np.finfo(np.float64).max)


def _kernel_multipliers(gv, setting):
    table = kernel_table(setting, gv.n)
    return table[gv.residues()]


def squared_wce(gv, weights, setting):
    """ Worst-case error criterion of a lattice rule

    For settings a and b this is the squared worst-case error
    e^2 = sum_{u nonempty} γ_u (1/N) sum_k prod_{j in u} ω(t_{k,j})
    (for setting a the root mean square over random shifts); for setting c the same
    expression is the worst-case error itself.

    Parameters
    ----------
    gv : GeneratingVector
    weights : WeightScheme
        defined for at least gv.dim dimensions
    setting : SpaceSetting

    Raises
    ------
    OverflowGuardError
        if a partial product of the order recursion exceeds 1e300
    """
    if weights.dim < gv.dim:
        raise ValidationError(f'weights are defined for {weights.dim} dimensions, the vector has {gv.dim}')
    if gv.dim == 0:
        return 0.0
    weights = weights.prefix(gv.dim)
    values = order_recursion(weights.log_orders, weights.factors, _kernel_multipliers(gv, setting))
    return float(values[:, 1:].sum(axis=1).mean())


def worst_case_error(gv, weights, setting):
    """ e_N: square root of :func:`squared_wce` for settings a, b, the criterion itself for c """
    value = squared_wce(gv, weights, setting)
    return np.sqrt(max(value, 0.0)) if setting.criterion_is_squared else value


def lambda_grid(setting, size=LAMBDA_GRID_SIZE):
    """ Log-spaced λ in the admissible interval, kept 1e-3 away from the open end """
    low, high = setting.lambda_interval()
    return np.geomspace(low + LAMBDA_OFFSET, high, size)


def theoretical_bound(n, weights, lam, setting, dim=None, exact=None):
    """ Right-hand side of the worst-case error bound of a CBC vector

    (2/N sum_{u nonempty} γ_u^λ F^|u|)^(1/(2λ)) for settings a and b, with the power 1/λ for c,
    where F is ρ_1(λ) 2^λ, ρ_α(λ) or ρ_α(λ/2) and ρ_α(λ) = 2ζ(2αλ)/(2π)^(2αλ).

    Parameters
    ----------
    n : int
        number of points
    weights : WeightScheme
    lam : float
        λ in the admissible interval of the setting
    setting : SpaceSetting
    dim : int, optional
        number of dimensions, all of the weights by default
    exact : bool, optional
        SPOD weights: enumerate subsets (default for s <= 12) or use the Jensen majorant

    Returns
    -------
    float
        the bound, or inf if it leaves the float64 range
    """
    setting.check_lambda(lam)
    if dim is not None:
        weights = weights.prefix(dim)
    total = weighted_sum(weights, setting.bound_factor(lam), lam, exact=exact)
    log_bound = setting.bound_exponent(lam) * (np.log(2 / n) + np.log(total))
    if log_bound > LOG_FLOAT_MAX:
        return np.inf
    return float(np.exp(log_bound))


@lru_cache(maxsize=16)
def _powers_of_five(n):
    """ 5^a mod n for a < n/4 and the discrete logarithm of every odd residue, up to sign """
    size = n // 4
    powers = np.empty(size, dtype=np.int64)
    powers[0] = 1
    for a in range(1, size):
        powers[a] = powers[a - 1] * 5 % n
    logs = np.zeros(n, dtype=np.int64)
    logs[powers] = np.arange(size)
    logs[n - powers] = np.arange(size)
    powers.flags.writeable = False
    logs.flags.writeable = False
    return powers, logs


def _candidate_sums_naive(table, values, candidates, n):
    """ sum_k ω((z k mod N) / N) Q_k for every candidate z """
    k = np.arange(1, n + 1, dtype=np.int64)
    sums = np.empty(candidates.size)
    chunk = max(1, CHUNK_ENTRIES // n)
    for start in range(0, candidates.size, chunk):
        block = candidates[start:start + chunk]
        sums[start:start + chunk] = table[(block[:, None] * k[None, :]) % n] @ values
    return sums


def _candidate_sums_fft(table, values, candidates, n):
    """ Same sums as :func:`_candidate_sums_naive` for N = 2^m, m >= 3

    Indices k = 2^t k' with odd k' are grouped by t. Odd residues modulo 2^l are ±5^a,
    the kernel is even, so every group is a cyclic correlation of length 2^(l-2).
    """
    bits = log2_int(n)
    powers, logs = _powers_of_five(n)
    exponents = logs[candidates]

    sums = np.full(candidates.size, table[0] * values[n - 1])
    sums += table[n // 2] * values[n // 2 - 1]
    sums += table[n // 4] * (values[n // 4 - 1] + values[3 * n // 4 - 1])
    for level in range(3, bits + 1):
        step = 2 ** (bits - level)
        size = 2 ** (level - 2)
        residues = powers[:size] % 2 ** level
        kernel = table[step * residues]
        grouped = values[step * residues - 1] + values[step * (2 ** level - residues) - 1]
        correlation = np.fft.ifft(np.fft.fft(kernel) * np.conj(np.fft.fft(grouped))).real
        sums += correlation[exponents % size]
    return sums


def _select(criteria, candidates):
    """ Smallest z among the minimizers, criteria within relative 1e-14 count as ties """
    best = np.min(criteria)
    ties = np.nonzero(criteria <= best + TIE_TOLERANCE * abs(best))[0]
    index = ties[0]
    return int(candidates[index]), float(criteria[index])


def cbc_construct(n, dim, weights, setting, method='auto', return_errors=False, bar=False):
    """ Component-by-component construction of a generating vector

    For j = 1..s the component z_j minimizes the criterion of :func:`squared_wce`
    over Z_N with z_1..z_{j-1} fixed. Since the kernel is even, z and N - z give the
    same criterion, so only z <= N/2 are scanned.

    Parameters
    ----------
    n : int
        number of points, N >= 2
    dim : int
        dimension s
    weights : WeightScheme
    setting : SpaceSetting
    method : {'auto', 'naive', 'fft'}
        'fft' groups the candidate sums into cyclic correlations and needs N = 2^m, m >= 3;
        'auto' takes it whenever possible
    return_errors : bool
        whether to return the criterion after every component
    bar : bool
        show a progress bar over components

    Returns
    -------
    GeneratingVector or (GeneratingVector, list of float)
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f'CBC construction needs N >= 2, got {n!r}')
    if weights.dim < dim:
        raise ValidationError(f'weights are defined for {weights.dim} dimensions, {dim} requested')
    fast = is_power_of_two(n) and n >= 8
    if method == 'fft' and not fast:
        raise ValidationError(f'FFT path needs N = 2^m >= 8, got {n}')
    if method not in ('auto', 'naive', 'fft'):
        raise ValueError(f"method must be 'auto', 'naive' or 'fft', got {method!r}")
    candidate_sums = _candidate_sums_fft if fast and method != 'naive' else _candidate_sums_naive

    weights = weights.prefix(dim)
    alpha = weights.alpha
    table = kernel_table(setting, n)
    candidates = np.array([z for z in range(1, n // 2 + 1) if gcd(z, n) == 1], dtype=np.int64)
    ratios = order_ratios(weights.log_orders, alpha)
    k = np.arange(1, n + 1, dtype=np.int64)

    values = np.zeros((n, weights.max_order + 1))
    values[:, 0] = 1.0
    criterion = 0.0
    components, errors = [], []
    for j in tqdm(range(dim), disable=not bar, desc=f'CBC N={n}'):
        top = j * alpha
        # Q_k: increment of the criterion per unit kernel value at point k
        increments = np.zeros(n)
        for m in range(1, alpha + 1):
            increments += weights.factors[j, m - 1] * (values[:, :top + 1] @ ratios[m:top + m + 1, m - 1])
        criteria = criterion + candidate_sums(table, increments, candidates, n) / n
        z, criterion = _select(criteria, candidates)
        components.append(z)
        errors.append(criterion)

        omega = table[(k * z) % n]
        values = recursion_step(values, weights.factors[j][None, :] * omega[:, None], ratios, top=top + alpha)
        check_overflow(values)
        logger.debug('CBC N=%d: z_%d = %d, criterion %.6e', n, j + 1, z, criterion)

    gv = GeneratingVector(n, components)
    if return_errors:
        return gv, errors
    return gv


@dataclass
class WorstCaseReport:
    """ Worst-case error of a vector next to its theoretical bounds

    A bound that leaves the float64 range is stored as inf and marks its λ as inadmissible:
    it takes no part in the comparison.
    """
    error: float
    lambdas: np.ndarray
    bounds: np.ndarray

    @property
    def admissible(self):
        """ Mask of the λ with a finite bound """
        return np.isfinite(self.bounds)

    @property
    def best_bound(self):
        if not self.admissible.any():
            return np.inf
        return float(np.min(self.bounds[self.admissible]))

    @property
    def dominated(self):
        """ Whether the error stays below the bound at every admissible λ of the grid, and there is one """
        bounds = self.bounds[self.admissible]
        return bool(bounds.size > 0 and np.all(self.error <= bounds))


def worst_case_report(gv, weights, setting, lambdas=None, exact=None):
    """ e_N of `gv` and the bound at every λ of a grid (20 log-spaced values by default) """
    lambdas = lambda_grid(setting) if lambdas is None else np.asarray(lambdas, dtype=np.float64)
    error = worst_case_error(gv, weights, setting)
    bounds = []
    for lam in lambdas:
        try:
            bounds.append(theoretical_bound(gv.n, weights, lam, setting, dim=gv.dim, exact=exact))
        except OverflowGuardError:
            bounds.append(np.inf)
    report = WorstCaseReport(error=error, lambdas=lambdas, bounds=np.array(bounds))
    if not report.admissible.all():
        logger.warning('N=%d: no finite bound for λ in %s', gv.n,
                       np.array2string(lambdas[~report.admissible], precision=4))
    return report
