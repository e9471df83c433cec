""" Truncated trigonometric series from lattice samples """
import numpy as np

from .fft import fft_pow2
from ..lattice.core import lattice_points
from ..exceptions import ValidationError
from ..utils import as_points, is_power_of_two


SYMMETRY_TOLERANCE = 1e-12


class IndexSet:
    """ Finite set of integer frequencies h in Z^s, closed under negation and containing 0

    Parameters
    ----------
    frequencies : array-like
        integer array (n, s)
    rule : str, optional
        description of the construction
    """
    def __init__(self, frequencies, rule=None):
        frequencies = np.array(frequencies, dtype=np.int64)
        if frequencies.ndim != 2:
            raise ValidationError(f'frequencies must be an array (n, s), got shape {frequencies.shape}')
        lookup = {tuple(h): i for i, h in enumerate(frequencies.tolist())}
        if len(lookup) != frequencies.shape[0]:
            raise ValidationError('frequencies must be distinct')
        if (0,) * frequencies.shape[1] not in lookup:
            raise ValidationError('index set must contain 0')
        try:
            negation = np.array([lookup[tuple(-x for x in h)] for h in frequencies.tolist()], dtype=np.int64)
        except KeyError as error:
            raise ValidationError(f'index set is not closed under negation: -{list(error.args[0])} missing') from error
        frequencies.flags.writeable = False
        self.frequencies = frequencies
        self.negation = negation
        self.rule = rule

    @classmethod
    def hyperbolic_cross(cls, weights, threshold):
        """ {h : prod_j max(1, |h_j| / w_j) <= T} """
        weights = np.asarray(weights, dtype=np.float64).ravel()
        if np.any(weights <= 0) or threshold < 1:
            raise ValidationError('hyperbolic cross needs positive weights and T >= 1')
        frequencies = _hyperbolic_cross(weights, threshold)
        return cls(frequencies, rule=f'hyperbolic cross, T={threshold:g}')

    @classmethod
    def for_budget(cls, weights, n, iterations=60):
        """ Weighted hyperbolic cross with the largest T such that |A| <= n """
        weights = np.asarray(weights, dtype=np.float64).ravel()
        if _hyperbolic_cross(weights, 1.0, limit=n) is None:
            raise ValidationError(f'even the smallest cross, T = 1, has more than {n} frequencies')
        low, high = 1.0, 2.0
        while _hyperbolic_cross(weights, high, limit=n) is not None:
            low, high = high, 2 * high
        for _ in range(iterations):
            middle = np.sqrt(low * high)
            if _hyperbolic_cross(weights, middle, limit=n) is None:
                high = middle
            else:
                low = middle
        return cls.hyperbolic_cross(weights, low)

    @property
    def dim(self):
        return self.frequencies.shape[1]

    def __len__(self):
        return self.frequencies.shape[0]

    def __repr__(self):
        return f'IndexSet(size={len(self)}, s={self.dim}, rule={self.rule!r})'


def _hyperbolic_cross(weights, threshold, limit=None):
    """ Frequencies of the weighted hyperbolic cross, or None once there are more than `limit` """
    found = []

    def extend(prefix, j, budget):
        if limit is not None and len(found) > limit:
            return
        if j == weights.size:
            found.append(prefix)
            return
        bound = int(np.floor(weights[j] * budget + 1e-12))
        extend(prefix + [0], j + 1, budget)
        for value in range(1, bound + 1):
            rest = budget / max(1.0, value / weights[j])
            extend(prefix + [value], j + 1, rest)
            extend(prefix + [-value], j + 1, rest)

    extend([], 0, float(threshold))
    if limit is not None and len(found) > limit:
        return None
    return np.array(found, dtype=np.int64).reshape(-1, weights.size)


def trig_coefficients(samples, gv, index_set, method='fft'):
    """ Lattice approximations F^a_h = (1/N) sum_k F(t_k) e^(-2πi h·t_k) for h in A

    Parameters
    ----------
    samples : array-like
        F(t_k) for k = 1..N in the order of :func:`~latticeflow.lattice.lattice_points`
    gv : GeneratingVector
    index_set : IndexSet
    method : {'fft', 'direct'}
        'fft' bins the residues h·z mod N into one length-N FFT of the samples (N a power of 2);
        'direct' evaluates the defining sums

    Returns
    -------
    np.ndarray
        complex coefficients aligned with index_set.frequencies
    """
    samples = np.asarray(samples).ravel()
    if samples.size != gv.n:
        raise ValidationError(f'{gv.n} samples expected, got {samples.size}')
    if index_set.dim != gv.dim:
        raise ValidationError(f'index set of dimension {index_set.dim} for a lattice of dimension {gv.dim}')
    if method == 'fft' and is_power_of_two(gv.n):
        # reorder to r = 0..N-1, the last point being r = 0
        spectrum = fft_pow2(np.roll(samples, 1)) / gv.n
        residues = (index_set.frequencies @ gv.z) % gv.n
        return spectrum[residues]
    if method not in ('fft', 'direct'):
        raise ValueError(f"method must be 'fft' or 'direct', got {method!r}")
    phases = lattice_points(gv) @ index_set.frequencies.T
    return np.exp(-2j * np.pi * phases).T @ samples / gv.n


def trig_evaluate(coefficients, index_set, y):
    """ Real series sum_{h in A} c_h e^(2πi h·y)

    Raises
    ------
    ValidationError
        if c_{-h} is not the complex conjugate of c_h
    """
    coefficients = np.asarray(coefficients, dtype=np.complex128).ravel()
    if coefficients.size != len(index_set):
        raise ValidationError(f'{len(index_set)} coefficients expected, got {coefficients.size}')
    scale = max(1.0, float(np.max(np.abs(coefficients)))) if coefficients.size else 1.0
    if np.max(np.abs(coefficients[index_set.negation] - np.conj(coefficients)), initial=0) > SYMMETRY_TOLERANCE * scale:
        raise ValidationError('coefficients are not conjugate-symmetric, the series would not be real')
    y = as_points(y, index_set.dim)
    values = np.exp(2j * np.pi * (y @ index_set.frequencies.T)) @ coefficients
    return values.real
