""" Rank-1 lattice point sets: generating vectors, points, random shifts and cubature """
from math import gcd

import numpy as np

from .._const import GV_HEADER
from ..exceptions import ValidationError, ParseError
from ..utils_random import make_rng


class GeneratingVector:
    """ Modulus N and integer components z_1, ..., z_s of a rank-1 lattice

    The lattice points are t_k = ({k z_1 / N}, ..., {k z_s / N}) for k = 1, ..., N,
    so the last point (k = N) is the origin.

    Parameters
    ----------
    n : int
        number of points, N >= 1
    z : sequence of int
        components, each in [1, N-1] and coprime with N;
        for N = 1 any integers are accepted since the only point is the origin

    Examples
    --------
    ::

        gv = GeneratingVector(64, [1, 19])
        points = lattice_points(gv)
    """
    def __init__(self, n, z):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise ValidationError(f'N must be a positive integer, got {n!r}')
        z = np.array(z, dtype=np.int64).ravel()
        self._n = int(n)
        if self._n > 1:
            for j, component in enumerate(z, start=1):
                if not 1 <= component <= self._n - 1:
                    raise ValidationError(f'z_{j} = {component} is outside [1, {self._n - 1}]')
                if gcd(int(component), self._n) != 1:
                    raise ValidationError(f'z_{j} = {component} is not coprime with N = {self._n}')
        z.flags.writeable = False
        self._z = z

    @property
    def n(self):
        """ Number of points N """
        return self._n

    @property
    def z(self):
        """ Read-only array of components """
        return self._z

    @property
    def dim(self):
        """ Dimension s """
        return self._z.size

    def prefix(self, dim):
        """ Vector of the first `dim` components """
        return GeneratingVector(self._n, self._z[:dim])

    def restrict(self, n):
        """ Embedded rule with n points: (n, z mod n), n must divide N """
        if not isinstance(n, (int, np.integer)) or n < 1 or self._n % n:
            raise ValidationError(f'{n} does not divide N = {self._n}')
        return GeneratingVector(int(n), self._z % n if n > 1 else self._z)

    def residues(self):
        """ Integer array (N, s) of k z_j mod N for k = 1..N """
        k = np.arange(1, self._n + 1, dtype=np.int64)[:, None]
        return (k * self._z[None, :]) % self._n

    def __eq__(self, other):
        if not isinstance(other, GeneratingVector):
            return NotImplemented
        return self._n == other.n and np.array_equal(self._z, other.z)

    def __hash__(self):
        return hash((self._n, self._z.tobytes()))

    def __repr__(self):
        return f'GeneratingVector(n={self._n}, z={self._z.tolist()})'


def lattice_points(gv):
    """ Points of a rank-1 lattice

    Fractional parts are formed in exact integer arithmetic, k z_j mod N, and divided by N afterwards.

    Parameters
    ----------
    gv : GeneratingVector

    Returns
    -------
    np.ndarray
        read-only array of shape (N, s), row k-1 holds t_k, the last row is the origin
    """
    points = gv.residues() / gv.n
    points.flags.writeable = False
    return points


def shift_points(points, shift):
    """ Wrap shifted points back into the unit cube: {t_k + Δ} """
    points = np.asarray(points, dtype=np.float64)
    shift = np.asarray(shift, dtype=np.float64).ravel()
    if points.ndim != 2 or points.shape[1] != shift.size:
        raise ValidationError(f'Shift of dimension {shift.size} does not match points of shape {points.shape}')
    shifted = points + shift
    shifted -= np.floor(shifted)
    return shifted


def random_shift(rng, dim):
    """ Shift with `dim` independent uniform components in [0, 1)

    Parameters
    ----------
    rng : int, SeedSequence or Generator
        random state, see :func:`~latticeflow.utils_random.make_rng`
    dim : int
        dimension s, may be zero
    """
    return make_rng(rng).random(dim)


def monte_carlo_points(rng, n, dim):
    """ n i.i.d. uniform points in [0, 1)^dim """
    return make_rng(rng).random((n, dim))


def qmc_integrate(func, points, vectorized=True):
    """ Equal-weight cubature (1/N) sum_k f(t_k)

    Parameters
    ----------
    func : callable
        integrand; with `vectorized` it takes an array (N, s) and returns N values,
        otherwise it is called for every point
    points : np.ndarray
        point set of shape (N, s)
    """
    points = np.asarray(points, dtype=np.float64)
    if vectorized:
        values = np.asarray(func(points))
    else:
        values = np.array([func(point) for point in points])
    return values.mean()


def shifted_estimate(func, gv, n_shifts, rng=None, vectorized=True):
    """ Mean and standard error of a randomly shifted lattice rule over independent shifts

    Returns
    -------
    tuple of float
        (mean, standard error); the standard error is nan for a single shift
    """
    if n_shifts < 1:
        raise ValidationError(f'At least one shift is required, got {n_shifts}')
    rng = make_rng(rng)
    points = lattice_points(gv)
    estimates = np.array([qmc_integrate(func, shift_points(points, random_shift(rng, gv.dim)), vectorized)
                          for _ in range(n_shifts)])
    mean = estimates.mean()
    if n_shifts == 1:
        return mean, np.nan
    return mean, estimates.std(ddof=1) / np.sqrt(n_shifts)


def save_generating_vector(gv, path):
    """ Write `N` on the first line and one component per line """
    with open(path, 'w') as file:
        file.write(f'{GV_HEADER}, s={gv.dim}\n')
        file.write(f'{gv.n}\n')
        for component in gv.z:
            file.write(f'{int(component)}\n')


def load_generating_vector(path, dim=None):
    """ Read a generating vector file

    The first non-comment line holds N, then one integer per line; `#` starts a comment.

    Parameters
    ----------
    path : str
    dim : int, optional
        keep only the first `dim` components

    Raises
    ------
    ParseError
        a line is not an integer or the file holds no modulus
    ValidationError
        a component is not in Z_N
    """
    numbers = []
    with open(path, 'r') as file:
        for number, raw in enumerate(file, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            try:
                numbers.append(int(line))
            except ValueError as error:
                raise ParseError(f'expected an integer, got {line!r}', path, number) from error
    if not numbers:
        raise ParseError('no modulus found', path)

    n, z = numbers[0], numbers[1:]
    if dim is not None:
        if dim > len(z):
            raise ValidationError(f'{path} holds {len(z)} components, {dim} requested')
        z = z[:dim]
    return GeneratingVector(n, z)
