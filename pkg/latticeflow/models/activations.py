""" Activation functions with derivative-bound constants """

import numpy as np
from scipy.special import expit

from ..lattice.special import eulerian, riemann_zeta, factorial_float
from .._const import DERIVATIVE_MAX_ORDER, EULERIAN_MAX
from ..exceptions import ValidationError


class ActivationKind:
    """ Activation with the constants (ξ, τ) of the bound sup |σ^(n)| <= ξ τ^n n!

    Parameters
    ----------
    name : {'sigmoid', 'tanh', 'swish', 'relu'}
        a name may carry the parameter after an underscore, e.g. 'swish_25'
    c : float
        steepness c > 0; ignored for 'relu'

    Examples
    --------
    ::

        kind = ActivationKind.from_name('swish_5')
        kind.xi, kind.tau   # (0.22, 5.0)
    """
    NAMES = ('sigmoid', 'tanh', 'swish', 'relu')

    def __init__(self, name='sigmoid', c=1.0):
        name = name.lower()
        if name not in self.NAMES:
            raise ValidationError(f'Unknown activation {name!r}, expected one of {self.NAMES}')
        if name != 'relu' and not c > 0:
            raise ValidationError(f'activation parameter c must be positive, got {c}')
        self.name = name
        self.c = None if name == 'relu' else float(c)

    @classmethod
    def from_name(cls, label):
        """ Parse labels like 'sigmoid', 'sigmoid_1', 'tanh_0.5', 'swish_25' or 'relu' """
        if isinstance(label, ActivationKind):
            return label
        name, _, parameter = str(label).strip().lower().partition('_')
        if not parameter:
            return cls(name)
        try:
            c = float(parameter)
        except ValueError as error:
            raise ValidationError(f'Cannot parse activation parameter in {label!r}') from error
        return cls(name, c)

    @property
    def label(self):
        return self.name if self.name == 'relu' else f'{self.name}_{self.c:g}'

    @property
    def smooth(self):
        return self.name != 'relu'

    @property
    def xi(self):
        """ ξ of the derivative bounds; None for ReLU """
        if self.name == 'swish':
            return 1.1 / self.c
        return None if self.name == 'relu' else 1.0

    @property
    def tau(self):
        """ τ of the derivative bounds; None for ReLU """
        if self.name == 'tanh':
            return 2 * self.c
        return self.c

    def __call__(self, x):
        return activation_value(self, x)

    def __eq__(self, other):
        if not isinstance(other, ActivationKind):
            return NotImplemented
        return (self.name, self.c) == (other.name, other.c)

    def __hash__(self):
        return hash((self.name, self.c))

    def __repr__(self):
        return f"ActivationKind('{self.label}')"


def activation_value(kind, x):
    """ σ(x) of an activation kind """
    kind = ActivationKind.from_name(kind)
    x = np.asarray(x, dtype=np.float64)
    if kind.name == 'sigmoid':
        return expit(kind.c * x)
    if kind.name == 'tanh':
        return np.tanh(kind.c * x)
    if kind.name == 'swish':
        return x * expit(kind.c * x)
    return np.maximum(x, 0.0)


def activation_derivative(kind, x, n=1):
    """ σ(x) for n = 0 and σ'(x) for n = 1; ReLU'(0) is 0 """
    kind = ActivationKind.from_name(kind)
    if n == 0:
        return activation_value(kind, x)
    if n != 1:
        raise ValidationError(f'order {n} is not supported here, see activation_nth_derivative')
    x = np.asarray(x, dtype=np.float64)
    c = kind.c
    if kind.name == 'sigmoid':
        s = expit(c * x)
        return c * s * (1 - s)
    if kind.name == 'tanh':
        return c * (1 - np.tanh(c * x) ** 2)
    if kind.name == 'swish':
        s = expit(c * x)
        return s + c * x * s * (1 - s)
    return (x > 0).astype(np.float64)


def sigmoid_exact_derivative(n, x):
    """ n-th derivative of the standard sigmoid

    σ^(n)(x) = sum_{k=1}^{n} (-1)^(k-1) E(n, k-1) σ(x)^k (1 - σ(x))^(n+1-k), n >= 1,
    with E the Eulerian numbers.
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= EULERIAN_MAX:
        raise ValidationError(f'sigmoid derivatives are supported for 1 <= n <= {EULERIAN_MAX}, got {n}')
    s = expit(np.asarray(x, dtype=np.float64))
    value = np.zeros_like(s)
    for k in range(1, n + 1):
        value += (-1) ** (k - 1) * eulerian(n, k - 1) * s ** k * (1 - s) ** (n + 1 - k)
    return value.item() if value.ndim == 0 else value


def _sigmoid_derivative(n, x):
    return expit(np.asarray(x, dtype=np.float64)) if n == 0 else sigmoid_exact_derivative(n, x)


def activation_nth_derivative(kind, x, n):
    """ Exact n-th derivative of a smooth activation, n <= 15

    tanh_c(x) = 2 σ(2cx) - 1 and swish_c(x) = x σ(cx), so every kind reduces to
    derivatives of the standard sigmoid.
    """
    kind = ActivationKind.from_name(kind)
    if n <= 1:
        return activation_derivative(kind, x, n)
    if not kind.smooth:
        raise ValidationError('ReLU has no derivatives of order above 1')
    x = np.asarray(x, dtype=np.float64)
    c = kind.c
    if kind.name == 'sigmoid':
        return c ** n * _sigmoid_derivative(n, c * x)
    if kind.name == 'tanh':
        return 2 * (2 * c) ** n * _sigmoid_derivative(n, 2 * c * x)
    # Leibniz rule for x σ(cx)
    return x * c ** n * _sigmoid_derivative(n, c * x) + n * c ** (n - 1) * _sigmoid_derivative(n - 1, c * x)


def derivative_bound_A(kind, n):
    """ A_n = ξ τ^n n!, a bound on sup |σ^(n)|

    Raises
    ------
    ValidationError
        for ReLU, which is not smooth and has no such bound
    """
    kind = ActivationKind.from_name(kind)
    if not kind.smooth:
        raise ValidationError('ReLU is nonsmooth: its derivatives are unbounded in the required sense')
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= DERIVATIVE_MAX_ORDER:
        raise ValidationError(f'derivative order must be in [1, {DERIVATIVE_MAX_ORDER}], got {n}')
    return kind.xi * kind.tau ** n * factorial_float(n)


def sigmoid_lower_bound(n):
    """ |σ^(n)(0)| for odd n in closed form: 2 (2^(n+1) - 1) ζ(n+1) n! / (2π)^(n+1) """
    if n < 1 or n % 2 == 0:
        raise ValidationError(f'the closed form holds for odd n >= 1, got {n}')
    return 2 * (2 ** (n + 1) - 1) * riemann_zeta(n + 1) * factorial_float(n) / (2 * np.pi) ** (n + 1)


def sigmoid_derivative_upper_bound(n):
    """ n^n / (n+1)^(n+1) n!, an upper bound on sup |σ^(n)| """
    if n < 1:
        raise ValidationError(f'order must be positive, got {n}')
    return n ** n / (n + 1) ** (n + 1) * factorial_float(n)
