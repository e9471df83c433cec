""" Target functions of the experiments """
import numpy as np

from ..lattice.special import riemann_zeta
from ..lattice.weights import DecaySequence
from ..exceptions import ValidationError
from ..utils import as_points


class PeriodicAlgebraicTarget:
    """ G(y) = 1 / (1 + sum_j sin(2π y_j) ψ_j) with ψ_j = η j^(-q)

    The function satisfies the periodic regularity bound with b_j = ψ_j / a_min and C = 1 / a_min,
    where a_min = 1 - η ζ(q) <= 1 + sum_j sin(2π y_j) ψ_j.

    Parameters
    ----------
    eta : float
        amplitude η > 0 with η ζ(q) < 1
    q : float
        decay q > 1
    dim : int
        dimension s
    """
    def __init__(self, eta=0.5, q=2.5, dim=10):
        if eta <= 0 or q <= 1:
            raise ValidationError(f'target needs eta > 0 and q > 1, got eta={eta}, q={q}')
        if eta * riemann_zeta(q) >= 1:
            raise ValidationError(f'eta ζ(q) = {eta * riemann_zeta(q):.6g} must be below 1')
        if dim < 1:
            raise ValidationError(f'dimension must be positive, got {dim}')
        self.eta = float(eta)
        self.q = float(q)
        self.dim = int(dim)

    @property
    def psi(self):
        return self.eta * np.arange(1, self.dim + 1, dtype=np.float64) ** (-self.q)

    @property
    def a_min(self):
        return 1 - self.eta * riemann_zeta(self.q)

    @property
    def C(self):
        """ Bound on |G| """
        return 1 / self.a_min

    @property
    def b(self):
        """ Decay sequence b_j = ψ_j / a_min with p* = 1/q """
        return DecaySequence.closed_form(self.eta, self.q, self.dim)

    def __call__(self, y):
        """ G at one point (s,) or a batch (n, s) """
        single = np.ndim(y) == 1
        y = as_points(y, self.dim)
        values = 1 / (1 + np.sin(2 * np.pi * y) @ self.psi)
        return values[0] if single else values

    def __repr__(self):
        return f'PeriodicAlgebraicTarget(eta={self.eta}, q={self.q}, dim={self.dim})'


def target_eval(target, y):
    """ Evaluate a target at one point or a batch """
    return target(y)
