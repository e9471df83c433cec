""" Regularity profiles of trained networks and the derivative bounds they imply """
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .network import forward
from ..lattice.core import lattice_points
from ..lattice.cbc import cbc_construct
from ..lattice.kernels import SpaceSetting
from ..lattice.special import stirling2
from ..lattice.weights import WeightScheme
from .._const import SUP_NORM_POINTS, MULTI_INDEX_MAX_ORDER
from ..exceptions import ValidationError


logger = logging.getLogger(__name__)


@dataclass
class RegularityProfile:
    """ Norm bounds of a network and the constants of its derivative bounds

    Attributes
    ----------
    beta : np.ndarray
        β_j = max_p |W_0[p, j]|
    R : np.ndarray
        R_ℓ = ||W_ℓ||_∞ for ℓ = 1..L
    P : np.ndarray
        P_ℓ = prod_{t=1}^{ℓ} ξ τ R_t for ℓ = 0..L
    S_L, C_L : float
        S_L = τ sum_{ℓ<L} P_ℓ and C_L = max(sup |G_θ|, P_L / S_L)
    kappa : float
        max(max_j β_j / b_j, 1 / S_L); nan without a decay sequence
    sup_norm : float
        sup-norm estimate: a maximum over sample points, hence a lower estimate
    """
    beta: np.ndarray
    R: np.ndarray
    P: np.ndarray
    S_L: float
    C_L: float
    kappa: float
    sup_norm: float
    xi: float = field(default=1.0)
    tau: float = field(default=1.0)

    def rows(self):
        """ (quantity, index, value) triples in the order of the audit CSV """
        rows = [('beta', j, value) for j, value in enumerate(self.beta, start=1)]
        rows += [('R', level, value) for level, value in enumerate(self.R, start=1)]
        rows += [('P', level, value) for level, value in enumerate(self.P)]
        rows += [('S_L', '', self.S_L), ('C_L', '', self.C_L), ('kappa', '', self.kappa),
                 ('sup_norm_estimate', '', self.sup_norm)]
        return rows


@dataclass
class RestrictionReport:
    """ Which of the restrictions R_ℓ <= ρ, β_j <= b_j / S_L, C_L <= C hold """
    weights_bounded: bool
    first_layer_bounded: bool
    constant_bounded: bool
    kappa: float
    violations: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.weights_bounded and self.first_layer_bounded and self.constant_bounded


@lru_cache(maxsize=8)
def _sample_points(n, dim):
    gammas = 1.0 / np.arange(1, dim + 1) ** 2
    gv = cbc_construct(n, dim, WeightScheme.product(gammas), SpaceSetting.korobov(1))
    return lattice_points(gv)


def sup_norm_estimate(net, n=SUP_NORM_POINTS, points=None):
    """ max |G_θ| over `n` lattice points (a lower estimate of the sup-norm) """
    points = _sample_points(n, net.dim) if points is None else points
    return float(np.max(np.abs(forward(net, points))))


def regularity_profile(net, b=None, sup_norm=None):
    """ β_j, R_ℓ, P_ℓ, S_L, C_L and κ of a network

    Parameters
    ----------
    net : NetworkParams
        a network with a smooth activation and depth L >= 1
    b : DecaySequence or array-like, optional
        decay sequence for κ
    sup_norm : float, optional
        value of sup |G_θ|; estimated on 2^12 lattice points by default
    """
    kind = net.activation
    if not kind.smooth:
        raise ValidationError('regularity constants need a smooth activation with (ξ, τ)')
    if net.depth < 1:
        raise ValidationError('regularity constants are defined for depth L >= 1')

    beta = np.max(np.abs(net.weights[0]), axis=0)
    R = np.array([np.max(np.sum(np.abs(w), axis=1)) for w in net.weights[1:]])
    P = np.concatenate([[1.0], np.cumprod(kind.xi * kind.tau * R)])
    S_L = kind.tau * np.sum(P[:-1])
    if sup_norm is None:
        sup_norm = sup_norm_estimate(net)
    C_L = max(sup_norm, P[-1] / S_L)

    if b is None:
        kappa = np.nan
    else:
        b_values = np.asarray(getattr(b, 'values', b), dtype=np.float64)[:net.dim]
        kappa = max(np.max(beta / b_values), 1 / S_L)
    return RegularityProfile(beta=beta, R=R, P=P, S_L=float(S_L), C_L=float(C_L), kappa=float(kappa),
                             sup_norm=float(sup_norm), xi=kind.xi, tau=kind.tau)


def regularity_bound(profile, nu, periodic=False):
    """ Bound on |∂^ν G_θ(y)|

    - non-periodic: C_L |ν|! prod_j (S_L β_j)^ν_j;
    - periodic: C_L (2π)^|ν| sum_{m <= ν} |m|! prod_j (S_L β_j)^m_j S(ν_j, m_j).

    Parameters
    ----------
    profile : RegularityProfile
    nu : sequence of int
        multi-index over the first len(nu) inputs, |ν| <= 8
    periodic : bool
    """
    nu = np.asarray(nu, dtype=np.int64).ravel()
    if np.any(nu < 0) or nu.size > profile.beta.size:
        raise ValidationError(f'invalid multi-index {nu.tolist()} for {profile.beta.size} inputs')
    order = int(nu.sum())
    if order > MULTI_INDEX_MAX_ORDER:
        raise ValidationError(f'|ν| = {order} exceeds the supported order {MULTI_INDEX_MAX_ORDER}')
    scaled = profile.S_L * profile.beta[:nu.size]

    if not periodic:
        return profile.C_L * factorial(order) * float(np.prod(scaled ** nu))

    # polynomial in |m|: coefficients prod_j (S_L β_j)^m_j S(ν_j, m_j)
    poly = np.array([1.0])
    for value, n in zip(scaled, nu):
        row = np.array([value ** m * stirling2(int(n), m) for m in range(int(n) + 1)], dtype=np.float64)
        poly = np.convolve(poly, row)
    total = sum(factorial(m) * coefficient for m, coefficient in enumerate(poly))
    return profile.C_L * (2 * np.pi) ** order * total


def check_restrictions(profile, b, rho, C):
    """ Check R_ℓ <= ρ (ℓ = 1..L-1), β_j <= b_j / S_L and C_L <= C

    Returns
    -------
    RestrictionReport
        κ is max(max_j β_j / b_j, 1 / S_L) when the first-layer restriction fails, else 1 / S_L
    """
    b_values = np.asarray(getattr(b, 'values', b), dtype=np.float64)[:profile.beta.size]
    hidden = profile.R[:-1]
    violations = {}

    weights_bounded = bool(np.all(hidden <= rho))
    if not weights_bounded:
        violations['R'] = {int(level): float(value) for level, value in enumerate(hidden, start=1) if value > rho}

    ratios = profile.beta * profile.S_L / b_values
    first_layer_bounded = bool(np.all(ratios <= 1))
    if first_layer_bounded:
        kappa = 1 / profile.S_L
    else:
        violations['beta'] = {int(j): float(value) for j, value in enumerate(profile.beta, start=1)
                              if ratios[j - 1] > 1}
        kappa = max(float(np.max(profile.beta / b_values)), 1 / profile.S_L)

    constant_bounded = bool(profile.C_L <= C)
    if not constant_bounded:
        violations['C_L'] = profile.C_L
    if violations:
        logger.debug('restrictions violated: %s', violations)
    return RestrictionReport(weights_bounded, first_layer_bounded, constant_bounded, kappa, violations)


def demand_sl_bound(tau, L, xi=1.0, rho=None):
    """ Bound on S_L when R_ℓ <= ρ: τ L if ξ τ ρ = 1, else τ ((ξτρ)^L - 1) / (ξτρ - 1)

    Without ρ the equality case ξ τ ρ = 1 is assumed.
    """
    if rho is None:
        return tau * L
    ratio = xi * tau * rho
    if np.isclose(ratio, 1.0, rtol=1e-14, atol=0):
        return tau * L
    return tau * (ratio ** L - 1) / (ratio - 1)


def swish_sl_bound(c, rho, L):
    """ S_L <= c ((1.1ρ)^L - 1) / (1.1ρ - 1) for swish_c """
    return demand_sl_bound(c, L, xi=1.1 / c, rho=rho)
