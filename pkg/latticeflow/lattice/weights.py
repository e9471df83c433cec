""" Decay sequences, POD/SPOD weights, rate plans, norm bounds and appendix constants

Every weight family is stored in one order-dependent form

    γ_u = sum over m_u in {1..α}^u of Γ_{|m_u|} prod_{j in u} c_{j, m_j},

with order factors Γ_ℓ (kept as logarithms, Γ_0 = 1) and per-dimension factors c_{j, m}.
Product weights have α = 1 and Γ_ℓ = 1, POD weights have α = 1.
Sums over all subsets are then evaluated by the order recursion of :func:`order_recursion`
without enumerating 2^s subsets.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .kernels import SpaceSetting
from .special import riemann_zeta, stirling2, log_factorial
from .._const import OVERFLOW_GUARD, MAX_FACTORIAL_ORDER, MAX_ENUMERATION_DIM
from ..exceptions import ValidationError, OverflowGuardError, InadmissibleWeightsError


logger = logging.getLogger(__name__)


class DecaySequence:
    """ Positive non-increasing sequence b_1 >= b_2 >= ... bounding the target's derivatives

    Parameters
    ----------
    values : array-like
        b_1, ..., b_s
    p_star : float
        summability exponent in (0, 1)
    eta, q, a_min : float, optional
        parameters of the closed form b_j = eta j^(-q) / a_min, if the sequence comes from it
    """
    def __init__(self, values, p_star, eta=None, q=None, a_min=1.0):
        values = np.array(values, dtype=np.float64).ravel()
        if np.any(values <= 0):
            raise ValidationError('decay sequence must be positive')
        if np.any(np.diff(values) > 0):
            raise ValidationError('decay sequence must be non-increasing')
        if not 0 < p_star < 1:
            raise ValidationError(f'summability exponent p* must be in (0, 1), got {p_star}')
        values.flags.writeable = False
        self.values = values
        self.p_star = float(p_star)
        self.eta, self.q, self.a_min = eta, q, a_min

    @classmethod
    def closed_form(cls, eta, q, dim, normalize=True, p_star=None):
        """ b_j = eta j^(-q) / a_min with a_min = 1 - eta ζ(q), or without the normalizer

        The default summability exponent is 1/q, the boundary value the rates are quoted for.
        """
        if eta <= 0 or q <= 1:
            raise ValidationError(f'closed form needs eta > 0 and q > 1, got eta={eta}, q={q}')
        a_min = 1 - eta * riemann_zeta(q) if normalize else 1.0
        if a_min <= 0:
            raise ValidationError(f'eta ζ(q) = {eta * riemann_zeta(q)} must be below 1')
        j = np.arange(1, dim + 1, dtype=np.float64)
        p_star = 1 / q if p_star is None else p_star
        return cls(eta * j ** (-q) / a_min, p_star, eta=eta, q=q, a_min=a_min)

    @property
    def dim(self):
        return self.values.size

    @property
    def is_closed_form(self):
        return self.q is not None

    def prefix(self, dim):
        """ First `dim` terms; a closed form is extended when needed """
        if dim > self.dim:
            if not self.is_closed_form:
                raise ValidationError(f'decay sequence has {self.dim} terms, {dim} requested')
            return DecaySequence.closed_form(self.eta, self.q, dim, normalize=self.a_min != 1.0,
                                             p_star=self.p_star)
        return DecaySequence(self.values[:dim], self.p_star, self.eta, self.q, self.a_min)

    def scaled(self, factor):
        """ Sequence factor * b_j as an explicit list """
        return DecaySequence(self.values * factor, self.p_star)

    def power_sum(self, p=None):
        """ sum_j b_j^p over the whole sequence

        For the closed form this is (eta / a_min)^p ζ(p q) over all j >= 1.
        """
        p = self.p_star if p is None else p
        if self.is_closed_form:
            if p * self.q <= 1:
                raise ValidationError(f'sum of b_j^{p} diverges since p q = {p * self.q} <= 1')
            return (self.eta / self.a_min) ** p * riemann_zeta(p * self.q)
        return float(np.sum(self.values ** p))

    def __getitem__(self, item):
        return self.values[item]

    def __len__(self):
        return self.dim

    def __repr__(self):
        if self.is_closed_form:
            return f'DecaySequence(eta={self.eta}, q={self.q}, dim={self.dim}, p_star={self.p_star})'
        return f'DecaySequence({self.values.tolist()}, p_star={self.p_star})'


class WeightScheme:
    """ Weights γ_u in order-dependent product form

    Parameters
    ----------
    log_orders : array-like
        log Γ_ℓ for ℓ = 0, ..., α s; log Γ_0 must be 0 so that γ_∅ = 1
    factors : array-like
        c_{j, m} of shape (s, α), m = 1, ..., α in columns
    kind : {'product', 'pod', 'spod'}
    name : str, optional
        formula the weights implement

    Notes
    -----
    A weight scheme is immutable; derived schemes are new objects.
    """
    def __init__(self, log_orders, factors, kind='spod', name=None):
        factors = np.array(factors, dtype=np.float64)
        if factors.ndim == 1:
            factors = factors[:, None]
        if factors.ndim != 2:
            raise ValidationError(f'factors must be of shape (s, α), got {factors.shape}')
        if np.any(factors < 0) or not np.all(np.isfinite(factors)):
            raise ValidationError('weight factors must be finite and non-negative')
        log_orders = np.array(log_orders, dtype=np.float64).ravel()
        max_order = factors.shape[0] * factors.shape[1]
        if log_orders.size < max_order + 1:
            raise ValidationError(f'{max_order + 1} order factors are needed, {log_orders.size} given')
        log_orders = log_orders[:max_order + 1]
        if log_orders[0] != 0:
            raise ValidationError('order factor Γ_0 must be 1')
        if not np.all(np.isfinite(log_orders)):
            raise ValidationError('order factors must be positive and finite')

        factors.flags.writeable = False
        log_orders.flags.writeable = False
        self.factors = factors
        self.log_orders = log_orders
        self.kind = kind
        self.name = name or kind

    @classmethod
    def product(cls, gammas, name='product'):
        """ γ_u = prod_{j in u} γ_j """
        gammas = np.array(gammas, dtype=np.float64).ravel()
        return cls(np.zeros(gammas.size + 1), gammas[:, None], kind='product', name=name)

    @classmethod
    def pod(cls, log_orders, factors, name='pod'):
        """ γ_u = Γ_|u| prod_{j in u} c_j """
        return cls(log_orders, np.array(factors, dtype=np.float64).ravel()[:, None], kind='pod', name=name)

    @property
    def dim(self):
        return self.factors.shape[0]

    @property
    def alpha(self):
        return self.factors.shape[1]

    @property
    def max_order(self):
        return self.dim * self.alpha

    @property
    def is_order_exact(self):
        """ Whether every subset has a single term, so that γ_u^λ stays in product form """
        return self.alpha == 1

    def prefix(self, dim):
        """ Weights of the first `dim` dimensions """
        if dim > self.dim:
            raise ValidationError(f'weights are defined for {self.dim} dimensions, {dim} requested')
        return WeightScheme(self.log_orders[:dim * self.alpha + 1], self.factors[:dim],
                            kind=self.kind, name=self.name)

    def power(self, lam):
        """ Weights with Γ_ℓ^λ and c_{j,m}^λ

        For α = 1 these are exactly γ_u^λ; for SPOD weights they majorize γ_u^λ,
        since (sum_i a_i)^λ <= sum_i a_i^λ for 0 < λ <= 1.
        """
        return WeightScheme(self.log_orders * lam, self.factors ** lam, kind=self.kind, name=f'{self.name}^{lam}')

    def ratios(self):
        """ Matrix of Γ_ℓ / Γ_{ℓ-m}, rows ℓ = 0..max_order, columns m = 1..α; zero for m > ℓ """
        return order_ratios(self.log_orders, self.alpha)

    def gamma(self, subset):
        """ Explicit γ_u for a subset of 1-based dimension indices

        Raises
        ------
        OverflowGuardError
            if Γ_ℓ of a needed order overflows float64
        """
        subset = sorted(set(int(j) for j in subset))
        if not subset:
            return 1.0
        if subset[0] < 1 or subset[-1] > self.dim:
            raise ValidationError(f'subset {subset} is outside 1..{self.dim}')
        poly = np.array([1.0])
        for j in subset:
            poly = np.convolve(poly, np.concatenate([[0.0], self.factors[j - 1]]))
        orders = np.nonzero(poly)[0]
        if orders.size == 0:
            return 0.0
        if np.max(self.log_orders[orders]) > np.log(OVERFLOW_GUARD):
            raise OverflowGuardError(int(orders[np.argmax(self.log_orders[orders])]))
        return float(np.sum(np.exp(self.log_orders[orders]) * poly[orders]))

    def table(self, max_size=3):
        """ List of (subset, γ_u) for all nonempty subsets with |u| <= max_size """
        rows = []
        for size in range(1, min(max_size, self.dim) + 1):
            for subset in combinations(range(1, self.dim + 1), size):
                rows.append((subset, self.gamma(subset)))
        return rows

    def __repr__(self):
        return f'WeightScheme({self.name}, s={self.dim}, α={self.alpha})'


@dataclass(frozen=True)
class RatePlan:
    """ Parameters (λ, α, r) chosen from the summability exponent for one setting """
    setting: SpaceSetting
    lam: float
    alpha: int
    rate: float
    p_star: float
    delta: float = field(default=None)

    @property
    def half_rate(self):
        """ Predicted decay exponent r/2 of the generalization gap """
        return self.rate / 2


def order_ratios(log_orders, alpha):
    """ R[ℓ, m-1] = Γ_ℓ / Γ_{ℓ-m} for m <= ℓ, else 0 """
    size = log_orders.size
    ratios = np.zeros((size, alpha))
    for m in range(1, alpha + 1):
        ratios[m:, m - 1] = np.exp(log_orders[m:] - log_orders[:-m])
    return ratios


def recursion_step(values, factors, ratios, top, carry=True):
    """ Add one dimension to the order recursion

    With V_{j-1}(ℓ) = Γ_ℓ sum_{u, m_u : |m_u| = ℓ} prod a, the new array is
    V_j(ℓ) = V_{j-1}(ℓ) + sum_m a_{j,m} (Γ_ℓ / Γ_{ℓ-m}) V_{j-1}(ℓ-m).

    Parameters
    ----------
    values : np.ndarray
        V_{j-1} of shape (P, max_order + 1), one row per evaluation point
    factors : np.ndarray
        a_{j, m} of shape (P, α)
    ratios : np.ndarray
        output of :func:`order_ratios`
    top : int
        highest order reachable after this step
    carry : bool
        if False the dimension is forced into every subset (V_{j-1}(ℓ) is not carried over)
    """
    new = values.copy() if carry else np.zeros_like(values)
    alpha = factors.shape[1]
    for m in range(1, alpha + 1):
        if m > top:
            break
        new[:, m:top + 1] += factors[:, m - 1:m] * ratios[m:top + 1, m - 1] * values[:, :top + 1 - m]
    return new


def check_overflow(values):
    """ Raise when a partial product leaves the guarded range """
    peak = np.max(np.abs(values), axis=0) if values.size else values
    if values.size and (np.max(peak) > OVERFLOW_GUARD or not np.all(np.isfinite(peak))):
        order = int(np.argmax(np.where(np.isfinite(peak), peak, np.inf)))
        raise OverflowGuardError(order)


def order_recursion(log_orders, factors, multipliers=None):
    """ Per-order sums sum_{u} sum_{m_u, |m_u| = ℓ} Γ_ℓ prod_{j in u} a_{j, m_j}

    Parameters
    ----------
    log_orders : np.ndarray
        log Γ_ℓ, ℓ = 0..α s
    factors : np.ndarray
        c_{j, m} of shape (s, α)
    multipliers : np.ndarray, optional
        per-point multipliers x_{k, j} of shape (P, s), so that a_{j, m} = c_{j, m} x_{k, j}

    Returns
    -------
    np.ndarray
        array of shape (P, α s + 1) (P = 1 without multipliers); column 0 is Γ_0
    """
    dim, alpha = factors.shape
    max_order = dim * alpha
    points = 1 if multipliers is None else multipliers.shape[0]
    ratios = order_ratios(np.asarray(log_orders)[:max_order + 1], alpha)
    values = np.zeros((points, max_order + 1))
    values[:, 0] = np.exp(log_orders[0])
    for j in range(dim):
        step = np.broadcast_to(factors[j], (points, alpha))
        if multipliers is not None:
            step = step * multipliers[:, j:j + 1]
        values = recursion_step(values, step, ratios, top=(j + 1) * alpha)
        check_overflow(values)
    return values


def prefix_log_totals(log_orders, factors):
    """ log of sum_{m in {1..α}^u} Γ_|m| prod_{j in u} c_{j, m_j} for every prefix u = {1..ℓ}, ℓ = 0..s

    Every dimension of the prefix is forced into the subset; the working array is
    renormalized after each step so long prefixes neither overflow nor underflow.
    """
    dim, alpha = factors.shape
    max_order = dim * alpha
    ratios = order_ratios(np.asarray(log_orders)[:max_order + 1], alpha)
    values = np.zeros((1, max_order + 1))
    values[0, 0] = np.exp(log_orders[0])
    log_scale = 0.0
    totals = [np.log(values.sum())]
    for j in range(dim):
        values = recursion_step(values, factors[j][None, :], ratios, top=(j + 1) * alpha, carry=False)
        peak = np.max(np.abs(values))
        if peak == 0:
            totals.extend([-np.inf] * (dim - j))
            break
        values /= peak
        log_scale += np.log(peak)
        totals.append(np.log(values.sum()) + log_scale)
    return np.array(totals)


def _subsets(dim):
    for size in range(dim + 1):
        yield from combinations(range(1, dim + 1), size)


def weighted_sum(weights, factor, lam, exact=None):
    """ sum over nonempty u of γ_u^λ factor^|u|

    Product and POD weights are summed exactly by the order recursion. SPOD weights are
    enumerated for s <= 12 and otherwise majorized with Jensen's inequality
    (sum over m_u of the λ-th powers).
    """
    exact = weights.dim <= MAX_ENUMERATION_DIM if exact is None else exact
    if weights.is_order_exact or not exact:
        powered = weights.power(lam)
        values = order_recursion(powered.log_orders, powered.factors * factor)
        return float(np.sum(values[0, 1:]))
    return sum(weights.gamma(subset) ** lam * factor ** len(subset)
               for subset in _subsets(weights.dim) if subset)


def pod_weights(b, lam):
    """ γ_u = ((|u|+1)! prod_{j in u} b_j / sqrt(2 ζ(2λ) 2^λ / (2π)^(2λ)))^(2/(1+λ)) """
    power = 2 / (1 + lam)
    bound_factor = SpaceSetting('a').bound_factor(lam)
    orders = np.arange(b.dim + 1)
    log_orders = power * log_factorial(orders + 1)
    factors = (b.values / np.sqrt(bound_factor)) ** power
    return WeightScheme.pod(log_orders, factors, name='weight-np')


def spod_periodic_weights(b, alpha, lam):
    """ γ_u = (2π)^(2α|u|) sum_{m_u <= α} ((|m_u|+1)! prod_j b_j^m_j S(α, m_j) / sqrt(2ζ(2αλ)))^(2/(1+λ)) """
    power = 2 / (1 + lam)
    norm = np.sqrt(2 * riemann_zeta(2 * alpha * lam))
    m = np.arange(1, alpha + 1)
    stirling = np.array([stirling2(alpha, int(k)) for k in m], dtype=np.float64)
    orders = np.arange(b.dim * alpha + 1)
    log_orders = power * log_factorial(orders + 1)
    factors = (2 * np.pi) ** (2 * alpha) * (b.values[:, None] ** m * stirling / norm) ** power
    return WeightScheme(log_orders, factors, kind='spod', name='weight-per')


def spod_k_weights(b, alpha):
    """ γ_u = (2π)^(α|u|) sum_{m_u <= α} (|m_u|+1)! prod_j b_j^m_j S(α, m_j) """
    m = np.arange(1, alpha + 1)
    stirling = np.array([stirling2(alpha, int(k)) for k in m], dtype=np.float64)
    orders = np.arange(b.dim * alpha + 1)
    factors = (2 * np.pi) ** alpha * b.values[:, None] ** m * stirling
    return WeightScheme(log_factorial(orders + 1), factors, kind='spod', name='weight-K')


def select_rate_plan(p_star, setting, delta=0.05):
    """ Choose λ, α and the rate r from the summability exponent

    Parameters
    ----------
    p_star : float
        summability exponent in (0, 1)
    setting : {'a', 'b', 'c'} or SpaceSetting
        only the label is used, α is part of the plan
    delta : float
        free parameter of setting a in (0, 1/2)

    Returns
    -------
    RatePlan
    """
    label = setting.label if isinstance(setting, SpaceSetting) else str(setting).lower()
    if not 0 < p_star < 1:
        raise ValidationError(f'p* must be in (0, 1), got {p_star}')
    if label == 'a' and not 0 < delta < 0.5:
        raise ValidationError(f'δ must be in (0, 1/2), got {delta}')

    if label == 'a':
        lam = 1 / (2 - 2 * delta) if p_star <= 2 / 3 else p_star / (2 - p_star)
        alpha, rate = 1, min(1 - delta, 1 / p_star - 0.5)
    elif label == 'b':
        alpha = int(np.floor(1 / p_star + 0.5 + 1e-12))
        lam, rate = p_star / (2 - p_star), 1 / p_star - 0.5
        delta = None
    elif label == 'c':
        alpha = int(np.floor(1 / p_star + 1e-12)) + 1
        lam, rate = p_star, 1 / p_star
        delta = None
    else:
        raise ValidationError(f"setting must be one of 'a', 'b', 'c', got {setting!r}")

    space = SpaceSetting(label, alpha)
    space.check_lambda(lam)
    return RatePlan(setting=space, lam=lam, alpha=alpha, rate=rate, p_star=p_star, delta=delta)


def build_weights(setting, b, plan, lam=None):
    """ Weights tailored to a setting: weight-np for a, weight-per for b, weight-K for c

    Parameters
    ----------
    setting : SpaceSetting or str
    b : DecaySequence
    plan : RatePlan
        plan of the same setting label
    lam : float, optional
        overrides plan.lam

    Raises
    ------
    OverflowGuardError
        when (α s + 1)! exceeds the float64 range
    """
    label = setting.label if isinstance(setting, SpaceSetting) else str(setting).lower()
    if label != plan.setting.label:
        raise ValidationError(f'plan for setting {plan.setting.label} does not fit setting {label}')
    lam = plan.lam if lam is None else lam
    max_order = b.dim * plan.alpha
    if max_order + 1 > MAX_FACTORIAL_ORDER:
        raise OverflowGuardError(max_order, f'weights of order {max_order} need ({max_order}+1)!, '
                                            f'the maximal supported order is {MAX_FACTORIAL_ORDER - 1}')
    if label == 'a':
        return pod_weights(b, lam)
    if label == 'b':
        return spod_periodic_weights(b, plan.alpha, lam)
    return spod_k_weights(b, plan.alpha)


def _stirling_row(alpha):
    return np.array([stirling2(alpha, m) for m in range(1, alpha + 1)], dtype=np.float64)


def _norm_sum(setting, b, weights, exact=None):
    """ Sum (or max) over u in the norm bound without the C-dependent constant """
    dim = weights.dim
    b_values = b.values[:dim]
    if setting.label == 'a':
        if not weights.is_order_exact:
            raise ValidationError('the non-periodic norm bound needs product or POD weights')
        log_orders = 2 * log_factorial(np.arange(dim + 1) + 1) - weights.log_orders
        with np.errstate(divide='ignore'):
            factors = b_values[:, None] ** 2 / weights.factors
        values = order_recursion(log_orders, factors)
        return float(np.sum(values[0]))

    alpha = setting.alpha
    stirling = _stirling_row(alpha)
    m = np.arange(1, alpha + 1)
    # factors of sum_m (|m|+1)! prod_j b_j^m_j S(α, m_j), per dimension and m
    inner = b_values[:, None] ** m * stirling
    inner_log_orders = log_factorial(np.arange(dim * alpha + 1) + 1)

    if setting.label == 'c':
        # the largest b_j dominate each order: scan the prefixes u = {1..ℓ}
        numerator = prefix_log_totals(inner_log_orders, (2 * np.pi) ** alpha * inner)
        denominator = prefix_log_totals(weights.log_orders, weights.factors)
        return float(np.exp(np.max(numerator - denominator)))

    exact = dim <= MAX_ENUMERATION_DIM if exact is None else exact
    if exact:
        total = 0.0
        for subset in _subsets(dim):
            index = np.array(subset, dtype=np.int64) - 1
            inner_sum = np.exp(prefix_log_totals(inner_log_orders, inner[index])[-1])
            total += (2 * np.pi) ** (2 * alpha * len(subset)) * inner_sum ** 2 / weights.gamma(subset)
        return total
    if weights.alpha != alpha:
        raise ValidationError('for s > 12 the periodic norm bound needs SPOD weights of the same α')
    # Cauchy-Schwarz: (sum_m A_m)^2 / sum_m B_m <= sum_m A_m^2 / B_m, decomposable over orders
    log_orders = 2 * inner_log_orders - weights.log_orders
    with np.errstate(divide='ignore'):
        factors = (2 * np.pi) ** (2 * alpha) * inner ** 2 / weights.factors
    values = order_recursion(log_orders, factors)
    return float(np.sum(values[0]))


def norm_bound(setting, b, C, weights, dim=None, exact=None):
    """ Bound on the norm of the squared error (G - G_θ)^2

    - a: 16 C^4 sum_u (1/γ_u) ((|u|+1)! prod_{j in u} b_j)^2;
    - b: 16 C^4 sum_u (2π)^(2α|u|)/γ_u (sum_{m_u <= α} (|m_u|+1)! prod_j b_j^m_j S(α, m_j))^2;
    - c: 4 C^2 max_u (2π)^(α|u|)/γ_u sum_{m_u <= α} (|m_u|+1)! prod_j b_j^m_j S(α, m_j).

    Parameters
    ----------
    setting : SpaceSetting
    b : DecaySequence
    C : float
        bound on |G| and |G_θ|
    weights : WeightScheme
    dim : int, optional
        number of dimensions s, all of the weights by default
    exact : bool, optional
        setting b only: enumerate subsets (default for s <= 12) or use the Cauchy-Schwarz majorant

    Notes
    -----
    For setting c the maximum over u is taken over the prefixes {1..ℓ}: with b
    non-increasing, the ratio for a fixed size |u| is largest on the largest b_j.
    """
    dim = weights.dim if dim is None else dim
    if b.dim < dim:
        b = b.prefix(dim)
    if C == 0:
        return 0.0
    weights = weights.prefix(dim)
    constant = 4 * C ** 2 if setting.label == 'c' else 16 * C ** 4
    return constant * _norm_sum(setting, b, weights, exact=exact)


def appendix_constant(setting, b, plan, kappa_sl, dim, lam=None, exact=None):
    """ Constant C_{s,γ,λ} of the generalization bound for the tailored weights

    The product of sum_{u nonempty} γ_u^λ [bound factor]^|u| and the λ-th power of the
    norm sum with b_j replaced by κ S_L b_j (a maximum over u for setting c).

    Parameters
    ----------
    setting : SpaceSetting or str
    b : DecaySequence
    plan : RatePlan
    kappa_sl : float
        κ S_L >= 1
    dim : int
    lam : float, optional
        overrides plan.lam
    exact : bool, optional
        SPOD weights: enumerate subsets (default for s <= 12) or use the decomposable majorants

    Raises
    ------
    InadmissibleWeightsError
        if the zeta series behind the constant diverges for λ
    """
    label = setting.label if isinstance(setting, SpaceSetting) else str(setting).lower()
    space = plan.setting
    if label != space.label:
        raise ValidationError(f'plan for setting {space.label} does not fit setting {label}')
    if kappa_sl < 1:
        raise ValidationError(f'κ S_L must be at least 1, got {kappa_sl}')
    lam = plan.lam if lam is None else lam
    low, high = space.lambda_interval()
    if space.zeta_argument(lam) <= 1 or lam <= low:
        raise InadmissibleWeightsError(lam)
    if lam > high:
        raise ValidationError(f'λ = {lam} exceeds {high}')

    b = b.prefix(dim)
    weights = build_weights(space, b, plan, lam=lam)
    first = weighted_sum(weights, space.bound_factor(lam), lam, exact=exact)
    second = _norm_sum(space, b.scaled(kappa_sl), weights, exact=exact)
    if not np.isfinite(first * second ** lam):
        raise InadmissibleWeightsError(lam)
    logger.debug('appendix constant, setting %s, s=%d: %g x %g^%g', label, dim, first, second, lam)
    return first * second ** lam


def gap_bound(plan, C, constant, n):
    """ Bound on |E_G^2 - E_T^2| per output component

    (2 (16 C^4)^λ C_{s,γ,λ} / N)^(1/(2λ)) for settings a, b and (2 (4 C^2)^λ C_{s,γ,λ} / N)^(1/λ) for c.
    """
    lam = plan.lam
    if plan.setting.label == 'c':
        return (2 * (4 * C ** 2) ** lam * constant / n) ** (1 / lam)
    return (2 * (16 * C ** 4) ** lam * constant / n) ** (1 / (2 * lam))
