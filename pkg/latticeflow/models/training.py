""" Loss, standard and tailored regularization, full-batch Adam training and error estimation """
import logging
from dataclasses import dataclass, field, asdict

import numpy as np
import pandas as pd
from tqdm import tqdm

from .network import NetworkParams, forward, forward_cache, backward
from .metrics import GeneralizationMetrics
from .._const import FLOAT_FORMAT, TRAINING_LOG_COLUMNS
from ..exceptions import ValidationError, TrainingAborted
from ..utils_random import make_rng


logger = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    """ Hyperparameters of a training run

    Attributes
    ----------
    lr : float
        Adam step size
    max_epochs : int
        epoch cap; 0 leaves the initialization untouched
    tol : float
        stop as soon as E_T = sqrt(J) <= tol
    l2 : float
        coefficient λ of ||θ||_2^2, summed over all matrices and biases
    l1 : float
        coefficient λ_1 of the tailored regularization R_1
    m : int
        positive even power inside R_1
    seed : int
        seed the initialization was drawn with, recorded in outputs
    beta1, beta2, eps : float
        Adam moments and denominator offset
    """
    lr: float = 1e-4
    max_epochs: int = 40000
    tol: float = 1e-3
    l2: float = 0.0
    l1: float = 0.0
    m: int = 6
    seed: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        if not self.lr > 0:
            raise ValidationError(f'learning rate must be positive, got {self.lr}')
        if not self.tol > 0:
            raise ValidationError(f'tolerance must be positive, got {self.tol}')
        if self.m < 2 or self.m % 2:
            raise ValidationError(f'R_1 power m must be an even integer >= 2, got {self.m}')
        if self.max_epochs < 0:
            raise ValidationError(f'epoch cap must be non-negative, got {self.max_epochs}')
        if self.l2 < 0 or self.l1 < 0:
            raise ValidationError('regularization coefficients must be non-negative')

    @property
    def mode(self):
        """ 'tailored' when R_1 is active, 'standard' otherwise """
        return 'tailored' if self.l1 > 0 else 'standard'

    def metadata(self):
        """ Hyperparameters together with the choices the objective leaves open """
        return {**asdict(self),
                'mode': self.mode,
                'l2_scope': 'all weights and biases',
                'r1_scope': 'first-layer weights W_0',
                'optimizer': 'adam, full batch',
                'stop_check': 'sqrt(J) before regularization terms'}


@dataclass
class TrainResult:
    """ Final parameters and the per-epoch trace of a training run """
    net: NetworkParams
    trace: np.ndarray
    objective: np.ndarray
    epochs: int
    stop_reason: str
    final_error: float = field(default=np.nan)


@dataclass
class ErrorEstimate:
    """ Training error, estimated generalization error and their gap """
    train_error: float
    generalization_error: float
    gap: float
    M: int
    seed: int = field(default=None)


def _as_targets(targets, n):
    targets = np.asarray(targets, dtype=np.float64)
    return targets.reshape(n, -1)


def loss_J(net, points, targets):
    """ J = (1/N) sum_k ||G(y_k) - G_θ(y_k)||_2^2 """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[0] == 0:
        raise ValidationError('loss of an empty batch')
    targets = _as_targets(targets, points.shape[0])
    residuals = forward(net, points) - targets
    return float(np.mean(np.sum(residuals ** 2, axis=1)))


def _decay_values(b, dim):
    values = np.asarray(getattr(b, 'values', b), dtype=np.float64).ravel()
    if values.size < dim:
        raise ValidationError(f'decay sequence has {values.size} terms, the network has {dim} inputs')
    values = values[:dim]
    if np.any(values == 0):
        raise ValidationError('tailored regularization needs b_j != 0')
    return values


def reg_R1(net, b, m=6):
    """ R_1 = (1/s) sum_j (1/d_1) sum_p (W_0[p, j]^2 L^2 / b_j^2)^(m/2) """
    scaled = net.weights[0] * net.depth / _decay_values(b, net.dim)
    return float(np.mean(scaled ** m))


def reg_R1_gradient(net, b, m=6):
    """ Gradient of :func:`reg_R1` with respect to W_0 """
    factor = net.depth / _decay_values(b, net.dim)
    w = net.weights[0]
    return m * w ** (m - 1) * factor ** m / w.size


def objective_gradient(net, points, targets, config, b=None):
    """ J + λ ||θ||^2 + λ_1 R_1 and its gradient as a flat vector

    Returns
    -------
    tuple
        (J, objective, flat gradient)
    """
    targets = _as_targets(targets, points.shape[0])
    outputs, cache = forward_cache(net, points)
    residuals = outputs - targets
    loss = float(np.mean(np.sum(residuals ** 2, axis=1)))
    gradient = backward(net, points, residuals, cache=cache)
    theta = net.flatten()

    objective = loss
    flat = gradient.flatten()
    if config.l2:
        objective += config.l2 * float(theta @ theta)
        flat = flat + 2 * config.l2 * theta
    if config.l1:
        if b is None:
            raise ValidationError('tailored regularization needs a decay sequence')
        objective += config.l1 * reg_R1(net, b, config.m)
        first = net.weights[0].size
        flat[:first] += config.l1 * reg_R1_gradient(net, b, config.m).ravel()
    return loss, objective, flat


def glorot_init(dims, rng=None, activation='sigmoid_1', periodic=False):
    """ Weights uniform on ±sqrt(6 / (fan_in + fan_out)), biases zero """
    rng = make_rng(rng)
    net = NetworkParams.zeros(dims, activation, periodic)
    weights = []
    for w in net.weights:
        fan_out, fan_in = w.shape
        limit = np.sqrt(6 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=w.shape))
    return NetworkParams(weights, net.biases, net.activation, net.periodic)


class Adam:
    """ Adaptive moment estimation over a flat parameter vector

    Parameters
    ----------
    size : int
        number of parameters
    lr : float
    betas : tuple of float
    eps : float
    """
    def __init__(self, size, lr=1e-4, betas=(0.9, 0.999), eps=1e-8):
        if lr <= 0:
            raise ValueError(f"Invalid learning rate: {lr}")
        if eps < 0:
            raise ValueError(f"Invalid epsilon value: {eps}")
        if not 0.0 <= betas[0] < 1.0:
            raise ValueError(f"Invalid beta parameter at index 0: {betas[0]}")
        if not 0.0 <= betas[1] < 1.0:
            raise ValueError(f"Invalid beta parameter at index 1: {betas[1]}")
        self.lr, self.betas, self.eps = lr, betas, eps
        self.exp_avg = np.zeros(size)
        self.exp_avg_sq = np.zeros(size)
        self.step_count = 0

    def step(self, theta, gradient):
        """ Parameters after one update """
        beta1, beta2 = self.betas
        self.step_count += 1
        self.exp_avg = beta1 * self.exp_avg + (1 - beta1) * gradient
        self.exp_avg_sq = beta2 * self.exp_avg_sq + (1 - beta2) * gradient ** 2
        corrected_avg = self.exp_avg / (1 - beta1 ** self.step_count)
        corrected_sq = self.exp_avg_sq / (1 - beta2 ** self.step_count)
        return theta - self.lr * corrected_avg / (np.sqrt(corrected_sq) + self.eps)


def train(config, net, points, targets, b=None, bar=False):
    """ Full-batch Adam on J + λ ||θ||^2 + λ_1 R_1

    Every epoch evaluates E_T = sqrt(J) at the current parameters first. The run stops with
    'tolerance' when E_T <= tol and with 'max-epochs' at the epoch cap; the parameters are
    updated only between recorded epochs, so the last trace entry is E_T of the returned net.

    Parameters
    ----------
    config : TrainConfig
    net : NetworkParams
        initial parameters, not modified
    points : np.ndarray
        training inputs (N, s)
    targets : np.ndarray
        target values (N,) or (N, N_obs)
    b : DecaySequence or array-like, optional
        required when config.l1 > 0
    bar : bool
        show a progress bar over epochs

    Raises
    ------
    TrainingAborted
        if the objective becomes NaN or infinite
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[0] == 0:
        raise ValidationError('training on an empty point set')
    targets = _as_targets(targets, points.shape[0])
    if targets.shape[1] != net.n_obs:
        raise ValidationError(f'targets have {targets.shape[1]} components, the network {net.n_obs}')

    theta = net.flatten()
    optimizer = Adam(theta.size, lr=config.lr, betas=(config.beta1, config.beta2), eps=config.eps)
    trace, objectives = [], []
    stop_reason = 'max-epochs'
    current = net

    progress = tqdm(range(1, config.max_epochs + 1), disable=not bar, desc='train')
    for epoch in progress:
        loss, objective, gradient = objective_gradient(current, points, targets, config, b)
        if not np.isfinite(objective) or not np.all(np.isfinite(gradient)):
            raise TrainingAborted(epoch, objective)
        error = np.sqrt(loss)
        trace.append(error)
        objectives.append(objective)
        if error <= config.tol:
            stop_reason = 'tolerance'
            break
        if epoch == config.max_epochs:
            break
        theta = optimizer.step(theta, gradient)
        current = net.unflatten(theta)
        if bar and epoch % 100 == 0:
            progress.set_postfix(E_T=f'{error:.3e}')

    final_error = trace[-1] if trace else np.sqrt(loss_J(current, points, targets))
    logger.debug('training stopped by %s after %d epochs, E_T = %.3e', stop_reason, len(trace), final_error)
    return TrainResult(net=current, trace=np.array(trace), objective=np.array(objectives),
                       epochs=len(trace), stop_reason=stop_reason, final_error=float(final_error))


def estimate_generalization(net, target, gv_eval, shift_eval, M=None, train_error=None,
                            points=None, targets=None, seed=None):
    """ E_T, the estimate Ẽ_G on M shifted evaluation lattice points and the gap |Ẽ_G - E_T|

    Parameters
    ----------
    net : NetworkParams
    target : callable
        G evaluated on a batch (M, s)
    gv_eval : GeneratingVector
        evaluation lattice; for M < N_eval the embedded rule with M points is used
    shift_eval : array-like
        shift independent of the training shift
    M : int, optional
        number of evaluation points, gv_eval.n by default
    train_error : float, optional
        E_T of the run; computed from `points` and `targets` when omitted
    points, targets : np.ndarray, optional
        training data; M must exceed their number
    seed : int, optional
        seed of the evaluation shift, recorded in the result
    """
    M = gv_eval.n if M is None else int(M)
    if M != gv_eval.n:
        gv_eval = gv_eval.restrict(M)
    if points is not None:
        points = np.atleast_2d(points)
        if M <= points.shape[0]:
            raise ValidationError(f'M = {M} evaluation points must exceed the {points.shape[0]} training points')
    if train_error is None and (points is None or targets is None):
        raise ValidationError('either the training error or the training data is needed')

    metrics = GeneralizationMetrics(net, target, points, targets, gv_eval, shift_eval)
    if train_error is None:
        train_error = metrics.evaluate('train_error')
    generalization_error = float(metrics.evaluate('generalization_error'))
    train_error = float(train_error)
    return ErrorEstimate(train_error=train_error, generalization_error=generalization_error,
                         gap=abs(generalization_error - train_error), M=M, seed=seed)


def write_training_log(result, path):
    """ CSV with columns epoch, E_T, objective """
    frame = pd.DataFrame({'epoch': np.arange(1, result.epochs + 1),
                          'E_T': result.trace,
                          'objective': result.objective}, columns=TRAINING_LOG_COLUMNS)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return frame
