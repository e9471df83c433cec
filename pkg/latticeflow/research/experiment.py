""" Experiment grid over activations, regularization modes, numbers of points and seeds """
import os
import time
import logging
from dataclasses import dataclass, field, asdict
from functools import partial
from itertools import product

import dill
import numpy as np
import pandas as pd
import multiprocess as mp
from tqdm import tqdm

from .target import PeriodicAlgebraicTarget
from .results import records_to_frame, aggregate, plot_data, write_csv
from ..config import Config
from ..lattice.core import lattice_points, shift_points, random_shift, monte_carlo_points, load_generating_vector
from ..lattice.cbc import cbc_construct
from ..lattice.weights import select_rate_plan, build_weights
from ..models.activations import ActivationKind
from ..models.training import TrainConfig, glorot_init, train, estimate_generalization
from ..baselines.kernel import KernelSpec, kernel_fit, kernel_predict
from ..baselines.trig import IndexSet, trig_coefficients, trig_evaluate
from .._const import EVAL_POINTS, BASELINE_COLUMNS
from ..exceptions import ValidationError, TrainingAborted
from ..utils import is_power_of_two, create_logger, close_logger
from ..utils_random import stream_rng, INIT_STREAM, TRAIN_SHIFT_STREAM, EVAL_SHIFT_STREAM, MC_POINTS_STREAM


logger = logging.getLogger(__name__)

HYPERPARAMETER_SETS = {1: (3, 32), 2: (12, 30)}
MODES = ('tailored', 'standard')
POINT_SOURCES = ('lattice', 'mc')

DEFAULT_CONFIG = Config({
    'target': {'eta': 0.5, 'q': 2.5, 'dim': 10},
    'network': {'set': 1, 'depth': 3, 'width': 32, 'n_obs': 1, 'periodic': True},
    'activations': ['sigmoid_1'],
    'modes': ['tailored', 'standard'],
    'grid': {'n': [64, 128, 256, 512, 1024], 'repetitions': 5},
    'seed': 0,
    'train': {'lr': 1e-4, 'max_epochs': 40000, 'tol': 1e-3, 'l2': 1e-8, 'l1': 1e-8, 'm': 6},
    'eval': {'points': EVAL_POINTS},
    'baseline': {'alpha': 2, 'eval_points': 4096},
    'gv': None,
    'points': 'lattice',
    'threads': 1,
})


@dataclass
class ExperimentSpec:
    """ Everything a run of the experiment grid depends on

    Cells are all combinations of activation, mode, N and seed; seed i drives both the
    Glorot initialization and the training shift of its cell, the evaluation shift comes
    from an independent stream of the same seed.

    Attributes
    ----------
    hyperparameter_set : int
        1 for (L, d) = (3, 32), 2 for (12, 30), 0 for `depth` and `width` as given
    grid : tuple of int
        ascending powers of 2
    repetitions : int
        number of seeds per cell, starting at `seed`
    eval_points : int
        M, a power of 2 above every N of the grid
    gv : str or None
        embedded generating vector file; CBC-constructed when None
    points : {'lattice', 'mc'}
        training points: shifted lattice or i.i.d. uniform
    """
    eta: float = 0.5
    q: float = 2.5
    dim: int = 10
    hyperparameter_set: int = 1
    depth: int = 3
    width: int = 32
    n_obs: int = 1
    periodic: bool = True
    activations: tuple = ('sigmoid_1',)
    modes: tuple = MODES
    grid: tuple = (64, 128, 256, 512, 1024)
    repetitions: int = 5
    seed: int = 0
    lr: float = 1e-4
    max_epochs: int = 40000
    tol: float = 1e-3
    l2: float = 1e-8
    l1: float = 1e-8
    m: int = 6
    eval_points: int = EVAL_POINTS
    gv: str = None
    points: str = 'lattice'
    threads: int = 1
    baseline_alpha: int = 2
    baseline_eval_points: int = 4096

    def __post_init__(self):
        if self.hyperparameter_set in HYPERPARAMETER_SETS:
            self.depth, self.width = HYPERPARAMETER_SETS[self.hyperparameter_set]
        elif self.hyperparameter_set != 0:
            raise ValidationError(f'hyperparameter set must be 0, 1 or 2, got {self.hyperparameter_set}')
        self.activations = tuple(ActivationKind.from_name(name).label for name in self.activations)
        self.modes = tuple(self.modes)
        self.grid = tuple(int(n) for n in self.grid)

        if not self.grid or not all(is_power_of_two(n) for n in self.grid):
            raise ValidationError(f'grid must consist of powers of 2, got {self.grid}')
        if list(self.grid) != sorted(set(self.grid)):
            raise ValidationError(f'grid must be strictly ascending, got {self.grid}')
        if self.repetitions < 1:
            raise ValidationError(f'repetitions must be at least 1, got {self.repetitions}')
        if unknown := set(self.modes) - set(MODES):
            raise ValidationError(f'unknown modes {sorted(unknown)}, expected {MODES}')
        if self.points not in POINT_SOURCES:
            raise ValidationError(f'points must be one of {POINT_SOURCES}, got {self.points!r}')
        if not is_power_of_two(self.eval_points) or self.eval_points <= self.grid[-1]:
            raise ValidationError(f'M = {self.eval_points} must be a power of 2 above N = {self.grid[-1]}')
        if not is_power_of_two(self.baseline_eval_points):
            raise ValidationError(f'baseline evaluation points must be a power of 2, got {self.baseline_eval_points}')
        if self.depth < 1 or self.width < 1 or self.n_obs < 1:
            raise ValidationError('depth, width and number of outputs must be positive')
        if self.threads < 1:
            raise ValidationError(f'threads must be positive, got {self.threads}')

    @classmethod
    def from_config(cls, config=None):
        """ Spec from a config with the keys of DEFAULT_CONFIG """
        config = DEFAULT_CONFIG + (config if config is not None else {})
        return cls(eta=config['target/eta'], q=config['target/q'], dim=config['target/dim'],
                   hyperparameter_set=config['network/set'], depth=config['network/depth'],
                   width=config['network/width'], n_obs=config['network/n_obs'],
                   periodic=config['network/periodic'],
                   activations=config['activations'], modes=config['modes'],
                   grid=config['grid/n'], repetitions=config['grid/repetitions'], seed=config['seed'],
                   lr=config['train/lr'], max_epochs=config['train/max_epochs'], tol=config['train/tol'],
                   l2=config['train/l2'], l1=config['train/l1'], m=config['train/m'],
                   eval_points=config['eval/points'], gv=config['gv'], points=config['points'],
                   threads=config['threads'], baseline_alpha=config['baseline/alpha'],
                   baseline_eval_points=config['baseline/eval_points'])

    def to_config(self):
        """ Config that :meth:`from_config` maps back to this spec """
        return Config({
            'target': {'eta': self.eta, 'q': self.q, 'dim': self.dim},
            'network': {'set': self.hyperparameter_set, 'depth': self.depth, 'width': self.width,
                        'n_obs': self.n_obs, 'periodic': self.periodic},
            'activations': list(self.activations),
            'modes': list(self.modes),
            'grid': {'n': list(self.grid), 'repetitions': self.repetitions},
            'seed': self.seed,
            'train': {'lr': self.lr, 'max_epochs': self.max_epochs, 'tol': self.tol,
                      'l2': self.l2, 'l1': self.l1, 'm': self.m},
            'eval': {'points': self.eval_points},
            'baseline': {'alpha': self.baseline_alpha, 'eval_points': self.baseline_eval_points},
            'gv': self.gv,
            'points': self.points,
            'threads': self.threads,
        })

    @property
    def dims(self):
        """ Layer sizes [s, d, ..., d, N_obs] """
        return [self.dim] + [self.width] * self.depth + [self.n_obs]

    @property
    def target(self):
        return PeriodicAlgebraicTarget(self.eta, self.q, self.dim)

    @property
    def seeds(self):
        return list(range(self.seed, self.seed + self.repetitions))

    @property
    def n_max(self):
        return max(self.eval_points, self.grid[-1], self.baseline_eval_points)

    def train_config(self, mode, seed):
        return TrainConfig(lr=self.lr, max_epochs=self.max_epochs, tol=self.tol, l2=self.l2,
                           l1=self.l1 if mode == 'tailored' else 0.0, m=self.m, seed=seed)

    def cells(self):
        """ (activation, mode, N, seed) in the order records are written """
        return list(product(self.activations, self.modes, self.grid, self.seeds))

    def metadata(self):
        """ Choices recorded next to the results """
        return {**self.train_config('tailored', self.seed).metadata(),
                'aggregation': 'arithmetic mean over seeds, aborted runs excluded',
                'seed_pairing': 'seed i draws the initialization and the training shift of its cell',
                'lattice': self.gv or f'CBC, weight-per weights, N = {self.n_max}'}


@dataclass
class ExperimentRecord:
    """ Outcome of one (activation, mode, N, seed) cell; errors are NaN for an aborted run """
    activation: str
    mode: str
    N: int
    seed: int
    E_T: float
    E_G_est: float
    gap: float
    epochs: int
    wall_s: float
    stop_reason: str = ''
    beta: np.ndarray = field(default=None, repr=False)

    def to_row(self):
        row = asdict(self)
        return {key: row[key] for key in ('activation', 'mode', 'N', 'seed', 'E_T', 'E_G_est',
                                          'gap', 'epochs', 'wall_s')}


def experiment_lattice(spec):
    """ Embedded generating vector with N_max points serving every N of the grid and M

    Loaded from `spec.gv` when given, otherwise built by CBC in the periodic setting with
    the weights tailored to the target's decay sequence.
    """
    if spec.gv is not None:
        gv = load_generating_vector(spec.gv, dim=spec.dim)
        if gv.dim < spec.dim:
            raise ValidationError(f'{spec.gv} has {gv.dim} components, the target needs {spec.dim}')
        if gv.n < spec.n_max or gv.n % spec.n_max:
            raise ValidationError(f'{spec.gv} has N = {gv.n}, the experiment needs a multiple of {spec.n_max}')
        return gv

    b = spec.target.b
    plan = select_rate_plan(b.p_star, 'b')
    weights = build_weights(plan.setting, b, plan)
    logger.info('CBC construction: N = %d, s = %d, α = %d, λ = %.4f', spec.n_max, spec.dim, plan.alpha, plan.lam)
    return cbc_construct(spec.n_max, spec.dim, weights, plan.setting)


def training_points(spec, gv, n, seed):
    if spec.points == 'mc':
        return monte_carlo_points(stream_rng(seed, MC_POINTS_STREAM), n, spec.dim)
    shift = random_shift(stream_rng(seed, TRAIN_SHIFT_STREAM), spec.dim)
    return shift_points(lattice_points(gv.restrict(n)), shift)


def run_cell(spec, gv, cell):
    """ Train one network and estimate its generalization error """
    activation, mode, n, seed = cell
    start = time.perf_counter()
    target = spec.target
    points = training_points(spec, gv, n, seed)
    targets = target(points)
    net = glorot_init(spec.dims, rng=stream_rng(seed, INIT_STREAM), activation=activation, periodic=spec.periodic)

    try:
        result = train(spec.train_config(mode, seed), net, points, targets, b=target.b)
    except TrainingAborted as error:
        return ExperimentRecord(activation, mode, n, seed, np.nan, np.nan, np.nan, error.epoch,
                                time.perf_counter() - start, stop_reason='aborted')

    shift = random_shift(stream_rng(seed, EVAL_SHIFT_STREAM), spec.dim)
    estimate = estimate_generalization(result.net, target, gv, shift, M=spec.eval_points,
                                       train_error=result.final_error, points=points, seed=seed)
    beta = np.max(np.abs(result.net.weights[0]), axis=0)
    return ExperimentRecord(activation, mode, n, seed, estimate.train_error, estimate.generalization_error,
                            estimate.gap, result.epochs, time.perf_counter() - start,
                            stop_reason=result.stop_reason, beta=beta)


def _log_record(log, record):
    if record.stop_reason == 'aborted':
        log.warning('%s/%s N=%d seed=%d aborted at epoch %d', record.activation, record.mode,
                    record.N, record.seed, record.epochs)
    else:
        log.info('%s/%s N=%d seed=%d finished: E_T=%.4e E_G=%.4e gap=%.4e epochs=%d (%s)',
                 record.activation, record.mode, record.N, record.seed, record.E_T, record.E_G_est,
                 record.gap, record.epochs, record.stop_reason)


def run_experiment(spec, out=None, bar=False, loglevel='info'):
    """ Run every cell of the grid and aggregate over seeds

    Parameters
    ----------
    spec : ExperimentSpec
    out : str, optional
        directory for records.csv, aggregated.csv, plot_data.csv, config.txt, metadata.txt,
        spec.dill and experiment.log
    bar : bool
        show a progress bar over cells
    loglevel : str

    Returns
    -------
    records : list of ExperimentRecord
        in cell order, independent of `spec.threads`
    aggregated : pandas.DataFrame
    """
    if out is not None:
        os.makedirs(out, exist_ok=True)
        log = create_logger(f'{__name__}.{os.path.abspath(out)}', os.path.join(out, 'experiment.log'), loglevel)
    else:
        log = logger

    try:
        gv = experiment_lattice(spec)
        cells = spec.cells()
        worker = partial(run_cell, spec, gv)
        log.info('running %d cells with %d thread(s)', len(cells), spec.threads)

        records = []
        progress = tqdm(total=len(cells), disable=not bar, desc='experiment')
        if spec.threads > 1:
            with mp.Pool(spec.threads) as pool:
                for record in pool.imap(worker, cells):
                    _log_record(log, record)
                    records.append(record)
                    progress.update(1)
        else:
            for cell in cells:
                log.info('%s/%s N=%d seed=%d started', *cell)
                record = worker(cell)
                _log_record(log, record)
                records.append(record)
                progress.update(1)
        progress.close()

        frame = records_to_frame(records)
        aggregated = aggregate(frame)
        if out is not None:
            write_csv(frame, os.path.join(out, 'records.csv'))
            write_csv(aggregated, os.path.join(out, 'aggregated.csv'))
            write_csv(plot_data(aggregated), os.path.join(out, 'plot_data.csv'))
            spec.to_config().dump(os.path.join(out, 'config.txt'), header='experiment config')
            Config(spec.metadata()).dump(os.path.join(out, 'metadata.txt'), header='run metadata')
            with open(os.path.join(out, 'spec.dill'), 'wb') as file:
                dill.dump(spec, file)
            log.info('results written to %s', out)
    finally:
        if log is not logger:
            close_logger(log)
    return records, aggregated


def _l2_error(predictions, values):
    return float(np.sqrt(np.mean((predictions - values) ** 2)))


def run_baseline(spec, gv=None):
    """ L2 errors of kernel interpolation and the truncated trig series on the grid of N

    Both methods sample the target at the unshifted lattice of each N. The kernel has
    smoothness `baseline_alpha` and product weights b_j; the index set is the weighted
    hyperbolic cross with weights b_j and at most N elements. Errors are measured on a
    shifted evaluation lattice with `baseline_eval_points` points.

    Returns
    -------
    pandas.DataFrame
        columns method, N, L2_error
    """
    gv = experiment_lattice(spec) if gv is None else gv
    target = spec.target
    b = target.b.values
    kernel = KernelSpec(spec.baseline_alpha, b)
    evaluation = shift_points(lattice_points(gv.restrict(spec.baseline_eval_points)),
                              random_shift(stream_rng(spec.seed, EVAL_SHIFT_STREAM), spec.dim))
    reference = target(evaluation)

    rows = []
    for n in spec.grid:
        rule = gv.restrict(n)
        samples = target(lattice_points(rule))
        coefficients = kernel_fit(samples, rule, kernel)
        rows.append(('kernel', n, _l2_error(kernel_predict(coefficients, rule, kernel, evaluation), reference)))

        index_set = IndexSet.for_budget(b, n)
        series = trig_coefficients(samples, rule, index_set)
        rows.append(('trig', n, _l2_error(trig_evaluate(series, index_set, evaluation), reference)))
        logger.info('baselines at N=%d: kernel %.4e, trig %.4e (|A| = %d)', n, rows[-2][2], rows[-1][2],
                    len(index_set))
    return pd.DataFrame(rows, columns=BASELINE_COLUMNS)
