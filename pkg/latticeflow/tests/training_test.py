""" Tests for losses, regularization, Adam training, error estimation and metrics """
# pylint: disable=redefined-outer-name, missing-docstring
import numpy as np
import pandas as pd
import pytest

from latticeflow.lattice import GeneratingVector, lattice_points, shift_points, DecaySequence
from latticeflow.models import NetworkParams, TrainConfig, Adam, forward, loss_J, reg_R1, reg_R1_gradient, \
                               objective_gradient, glorot_init, train, estimate_generalization, \
                               write_training_log, GeneralizationMetrics
from latticeflow.exceptions import ValidationError, TrainingAborted


def target(points):
    return np.sin(2 * np.pi * points[:, 0]) * 0.3 + points[:, 1] ** 2


@pytest.fixture
def data():
    rng = np.random.default_rng(5)
    points = rng.uniform(size=(32, 3))
    return points, target(points)


@pytest.fixture
def net():
    return glorot_init([3, 5, 5, 1], rng=11)


class TestConfig:
    @pytest.mark.parametrize('kwargs', [dict(lr=0), dict(tol=0), dict(m=5), dict(m=0), dict(max_epochs=-1),
                                        dict(l2=-1.0), dict(l1=-0.5)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            TrainConfig(**kwargs)

    def test_defaults(self):
        config = TrainConfig()
        assert (config.lr, config.max_epochs, config.tol, config.m) == (1e-4, 40000, 1e-3, 6)
        assert (config.beta1, config.beta2, config.eps) == (0.9, 0.999, 1e-8)
        assert config.mode == 'standard'
        assert TrainConfig(l1=1e-3).mode == 'tailored'

    def test_metadata(self):
        metadata = TrainConfig(l1=1e-3, seed=4).metadata()
        assert metadata['mode'] == 'tailored'
        assert metadata['seed'] == 4
        assert 'optimizer' in metadata


class TestLoss:
    def test_loss_definition(self, net, data):
        points, targets = data
        residuals = forward(net, points)[:, 0] - targets
        assert loss_J(net, points, targets) == pytest.approx(np.mean(residuals ** 2))

    def test_empty_batch(self, net):
        with pytest.raises(ValidationError):
            loss_J(net, np.zeros((0, 3)), np.zeros(0))

    def test_reg_R1(self):
        net = NetworkParams.zeros([2, 2, 2, 1])
        net.weights[0][:] = [[0.5, 0.1], [-0.5, 0.0]]
        b = [0.5, 0.2]
        # L = 2: (W L / b)^6 averaged over the 4 entries
        expected = np.mean(np.array([[2.0, 1.0], [2.0, 0.0]]) ** 6)
        assert reg_R1(net, b, m=6) == pytest.approx(expected)

    def test_reg_R1_gradient(self, net):
        b = DecaySequence.closed_form(0.5, 2.5, 3)
        analytic = reg_R1_gradient(net, b, m=4)
        h = 1e-6
        numeric = np.empty_like(analytic)
        for index in np.ndindex(*analytic.shape):
            plus, minus = net.copy(), net.copy()
            plus.weights[0][index] += h
            minus.weights[0][index] -= h
            numeric[index] = (reg_R1(plus, b, m=4) - reg_R1(minus, b, m=4)) / (2 * h)
        assert np.allclose(analytic, numeric, rtol=1e-5, atol=1e-5)

    def test_reg_R1_needs_nonzero_decay(self, net):
        with pytest.raises(ValidationError):
            reg_R1(net, [1.0, 0.0, 1.0])
        with pytest.raises(ValidationError):
            reg_R1(net, [1.0, 1.0])

    def test_objective_gradient(self, net, data):
        points, targets = data
        b = DecaySequence.closed_form(0.5, 2.5, 3)
        config = TrainConfig(l2=1e-3, l1=1e-4, m=4)
        loss, objective, gradient = objective_gradient(net, points, targets, config, b)
        theta = net.flatten()
        assert objective == pytest.approx(loss + 1e-3 * theta @ theta + 1e-4 * reg_R1(net, b, 4))

        def value(vector):
            return objective_gradient(net.unflatten(vector), points, targets, config, b)[1]

        h = 1e-6
        numeric = np.array([(value(theta + h * e) - value(theta - h * e)) / (2 * h) for e in np.eye(theta.size)])
        assert np.allclose(gradient, numeric, rtol=1e-4, atol=1e-7)

    def test_tailored_needs_decay(self, net, data):
        points, targets = data
        with pytest.raises(ValidationError):
            objective_gradient(net, points, targets, TrainConfig(l1=1e-3))


class TestInit:
    def test_glorot(self):
        net = glorot_init([50, 32, 32, 1], rng=0, activation='swish_5', periodic=True)
        assert net.dims == [50, 32, 32, 1]
        assert np.abs(net.weights[0]).max() <= np.sqrt(6 / 82)
        assert all(np.all(v == 0) for v in net.biases)
        assert net.periodic and net.activation.label == 'swish_5'

    def test_reproducible(self):
        assert glorot_init([3, 4, 1], rng=9) == glorot_init([3, 4, 1], rng=9)
        assert glorot_init([3, 4, 1], rng=9) != glorot_init([3, 4, 1], rng=10)


class TestAdam:
    def test_first_step(self):
        adam = Adam(3, lr=0.1)
        theta = adam.step(np.zeros(3), np.array([1.0, -2.0, 0.0]))
        # bias-corrected first step moves by lr in the sign direction
        assert np.allclose(theta, [-0.1, 0.1, 0.0], atol=1e-7)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Adam(3, lr=0)
        with pytest.raises(ValueError):
            Adam(3, betas=(1.0, 0.999))


class TestTrain:
    def test_zero_epochs(self, net, data):
        points, targets = data
        result = train(TrainConfig(max_epochs=0), net, points, targets)
        assert result.epochs == 0
        assert result.net == net
        assert result.final_error == pytest.approx(np.sqrt(loss_J(net, points, targets)))

    def test_max_epochs(self, net, data):
        points, targets = data
        result = train(TrainConfig(lr=1e-2, max_epochs=50, tol=1e-12), net, points, targets)
        assert result.stop_reason == 'max-epochs'
        assert result.epochs == 50
        assert result.trace[-1] < result.trace[0]
        assert result.final_error == pytest.approx(np.sqrt(loss_J(result.net, points, targets)))

    def test_tolerance(self, net, data):
        points, targets = data
        result = train(TrainConfig(max_epochs=10, tol=10.0), net, points, targets)
        assert result.stop_reason == 'tolerance'
        assert result.epochs == 1
        assert result.net == net

    def test_input_not_modified(self, net, data):
        points, targets = data
        before = net.copy()
        train(TrainConfig(lr=1e-2, max_epochs=5), net, points, targets)
        assert net == before

    def test_deterministic(self, net, data):
        points, targets = data
        config = TrainConfig(lr=1e-2, max_epochs=20, l1=1e-5)
        b = DecaySequence.closed_form(0.5, 2.5, 3)
        first = train(config, net, points, targets, b=b)
        second = train(config, net, points, targets, b=b)
        assert first.net == second.net
        assert np.array_equal(first.trace, second.trace)

    def test_abort(self, data):
        points, targets = data
        net = glorot_init([3, 4, 1], rng=1)
        net.weights[-1][:] = np.inf
        with pytest.raises(TrainingAborted) as error:
            train(TrainConfig(max_epochs=10), net, points, targets)
        assert error.value.epoch == 1

    def test_target_shape(self, net, data):
        points, _ = data
        with pytest.raises(ValidationError):
            train(TrainConfig(max_epochs=1), net, points, np.zeros((points.shape[0], 2)))

    def test_training_log(self, net, data, tmp_path):
        points, targets = data
        result = train(TrainConfig(lr=1e-2, max_epochs=7), net, points, targets)
        write_training_log(result, tmp_path / 'log.csv')
        frame = pd.read_csv(tmp_path / 'log.csv')
        assert frame.columns.tolist() == ['epoch', 'E_T', 'objective']
        assert frame['epoch'].tolist() == list(range(1, 8))
        assert np.allclose(frame['E_T'], result.trace, rtol=1e-15)


class TestEstimate:
    @pytest.fixture
    def gv(self):
        return GeneratingVector(256, [1, 99, 57])

    def test_values(self, net, data, gv):
        points, targets = data
        shift = np.array([0.1, 0.4, 0.7])
        estimate = estimate_generalization(net, target, gv, shift, points=points, targets=targets, seed=3)
        evaluation = shift_points(lattice_points(gv), shift)
        expected = np.sqrt(np.mean((forward(net, evaluation)[:, 0] - target(evaluation)) ** 2))
        assert estimate.generalization_error == pytest.approx(expected)
        assert estimate.train_error == pytest.approx(np.sqrt(loss_J(net, points, targets)))
        assert estimate.gap == pytest.approx(abs(estimate.generalization_error - estimate.train_error))
        assert (estimate.M, estimate.seed) == (256, 3)

    def test_embedded(self, net, gv):
        shift = np.zeros(3)
        full = estimate_generalization(net, target, gv.restrict(64), shift, train_error=0.0)
        embedded = estimate_generalization(net, target, gv, shift, M=64, train_error=0.0)
        assert embedded.generalization_error == pytest.approx(full.generalization_error, rel=1e-14)
        assert embedded.M == 64

    def test_needs_more_points(self, net, data, gv):
        points, targets = data
        with pytest.raises(ValidationError):
            estimate_generalization(net, target, gv, np.zeros(3), M=32, points=points, targets=targets)

    def test_needs_training_error(self, net, gv):
        with pytest.raises(ValidationError):
            estimate_generalization(net, target, gv, np.zeros(3))

    def test_metrics(self, net, data, gv):
        points, targets = data
        shift = np.array([0.3, 0.2, 0.1])
        metrics = GeneralizationMetrics(net, target, points, targets, gv, shift)
        values = metrics.evaluate(['train_error', 'generalization_error', 'gap'])
        estimate = estimate_generalization(net, target, gv, shift, points=points, targets=targets)
        assert values['train_error'] == pytest.approx(estimate.train_error)
        assert values['generalization_error'] == pytest.approx(estimate.generalization_error)
        assert values['gap'] == pytest.approx(estimate.gap)

    def test_metrics_aggregation(self, data, gv):
        points, _ = data
        net = glorot_init([3, 4, 2], rng=2)
        targets = np.column_stack([target(points), -target(points)])
        metrics = GeneralizationMetrics(net, lambda y: np.column_stack([target(y), -target(y)]),
                                        points, targets, gv, np.zeros(3))
        per_output = metrics.evaluate('train_error', None, True)
        assert per_output.shape == (2,)
        assert metrics.evaluate('train_error', 'max', True) == pytest.approx(per_output.max())
        assert metrics.evaluate('train_error') == pytest.approx(np.sqrt(np.sum(per_output ** 2)))
        with pytest.raises(ValueError):
            metrics.evaluate('gap', 'median', True)
