""" Tests for network parameters, forward and backward passes and checkpoints """
# pylint: disable=redefined-outer-name, missing-docstring
import numpy as np
import pytest

from latticeflow.models import NetworkParams, forward, backward, save_network, load_network, glorot_init, loss_J
from latticeflow.exceptions import ValidationError, ParseError


def tiny_net(activation='sigmoid_1', periodic=False, seed=0, dims=(3, 4, 4, 2)):
    rng = np.random.default_rng(seed)
    net = glorot_init(list(dims), rng=rng, activation=activation, periodic=periodic)
    biases = [rng.normal(scale=0.3, size=v.size) for v in net.biases]
    return NetworkParams(net.weights, biases, activation, periodic)


def numeric_gradient(net, points, targets, h=1e-5):
    theta = net.flatten()
    gradient = np.empty_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = h
        gradient[i] = (loss_J(net.unflatten(theta + step), points, targets)
                       - loss_J(net.unflatten(theta - step), points, targets)) / (2 * h)
    return gradient


@pytest.fixture
def batch():
    rng = np.random.default_rng(7)
    return rng.uniform(size=(16, 3)), rng.normal(size=(16, 2))


class TestNetworkParams:
    @pytest.mark.parametrize('depth, width, count', [(3, 32, 3777), (12, 30, 11791)])
    def test_parameter_count(self, depth, width, count):
        net = NetworkParams.zeros([50] + [width] * depth + [1])
        assert net.parameter_count == count
        assert net.depth == depth
        assert net.flatten().size == count

    def test_shapes(self):
        net = NetworkParams.zeros([5, 3, 2])
        assert net.dims == [5, 3, 2]
        assert net.dim == 5 and net.n_obs == 2
        assert net.weights[0].shape == (3, 5)

    def test_inconsistent_shapes(self):
        with pytest.raises(ValidationError):
            NetworkParams([np.zeros((3, 2)), np.zeros((1, 4))], [np.zeros(3), np.zeros(1)])
        with pytest.raises(ValidationError):
            NetworkParams([np.zeros((3, 2))], [np.zeros(2)])
        with pytest.raises(ValidationError):
            NetworkParams.zeros([4])

    def test_flatten_round_trip(self):
        net = tiny_net()
        assert net.unflatten(net.flatten()) == net
        with pytest.raises(ValidationError):
            net.unflatten(np.zeros(3))

    def test_copy_is_independent(self):
        net = tiny_net()
        copy = net.copy()
        copy.weights[0][0, 0] += 1
        assert copy != net


class TestForward:
    def test_zero_weights(self):
        net = NetworkParams.zeros([3, 4, 2])
        net.biases[-1][:] = [1.5, -2.0]
        assert np.allclose(forward(net, [0.1, 0.2, 0.3]), [1.5, -2.0])

    def test_periodic(self):
        net = tiny_net(periodic=True)
        y = np.random.default_rng(1).uniform(size=(10, 3))
        for j in range(3):
            shifted = y.copy()
            shifted[:, j] += 1
            assert np.allclose(forward(net, y), forward(net, shifted), rtol=0, atol=1e-12)

    def test_single_and_batch(self):
        net = tiny_net()
        y = np.random.default_rng(2).uniform(size=(5, 3))
        outputs = forward(net, y)
        assert outputs.shape == (5, 2)
        assert np.allclose(forward(net, y[3]), outputs[3])

    def test_one_layer(self):
        net = tiny_net(dims=(3, 2))
        y = np.array([0.2, 0.5, 0.9])
        assert np.allclose(forward(net, y), net.weights[0] @ y + net.biases[0])

    def test_wrong_dimension(self):
        with pytest.raises(ValidationError):
            forward(tiny_net(), np.zeros(4))


class TestBackward:
    @pytest.mark.parametrize('activation', ['sigmoid_1', 'tanh_1', 'swish_5', 'relu'])
    @pytest.mark.parametrize('periodic', [False, True])
    def test_matches_differences(self, activation, periodic, batch):
        points, targets = batch
        net = tiny_net(activation, periodic)
        residuals = forward(net, points) - targets
        gradient = backward(net, points, residuals).flatten()
        assert np.allclose(gradient, numeric_gradient(net, points, targets), rtol=1e-4, atol=1e-8)

    def test_zero_residuals(self, batch):
        points, _ = batch
        net = tiny_net()
        gradient = backward(net, points, np.zeros((points.shape[0], 2)))
        assert np.all(gradient.flatten() == 0)

    def test_output_bias(self, batch):
        points, targets = batch
        net = tiny_net()
        residuals = forward(net, points) - targets
        gradient = backward(net, points, residuals)
        assert np.allclose(gradient.biases[-1], 2 * residuals.mean(axis=0))

    def test_residual_shape(self, batch):
        points, _ = batch
        with pytest.raises(ValidationError):
            backward(tiny_net(), points, np.zeros((points.shape[0], 3)))


class TestCheckpoint:
    @pytest.mark.parametrize('activation, periodic', [('sigmoid_1', False), ('swish_25', True), ('tanh_0.5', False)])
    def test_round_trip(self, activation, periodic, tmp_path):
        net = tiny_net(activation, periodic)
        path = tmp_path / 'network.txt'
        save_network(net, path)
        loaded = load_network(path)
        assert loaded == net
        assert loaded.activation.label == activation

    def test_layout(self, tmp_path):
        path = tmp_path / 'network.txt'
        save_network(NetworkParams.zeros([2, 3, 1]), path)
        lines = path.read_text().splitlines()
        assert lines[:5] == ['latticeflow-network 1', 'activation sigmoid_1', 'periodic 0', 'dims 2 3 1', 'W 0']

    @pytest.mark.parametrize('line, content', [(1, 'other-format 1'), (3, 'periodic 2'), (6, '0 zero')])
    def test_parse_error(self, line, content, tmp_path):
        path = tmp_path / 'network.txt'
        save_network(NetworkParams.zeros([2, 3, 1]), path)
        lines = path.read_text().splitlines()
        lines[line - 1] = content
        path.write_text('\n'.join(lines) + '\n')
        with pytest.raises(ParseError) as error:
            load_network(path)
        assert error.value.line == line

    def test_truncated(self, tmp_path):
        path = tmp_path / 'network.txt'
        save_network(NetworkParams.zeros([2, 3, 1]), path)
        lines = path.read_text().splitlines()
        path.write_text('\n'.join(lines[:-2]) + '\n')
        with pytest.raises(ParseError):
            load_network(path)
