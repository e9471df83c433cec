""" Tests for regularity profiles, derivative bounds of networks and restriction checks """
# pylint: disable=missing-docstring
from itertools import product
from math import factorial

import numpy as np
import pytest

from latticeflow.models import NetworkParams, forward, glorot_init, regularity_profile, regularity_bound, \
                               check_restrictions, sup_norm_estimate, swish_sl_bound, demand_sl_bound
from latticeflow.exceptions import ValidationError


def random_net(rng, activation, periodic):
    dim = int(rng.integers(1, 4))
    depth = int(rng.integers(1, 4))
    widths = [int(w) for w in rng.integers(1, 5, size=depth)]
    net = glorot_init([dim] + widths + [1], rng=rng, activation=activation, periodic=periodic)
    biases = [rng.normal(scale=0.5, size=v.size) for v in net.biases]
    return NetworkParams(net.weights, biases, activation, periodic)


def mixed_partial(net, y, nu, h=1e-3):
    """ Central differences, one stencil per direction: error O(h^2) """
    offsets = [np.array([-1, 1]) if n == 1 else np.array([-1, 0, 1]) if n == 2 else np.array([-3, -1, 1, 3])
               for n in nu if n]
    weights = {1: np.array([-1, 1]) / (2 * h), 2: np.array([1, -2, 1]) / h ** 2,
               3: np.array([-1, 3, -3, 1]) / (8 * h ** 3)}
    axes = [j for j, n in enumerate(nu) if n]
    total = 0.0
    for combo in product(*[range(len(o)) for o in offsets]):
        point = np.array(y, dtype=np.float64)
        coefficient = 1.0
        for axis, o, index in zip(axes, offsets, combo):
            point[axis] += o[index] * h
            coefficient *= weights[nu[axis]][index]
        total += coefficient * forward(net, point)[0]
    return total


def all_indices(dim, max_order):
    for nu in product(range(max_order + 1), repeat=dim):
        if 0 < sum(nu) <= max_order:
            yield nu


class TestProfile:
    def test_zero_first_layer(self):
        net = NetworkParams.zeros([3, 4, 1])
        net.weights[1][:] = 1.0
        profile = regularity_profile(net, b=np.ones(3), sup_norm=0.0)
        assert np.all(profile.beta == 0)
        assert profile.kappa == pytest.approx(1 / profile.S_L)

    def test_equality_case(self):
        # ξτρ = 1 with every R_ℓ = ρ gives S_L = τ L
        c, depth = 2.0, 4
        rho = 1 / c
        weights = [np.ones((2, 2))] + [np.full((2, 2), rho / 2) for _ in range(depth - 1)] + [np.ones((1, 2))]
        biases = [np.zeros(2)] * depth + [np.zeros(1)]
        net = NetworkParams(weights, biases, f'sigmoid_{c:g}')
        profile = regularity_profile(net, sup_norm=1.0)
        assert profile.S_L == pytest.approx(c * depth, rel=1e-14)
        assert profile.S_L == pytest.approx(demand_sl_bound(c, depth, rho=rho))

    @pytest.mark.parametrize('c, rho, depth', [(1.0, 1.0, 3), (5.0, 0.5, 12), (25.0, 0.9, 3)])
    def test_swish_equality_case(self, c, rho, depth):
        weights = [np.ones((3, 2))] + [np.full((3, 3), rho / 3) for _ in range(depth - 1)] + [np.ones((1, 3))]
        biases = [np.zeros(3)] * depth + [np.zeros(1)]
        net = NetworkParams(weights, biases, f'swish_{c:g}')
        profile = regularity_profile(net, sup_norm=1.0)
        expected = c * ((1.1 * rho) ** depth - 1) / (1.1 * rho - 1)
        assert profile.S_L == pytest.approx(expected, rel=1e-12)
        assert swish_sl_bound(c, rho, depth) == pytest.approx(expected, rel=1e-12)

    def test_quantities(self):
        net = NetworkParams([[[1.0, -3.0], [2.0, 0.5]], [[1.0, -1.0], [0.5, 0.5]], [[2.0, 1.0]]],
                            [[0, 0], [0, 0], [0]], 'tanh_1')
        profile = regularity_profile(net, b=[4.0, 1.0], sup_norm=0.5)
        assert profile.beta.tolist() == [2.0, 3.0]
        assert profile.R.tolist() == [2.0, 3.0]
        # ξ = 1, τ = 2
        assert profile.P.tolist() == [1.0, 4.0, 24.0]
        assert profile.S_L == pytest.approx(2 * (1 + 4))
        assert profile.C_L == pytest.approx(24 / 10)
        assert profile.kappa == pytest.approx(3.0)

    def test_sup_norm_term(self):
        net = NetworkParams.zeros([2, 2, 1], activation='sigmoid_1')
        net.biases[-1][:] = 7.0
        profile = regularity_profile(net)
        assert profile.sup_norm == pytest.approx(7.0)
        assert profile.C_L == pytest.approx(7.0)
        assert sup_norm_estimate(net, n=64) == pytest.approx(7.0)

    def test_rows(self):
        profile = regularity_profile(NetworkParams.zeros([2, 3, 1]), b=[1.0, 0.5], sup_norm=0.0)
        quantities = [row[0] for row in profile.rows()]
        assert quantities == ['beta', 'beta', 'R', 'P', 'P', 'S_L', 'C_L', 'kappa', 'sup_norm_estimate']

    def test_relu(self):
        with pytest.raises(ValidationError):
            regularity_profile(NetworkParams.zeros([2, 3, 1], activation='relu'), sup_norm=0.0)

    def test_no_hidden_layer(self):
        with pytest.raises(ValidationError):
            regularity_profile(NetworkParams.zeros([2, 1]), sup_norm=0.0)


class TestRegularityBound:
    @pytest.fixture
    def profile(self):
        net = NetworkParams([[[0.5, -0.25, 0.1]], [[1.5]]], [[0.0], [0.0]], 'sigmoid_1')
        return regularity_profile(net, sup_norm=0.8)

    @pytest.mark.parametrize('periodic', [False, True])
    def test_zero_index(self, profile, periodic):
        assert regularity_bound(profile, [0, 0, 0], periodic) == pytest.approx(profile.C_L)

    def test_unit_index(self, profile):
        for j in range(3):
            nu = np.eye(3, dtype=int)[j]
            value = profile.C_L * profile.S_L * profile.beta[j]
            assert regularity_bound(profile, nu) == pytest.approx(value)
            assert regularity_bound(profile, nu, periodic=True) == pytest.approx(2 * np.pi * value)

    def test_non_periodic_formula(self, profile):
        nu = [2, 1, 3]
        expected = profile.C_L * factorial(6) * np.prod((profile.S_L * profile.beta) ** np.array(nu))
        assert regularity_bound(profile, nu) == pytest.approx(expected)

    def test_periodic_second_order(self, profile):
        # m = 1 and m = 2 survive with S(2, 1) = S(2, 2) = 1
        x = profile.S_L * profile.beta[0]
        expected = profile.C_L * (2 * np.pi) ** 2 * (x + 2 * x ** 2)
        assert regularity_bound(profile, [2], periodic=True) == pytest.approx(expected)

    def test_order_cap(self, profile):
        with pytest.raises(ValidationError):
            regularity_bound(profile, [5, 4, 0])
        with pytest.raises(ValidationError):
            regularity_bound(profile, [1, 0, 0, 1])

    @pytest.mark.parametrize('activation', ['sigmoid_1', 'tanh_1', 'swish_1'])
    @pytest.mark.parametrize('periodic', [False, True])
    def test_derivatives_are_bounded(self, activation, periodic):
        rng = np.random.default_rng(2024)
        for _ in range(50 // 6 + 1):
            net = random_net(rng, activation, periodic)
            y = rng.uniform(0.2, 0.8, size=net.dim)
            profile = regularity_profile(net, sup_norm=0.0)
            for nu in all_indices(net.dim, 3):
                derivative = mixed_partial(net, y, nu)
                assert abs(derivative) <= regularity_bound(profile, nu, periodic) * (1 + 1e-3) + 1e-4


class TestRestrictions:
    def test_zero_network(self):
        profile = regularity_profile(NetworkParams.zeros([3, 4, 4, 1]), sup_norm=0.0)
        report = check_restrictions(profile, np.ones(3), rho=1.0, C=1.0)
        assert report.passed
        assert report.violations == {}

    def test_first_layer_violation(self):
        # L = 1 with sigmoid_1: S_L = τ P_0 = 1
        b = np.array([0.5, 0.25])
        net = NetworkParams([[[2 * b[0], 0.1]], [[1.0]]], [[0.0], [0.0]], 'sigmoid_1')
        profile = regularity_profile(net, b=b, sup_norm=0.5)
        assert profile.S_L == 1.0
        report = check_restrictions(profile, b, rho=1.0, C=1.0)
        assert not report.first_layer_bounded
        assert report.weights_bounded and report.constant_bounded
        assert report.kappa == pytest.approx(2.0)
        assert list(report.violations['beta']) == [1]

    def test_hidden_weights_violation(self):
        net = NetworkParams([np.zeros((2, 2)), np.full((2, 2), 1.0), np.ones((1, 2))],
                            [np.zeros(2), np.zeros(2), np.zeros(1)], 'sigmoid_1')
        profile = regularity_profile(net, sup_norm=0.0)
        report = check_restrictions(profile, np.ones(2), rho=0.5, C=100.0)
        assert not report.weights_bounded
        assert report.violations['R'] == {1: 2.0}
        assert not report.passed

    def test_constant_violation(self):
        net = NetworkParams.zeros([2, 2, 1])
        profile = regularity_profile(net, sup_norm=3.0)
        report = check_restrictions(profile, np.ones(2), rho=1.0, C=2.0)
        assert not report.constant_bounded
        assert report.violations['C_L'] == pytest.approx(3.0)
