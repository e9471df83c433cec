""" Fully-connected non-periodic and periodic networks

G(y) = W_L σ(W_{L-1} σ( ... σ(W_0 x + v_0) ... ) + v_{L-1}) + v_L,
with x = y for the non-periodic network and x = sin(2π y) for the periodic one.
"""
import numpy as np

from .activations import ActivationKind, activation_value, activation_derivative
from .._const import NETWORK_HEADER, NETWORK_FORMAT_VERSION
from ..exceptions import ValidationError, ParseError


class NetworkParams:
    """ Weights W_0..W_L, biases v_0..v_L and the activation of a network

    Parameters
    ----------
    weights : list of np.ndarray
        W_ℓ of shape (d_{ℓ+1}, d_ℓ)
    biases : list of np.ndarray
        v_ℓ of shape (d_{ℓ+1},)
    activation : str or ActivationKind
    periodic : bool
        feed sin(2π y) instead of y into the first layer
    """
    def __init__(self, weights, biases, activation='sigmoid_1', periodic=False):
        weights = [np.array(w, dtype=np.float64) for w in weights]
        biases = [np.array(v, dtype=np.float64).ravel() for v in biases]
        if not weights or len(weights) != len(biases):
            raise ValidationError(f'{len(weights)} matrices and {len(biases)} bias vectors given')
        for level, (w, v) in enumerate(zip(weights, biases)):
            if w.ndim != 2 or w.shape[0] != v.size:
                raise ValidationError(f'W_{level} of shape {w.shape} does not match v_{level} of size {v.size}')
            if level and w.shape[1] != weights[level - 1].shape[0]:
                raise ValidationError(f'W_{level} of shape {w.shape} does not follow W_{level - 1} '
                                      f'of shape {weights[level - 1].shape}')
        self.weights = weights
        self.biases = biases
        self.activation = ActivationKind.from_name(activation)
        self.periodic = bool(periodic)

    @classmethod
    def zeros(cls, dims, activation='sigmoid_1', periodic=False):
        """ Network of widths d_0..d_{L+1} with all parameters zero """
        dims = [int(d) for d in dims]
        if len(dims) < 2 or min(dims) < 1:
            raise ValidationError(f'widths must be positive and at least two, got {dims}')
        weights = [np.zeros((dims[i + 1], dims[i])) for i in range(len(dims) - 1)]
        biases = [np.zeros(d) for d in dims[1:]]
        return cls(weights, biases, activation, periodic)

    @property
    def dims(self):
        """ Widths d_0 = s, d_1, ..., d_{L+1} = N_obs """
        return [self.weights[0].shape[1]] + [w.shape[0] for w in self.weights]

    @property
    def depth(self):
        """ Number L of hidden layers """
        return len(self.weights) - 1

    @property
    def dim(self):
        return self.weights[0].shape[1]

    @property
    def n_obs(self):
        return self.weights[-1].shape[0]

    @property
    def parameter_count(self):
        return sum(w.size + v.size for w, v in zip(self.weights, self.biases))

    def flatten(self):
        """ All parameters in one vector: W_0, v_0, W_1, v_1, ... (row-major) """
        return np.concatenate([part for w, v in zip(self.weights, self.biases) for part in (w.ravel(), v)])

    def unflatten(self, vector):
        """ Network of the same structure with parameters from a flat vector """
        vector = np.asarray(vector, dtype=np.float64).ravel()
        if vector.size != self.parameter_count:
            raise ValidationError(f'{self.parameter_count} parameters expected, got {vector.size}')
        weights, biases, start = [], [], 0
        for w, v in zip(self.weights, self.biases):
            weights.append(vector[start:start + w.size].reshape(w.shape))
            start += w.size
            biases.append(vector[start:start + v.size].copy())
            start += v.size
        return NetworkParams(weights, biases, self.activation, self.periodic)

    def copy(self):
        return self.unflatten(self.flatten())

    def __eq__(self, other):
        if not isinstance(other, NetworkParams):
            return NotImplemented
        return (self.dims == other.dims and self.activation == other.activation
                and self.periodic == other.periodic and np.array_equal(self.flatten(), other.flatten()))

    def __repr__(self):
        kind = 'periodic' if self.periodic else 'non-periodic'
        return f'NetworkParams(dims={self.dims}, activation={self.activation.label}, {kind})'


def _check_inputs(net, inputs):
    inputs = np.asarray(inputs, dtype=np.float64)
    single = inputs.ndim == 1
    inputs = np.atleast_2d(inputs)
    if inputs.ndim != 2 or inputs.shape[1] != net.dim:
        raise ValidationError(f'network takes {net.dim} inputs, got an array of shape {inputs.shape}')
    return inputs, single


def _first_layer_input(net, inputs):
    return np.sin(2 * np.pi * inputs) if net.periodic else inputs


def forward_cache(net, inputs):
    """ Outputs of a batch with pre-activations and activations of every hidden layer

    Returns
    -------
    outputs : np.ndarray
        array (n, N_obs)
    cache : tuple of lists
        pre-activations z_ℓ and layer inputs a_ℓ, a_0 being the first-layer input
    """
    inputs, _ = _check_inputs(net, inputs)
    layer = _first_layer_input(net, inputs)
    pre, post = [], [layer]
    for w, v in zip(net.weights[:-1], net.biases[:-1]):
        z = layer @ w.T + v
        layer = activation_value(net.activation, z)
        pre.append(z)
        post.append(layer)
    outputs = layer @ net.weights[-1].T + net.biases[-1]
    return outputs, (pre, post)


def forward(net, y):
    """ Evaluate the network

    Parameters
    ----------
    net : NetworkParams
    y : array-like
        one input of size s or a batch (n, s)

    Returns
    -------
    np.ndarray
        output of size N_obs or a batch (n, N_obs)
    """
    _, single = _check_inputs(net, y)
    outputs, _ = forward_cache(net, y)
    return outputs[0] if single else outputs


def backward(net, inputs, residuals, cache=None):
    """ Gradient of J = (1/n) sum_k ||G_θ(y_k) - G(y_k)||^2 with respect to all parameters

    Parameters
    ----------
    net : NetworkParams
    inputs : np.ndarray
        batch (n, s)
    residuals : np.ndarray
        G_θ(y_k) - G(y_k), of shape (n, N_obs)
    cache : tuple, optional
        second output of :func:`forward_cache` for the same inputs

    Returns
    -------
    NetworkParams
        gradient with the shapes of `net`
    """
    inputs, _ = _check_inputs(net, inputs)
    residuals = np.asarray(residuals, dtype=np.float64).reshape(inputs.shape[0], -1)
    if residuals.shape[1] != net.n_obs:
        raise ValidationError(f'residuals of shape {residuals.shape} do not match {net.n_obs} outputs')
    if cache is None:
        _, cache = forward_cache(net, inputs)
    pre, post = cache

    delta = 2 * residuals / inputs.shape[0]
    weight_grads, bias_grads = [], []
    for level in range(net.depth, -1, -1):
        weight_grads.append(delta.T @ post[level])
        bias_grads.append(delta.sum(axis=0))
        if level:
            delta = (delta @ net.weights[level]) * activation_derivative(net.activation, pre[level - 1])
    return NetworkParams(weight_grads[::-1], bias_grads[::-1], net.activation, net.periodic)


def save_network(net, path):
    """ Write an ASCII checkpoint

    Layout::

        latticeflow-network 1
        activation sigmoid_1
        periodic 0
        dims 50 32 32 32 1
        W 0
        <d_1 rows of d_0 values>
        v 0
        <d_1 values>
        ...

    Values are written with 17 significant digits, so loading restores them exactly.
    """
    with open(path, 'w') as file:
        file.write(f'{NETWORK_HEADER} {NETWORK_FORMAT_VERSION}\n')
        file.write(f'activation {net.activation.label}\n')
        file.write(f'periodic {int(net.periodic)}\n')
        file.write('dims ' + ' '.join(str(d) for d in net.dims) + '\n')
        for level, (w, v) in enumerate(zip(net.weights, net.biases)):
            file.write(f'W {level}\n')
            for row in w:
                file.write(' '.join(f'{value:.17g}' for value in row) + '\n')
            file.write(f'v {level}\n')
            file.write(' '.join(f'{value:.17g}' for value in v) + '\n')


def _expect(lines, index, key, path):
    if index >= len(lines):
        raise ParseError(f'unexpected end of file, expected {key!r}', path, index + 1)
    parts = lines[index].split()
    if not parts or parts[0] != key:
        raise ParseError(f'expected {key!r}, got {lines[index]!r}', path, index + 1)
    return parts[1:]


def _floats(lines, index, size, path):
    if index >= len(lines):
        raise ParseError('unexpected end of file', path, index + 1)
    try:
        values = [float(item) for item in lines[index].split()]
    except ValueError as error:
        raise ParseError(f'non-numeric value in {lines[index]!r}', path, index + 1) from error
    if len(values) != size:
        raise ParseError(f'expected {size} values, got {len(values)}', path, index + 1)
    return values


def load_network(path):
    """ Read a checkpoint written by :func:`save_network`

    Raises
    ------
    ParseError
        with the offending line number
    """
    with open(path, 'r') as file:
        lines = [line.rstrip('\n') for line in file]

    header = _expect(lines, 0, NETWORK_HEADER, path)
    if header != [str(NETWORK_FORMAT_VERSION)]:
        raise ParseError(f'unsupported checkpoint version {header}', path, 1)
    activation = ' '.join(_expect(lines, 1, 'activation', path))
    periodic = _expect(lines, 2, 'periodic', path)
    if periodic not in (['0'], ['1']):
        raise ParseError(f'periodic flag must be 0 or 1, got {periodic}', path, 3)
    try:
        dims = [int(d) for d in _expect(lines, 3, 'dims', path)]
    except ValueError as error:
        raise ParseError('widths must be integers', path, 4) from error

    weights, biases, index = [], [], 4
    for level in range(len(dims) - 1):
        _expect(lines, index, 'W', path)
        index += 1
        rows = []
        for _ in range(dims[level + 1]):
            rows.append(_floats(lines, index, dims[level], path))
            index += 1
        _expect(lines, index, 'v', path)
        biases.append(_floats(lines, index + 1, dims[level + 1], path))
        weights.append(rows)
        index += 2
    return NetworkParams(weights, biases, activation, periodic == ['1'])
