""" Contains error metrics of fitted networks """
import numpy as np

from .network import forward
from ..lattice.core import lattice_points, shift_points
from ..exceptions import ValidationError


class Metrics:
    """ Metrics evaluated by name, each a method taking `per_output`

    Children define the metric methods (e.g. :class:`.GeneralizationMetrics`).
    """
    AGGREGATIONS = {'mean': np.mean, 'max': np.max, 'sum': np.sum}

    def _reduce(self, value, agg=None):
        if agg is not None:
            if agg not in self.AGGREGATIONS:
                raise ValueError(f'unknown aggregation {agg!r}, expected one of {sorted(self.AGGREGATIONS)}')
            value = self.AGGREGATIONS[agg](value)
        value = np.squeeze(value)
        return value.item() if value.ndim == 0 else value

    def evaluate(self, metrics, agg=None, per_output=False):
        """ Calculate metrics

        Parameters
        ----------
        metrics : str or list of str
            metric names
        agg : str, optional
            reduction over output components: 'mean', 'max' or 'sum'
        per_output : bool
            whether metrics are computed per output component

        Returns
        -------
        metric value, or a dict {name: value} for a list of names
        """
        names = [metrics] if isinstance(metrics, str) else list(metrics)
        values = {name: self._reduce(getattr(self, name)(per_output), agg) for name in names}
        return values[metrics] if isinstance(metrics, str) else values


class GeneralizationMetrics(Metrics):
    """ Training error, generalization error estimate and gap of a fitted network

    Errors are root mean squares of the residuals, per output component.
    Without `per_output` the squared errors are summed over components, matching the loss J.

    Parameters
    ----------
    net : NetworkParams
    target : callable
        G evaluated on a batch of points
    points : np.ndarray or None
        training points (N, s); needed for `train_error` and `gap` only
    targets : np.ndarray or None
        training targets
    gv_eval : GeneratingVector
        evaluation lattice
    shift_eval : array-like
        evaluation shift

    Examples
    --------
    ::

        metrics = GeneralizationMetrics(net, target, points, targets, gv_eval, shift)
        metrics.evaluate(['train_error', 'generalization_error', 'gap'])
    """
    def __init__(self, net, target, points, targets, gv_eval, shift_eval):
        self.net = net
        self.target = target
        self.points = None if points is None else np.atleast_2d(np.asarray(points, dtype=np.float64))
        self.targets = None
        if targets is not None:
            self.targets = np.asarray(targets, dtype=np.float64).reshape(self.points.shape[0], -1)
        self.evaluation = shift_points(lattice_points(gv_eval), shift_eval)

    def _squared(self, points, targets):
        residuals = forward(self.net, points) - targets
        return np.mean(residuals ** 2, axis=0)

    def _error(self, squared, per_output):
        return np.sqrt(squared) if per_output else np.sqrt(np.sum(squared))

    def train_error(self, per_output=False):
        """ E_T """
        if self.targets is None:
            raise ValidationError('training points and targets are needed for the training error')
        return self._error(self._squared(self.points, self.targets), per_output)

    def generalization_error(self, per_output=False):
        """ Ẽ_G on the shifted evaluation lattice """
        targets = np.asarray(self.target(self.evaluation), dtype=np.float64).reshape(self.evaluation.shape[0], -1)
        return self._error(self._squared(self.evaluation, targets), per_output)

    def gap(self, per_output=False):
        """ |Ẽ_G - E_T| """
        return np.abs(self.generalization_error(per_output) - self.train_error(per_output))
