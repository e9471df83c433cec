""" Import and export of training data as CSV """
import numpy as np
import pandas as pd

from .._const import FLOAT_FORMAT
from ..exceptions import ValidationError, ParseError


def dataset_columns(dim, n_obs=1):
    """ Header y_1..y_s, G_1..G_{N_obs} """
    return [f'y_{j}' for j in range(1, dim + 1)] + [f'G_{p}' for p in range(1, n_obs + 1)]


def export_dataset(points, targets, path):
    """ Write points and targets with 17 significant digits, so that reading restores them exactly """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    targets = np.asarray(targets, dtype=np.float64).reshape(points.shape[0], -1)
    frame = pd.DataFrame(np.hstack([points, targets]), columns=dataset_columns(points.shape[1], targets.shape[1]))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return frame


def ingest_dataset(path, dim=None):
    """ Read a CSV with a header row, s point columns and N_obs target columns

    Point columns are the ones whose header starts with 'y' unless `dim` is given.

    Returns
    -------
    points : np.ndarray
        array (N, s) with entries in [0, 1]
    targets : np.ndarray
        array (N, N_obs)

    Raises
    ------
    ParseError
        malformed row, with its line number
    ValidationError
        empty file or a point outside the unit cube
    """
    try:
        frame = pd.read_csv(path, dtype=str, skip_blank_lines=False)
    except pd.errors.EmptyDataError as error:
        raise ValidationError(f'{path}: empty dataset') from error
    except pd.errors.ParserError as error:
        raise ParseError(str(error).strip(), path) from error
    # file line of every row, the header is line 1
    lines = np.arange(frame.shape[0]) + 2
    blank = frame.isna().all(axis=1).to_numpy()
    frame, lines = frame[~blank].reset_index(drop=True), lines[~blank]
    if frame.empty:
        raise ValidationError(f'{path}: empty dataset')

    numeric = frame.apply(pd.to_numeric, errors='coerce')
    broken = numeric.isna().any(axis=1).to_numpy()
    if broken.any():
        row = int(np.argmax(broken))
        raise ParseError(f'malformed row {",".join(map(str, frame.iloc[row].tolist()))!r}', path, int(lines[row]))

    if dim is None:
        dim = sum(1 for column in frame.columns if str(column).strip().lower().startswith('y'))
    if not 1 <= dim < frame.shape[1]:
        raise ValidationError(f'{path}: cannot split {frame.shape[1]} columns into points and targets')

    # correctly rounded parse of the 17-digit strings
    values = frame.to_numpy().astype(np.float64)
    points, targets = values[:, :dim], values[:, dim:]
    outside = ((points < 0) | (points > 1)).any(axis=1)
    if outside.any():
        row = int(np.argmax(outside))
        raise ValidationError(f'{path}:{lines[row]}: point outside [0, 1]^{dim}')
    return points, targets
