""" Records of experiments: aggregation, CSV outputs, rate fits and figures """
import warnings

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt

from .._const import FLOAT_FORMAT, RECORD_COLUMNS, AGGREGATE_COLUMNS, PLOT_COLUMNS
from ..exceptions import ValidationError


GROUP_COLUMNS = ['activation', 'mode', 'N']
PLOT_SERIES = ['E_T', 'E_G_est', 'gap']


def records_to_frame(records):
    """ DataFrame of records with the columns of the records CSV """
    return pd.DataFrame([record.to_row() for record in records], columns=RECORD_COLUMNS)


def aggregate(frame):
    """ Mean of E_T, Ẽ_G, gap and epochs over seeds for every (activation, mode, N)

    Aborted runs (NaN errors) are left out of the means but counted in `runs`.
    """
    if isinstance(frame, (list, tuple)):
        frame = records_to_frame(frame)
    grouped = frame.groupby(GROUP_COLUMNS, sort=True)
    result = grouped[['E_T', 'E_G_est', 'gap', 'epochs']].mean()
    result['runs'] = grouped.size()
    return result.reset_index()[AGGREGATE_COLUMNS]


def write_csv(frame, path):
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def plot_data(aggregated):
    """ Long table (panel, series, x, y): one panel per activation and mode, x = N """
    rows = []
    for (activation, mode), group in aggregated.groupby(['activation', 'mode'], sort=True):
        for series in PLOT_SERIES:
            for n, value in zip(group['N'], group[series]):
                rows.append((f'{activation}/{mode}', series, int(n), value))
    return pd.DataFrame(rows, columns=PLOT_COLUMNS)


def rate_fit(data, n=None):
    """ Least squares fit of log2(gap) against log2(N)

    Parameters
    ----------
    data : pandas.DataFrame or array-like
        frame with columns 'N' and 'gap', or the gaps themselves with `n`
    n : array-like, optional
        numbers of points

    Returns
    -------
    tuple of float
        (slope, intercept)

    Warns
    -----
    UserWarning
        for every dropped point with a non-positive gap
    """
    if isinstance(data, pd.DataFrame):
        n, gaps = data['N'].to_numpy(dtype=np.float64), data['gap'].to_numpy(dtype=np.float64)
    else:
        gaps = np.asarray(data, dtype=np.float64).ravel()
        n = np.asarray(n, dtype=np.float64).ravel()
    if n.size != gaps.size:
        raise ValidationError(f'{n.size} values of N for {gaps.size} gaps')

    keep = np.isfinite(gaps) & (gaps > 0)
    for value, gap in zip(n[~keep], gaps[~keep]):
        warnings.warn(f'gap {gap} at N={value:g} is not positive and is dropped from the rate fit')
    if keep.sum() < 3:
        raise ValidationError(f'a rate fit needs at least 3 positive gaps, got {int(keep.sum())}')
    slope, intercept = np.polyfit(np.log2(n[keep]), np.log2(gaps[keep]), 1)
    return float(slope), float(intercept)


def rate_table(frame):
    """ Slope and intercept per (activation, mode) of a records or aggregated frame """
    rows = []
    for (activation, mode), group in frame.groupby(['activation', 'mode'], sort=True):
        means = group.groupby('N', sort=True)['gap'].mean().reset_index()
        slope, intercept = rate_fit(means)
        rows.append((activation, mode, slope, intercept))
    return pd.DataFrame(rows, columns=['activation', 'mode', 'slope', 'intercept'])


def decay_slope(values):
    """ Slope of log(values_j) against log(j) """
    values = np.asarray(values, dtype=np.float64).ravel()
    j = np.arange(1, values.size + 1, dtype=np.float64)
    keep = values > 0
    slope, _ = np.polyfit(np.log(j[keep]), np.log(values[keep]), 1)
    return float(slope)


def plot_results(data, path=None, ncols=2):
    """ One log-log panel per activation and mode with E_T, Ẽ_G and gap against N

    Parameters
    ----------
    data : pandas.DataFrame
        output of :func:`plot_data`
    path : str, optional
        PNG file to save the figure to

    Returns
    -------
    matplotlib.figure.Figure
    """
    panels = sorted(data['panel'].unique())
    nrows = max(1, int(np.ceil(len(panels) / ncols)))
    fig, axes = plt.subplots(nrows, ncols, figsize=(6 * ncols, 4 * nrows), squeeze=False)
    styles = {'E_T': dict(marker='o', fillstyle='none', color='green'),
              'E_G_est': dict(marker='o', color='red'),
              'gap': dict(marker='s', color='blue')}
    for ax, panel in zip(axes.flat, panels):
        subset = data[data['panel'] == panel]
        for series, group in subset.groupby('series', sort=False):
            ax.loglog(group['x'], group['y'], base=2, label=series, **styles.get(series, {}))
        ax.set_title(panel)
        ax.set_xlabel('N')
        ax.legend()
    for ax in list(axes.flat)[len(panels):]:
        ax.set_visible(False)
    fig.tight_layout()
    if path is not None:
        fig.savefig(path)
        plt.close(fig)
    return fig
