""" Contains helper functions """
import logging

import numpy as np


def is_power_of_two(n):
    """ Check whether an integer is a positive power of 2 """
    return isinstance(n, (int, np.integer)) and n > 0 and (int(n) & (int(n) - 1)) == 0


def log2_int(n):
    """ Exact base-2 logarithm of a power of 2 """
    if not is_power_of_two(n):
        raise ValueError(f'{n} is not a power of 2')
    return int(n).bit_length() - 1


def as_points(points, dim=None):
    """ Cast points to a 2d float64 array of shape (n, s) """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[None, :] if dim is None or points.size == dim else points[:, None]
    if points.ndim != 2:
        raise ValueError(f'points must be a 2d array, but an array of shape {points.shape} was given')
    if dim is not None and points.shape[1] != dim:
        raise ValueError(f'points must have {dim} columns, but {points.shape[1]} were given')
    return points


def create_logger(name, path=None, loglevel='info'):
    """ Create logger. """
    loglevel = getattr(logging, loglevel.upper())
    logger = logging.getLogger(name)
    logger.setLevel(loglevel)

    if path is not None:
        handler = logging.FileHandler(path)
    else:
        handler = logging.StreamHandler()
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                                  datefmt='%y-%m-%d %H:%M:%S')
    handler.setLevel(loglevel)
    handler.setFormatter(formatter)
    logger.addHandler(handler)

    return logger


def close_logger(logger):
    """ Detach and close all handlers of a logger """
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
