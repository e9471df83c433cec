""" Seeded random streams """
import numpy as np


def make_rng(seed=None):
    """ Generator over `numpy.random.SFC64`

    Parameters
    ----------
    seed : None, int, SeedSequence or Generator
        fresh entropy for None; a generator is returned as is

    Returns
    -------
    numpy.random.Generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (int, np.integer, np.random.SeedSequence)):
        return np.random.Generator(np.random.SFC64(seed))
    raise TypeError(f'cannot make a random generator from {type(seed).__name__}')


def make_seed_sequence(seed, *keys):
    """ Create a seed sequence for one named stream of a recorded seed

    Parameters
    ----------
    seed : int
        a non-negative seed recorded in the outputs
    keys : int
        stream identifiers, e.g. `INIT_STREAM`

    Returns
    -------
    numpy.random.SeedSequence
    """
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise TypeError(f'seed must be a non-negative int, but {seed!r} was given')
    return np.random.SeedSequence([int(seed), *[int(key) for key in keys]])


INIT_STREAM = 0
TRAIN_SHIFT_STREAM = 1
EVAL_SHIFT_STREAM = 2
MC_POINTS_STREAM = 3


def stream_rng(seed, stream):
    """ Generator of a named stream derived from `seed` """
    return make_rng(make_seed_sequence(seed, stream))
