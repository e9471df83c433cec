""" Pytest configuration. """
# pylint: disable=invalid-name
import pytest

from latticeflow.lattice import GeneratingVector


@pytest.fixture()
def gv():
    """ Rank-1 lattice with 64 points in 3 dimensions

    Returns
    -------
    GeneratingVector
        N = 64, z = (1, 19, 27)
    """
    return GeneratingVector(64, [1, 19, 27])
