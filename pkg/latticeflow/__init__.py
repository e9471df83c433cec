""" LatticeFlow: rank-1 lattice training points and generalization bounds for deep networks """

import sys

if sys.version_info < (3, 8):
    raise ImportError("LatticeFlow module requires Python 3.8 or higher")

from .config import Config
from .exceptions import LatticeFlowException, ValidationError, ParseError, ConfigError, OverflowGuardError, \
                        InadmissibleWeightsError, SingularKernelError, TrainingAborted
from .lattice import *
from .models import *
from .baselines import *
from .research import *
from .utils_random import make_rng, make_seed_sequence


__version__ = '0.1.0'
