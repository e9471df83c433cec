import os

from .latticeflow import *
__path__ = [os.path.join(os.path.dirname(__file__), 'latticeflow')]
