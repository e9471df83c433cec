""" Entry point of `python -m latticeflow` """
import sys

from .cli import main


sys.exit(main())
