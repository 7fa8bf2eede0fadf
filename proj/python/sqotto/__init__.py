"""Squeezed-bath Otto engine in a tapered ion trap."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
