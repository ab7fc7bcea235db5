"""Spectral statistics of randomly signed random regular graphs."""

from _regspec import *  # noqa: F401,F403
from _regspec import __version__  # noqa: F401
