"""Embedded minimal disks: surfaces, multi-valued graphs, the annular
minimal-surface equation, blow-up pairs, and large-scale structure checks."""

from mindisk._core import *  # noqa: F401,F403
from mindisk._core import __version__, io  # noqa: F401
