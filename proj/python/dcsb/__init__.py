"""Dual-coupling spin-boson NIBA dynamics (C++ core bindings)."""

from ._dcsb import *  # noqa: F401,F403
from ._dcsb import __version__  # noqa: F401
