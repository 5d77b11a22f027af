"""Experiment runner and command line."""

from .runner import *  # noqa: F401,F403
from .runner import __all__ as _runner
from .schemes import *  # noqa: F401,F403
from .schemes import __all__ as _schemes

__all__ = list(_runner) + list(_schemes)
