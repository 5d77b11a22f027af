"""Adversary strategies: stress adversaries and the threshold attacks."""

from .attacks import *  # noqa: F401,F403
from .attacks import __all__ as _attacks
from .confusion import (
    ConfusionAdversary, ConfusionEngine, Link, prefer_lo_until_round, prefer_lo_while_count_at_most,
)
from .generic import *  # noqa: F401,F403
from .generic import __all__ as _generic

__all__ = list(_attacks) + list(_generic) + [
    "ConfusionAdversary", "ConfusionEngine", "Link", "prefer_lo_until_round", "prefer_lo_while_count_at_most",
]
