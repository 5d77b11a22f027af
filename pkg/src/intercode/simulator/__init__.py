"""Tree-protocol simulators over large and small channel alphabets."""

from .block import *  # noqa: F401,F403
from .block import __all__ as _block
from .large_alphabet import *  # noqa: F401,F403
from .large_alphabet import __all__ as _large

__all__ = list(_large) + list(_block)
