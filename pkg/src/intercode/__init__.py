"""Two-party interactive coding over adversarial channels."""

__version__ = "0.1.0"
