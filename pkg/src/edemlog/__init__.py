"""Extra-deep EM well-log surrogate toolkit."""

__version__ = "0.1.0"
