"""Workbench for square-full solutions of u + v = w and the machinery around them."""

from .arith import DomainError

__version__ = "0.1.0"

__all__ = ["DomainError", "__version__"]
