"""Tameforge: exact desk-scale checks for tame supercuspidal data."""

from tameforge.version import __version__

__all__ = ["__version__"]
