"""Version metadata for tameforge builds."""

__version__ = "0.1.0"
