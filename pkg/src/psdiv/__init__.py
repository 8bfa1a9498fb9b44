"""Exact tools for segmental-divisor presentations of one-torus actions,
plane-curve log resolutions and rectifiability certificates."""

__version__ = "0.1.0"
