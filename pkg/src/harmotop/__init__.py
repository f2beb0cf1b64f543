"""Spectral laboratory for Toeplitz operators on harmonic functions of the ball."""

from harmotop._version import __version__, __version_tuple__
