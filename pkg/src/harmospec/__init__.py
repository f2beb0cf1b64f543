"""A library for the spectral analysis of harmonic Toeplitz operators on the ball.

Operators T_V = PV compress a multiplier V to the harmonic functions of the unit
ball. Radial symbols are diagonalized exactly in the spherical-harmonic basis;
general symbols are handled through finite (Galerkin) sections of that basis.
"""
