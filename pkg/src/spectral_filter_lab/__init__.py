"""Spectral Filter Lab.

Linear spectral GNNs with polynomial filter bases (Jacobi, Chebyshev,
Bernstein, monomial, fixed APPNP/SGC filters), spectral diagnostics, and
executable checks of when such models can express any filter.
"""

__version__ = "0.1.0"
