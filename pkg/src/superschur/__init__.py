"""Exact computations for GL(m|n): filtration bases of K[GL(m|n)] by
generalized bideterminants and kernels of generalized Schur superalgebras."""

__version__ = "0.1.0"
