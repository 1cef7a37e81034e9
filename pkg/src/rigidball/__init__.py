"""Rigorous numerics for scalar-curvature rigidity of geodesic balls in S^n.

Submodules
----------
geometry      closed-form scalars of B(delta)
eigen         first nonzero Neumann eigenvalue (shooting + finite-volume oracle)
thresholds    zeta, kappa, kappa_tilde, the 7n bound, delta0 and its variants
interval      outward-rounded interval arithmetic
certify       branch-and-bound positivity certificates
quadrature    Gauss-Legendre rules and radial profiles
identities    quadrature checks of the integral identities and estimates
cli           the ``rigidball`` command
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
