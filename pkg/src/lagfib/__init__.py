"""Exact invariants of regular Lagrangian torus fibrations.

Monodromy representations up to GL(n, Z) conjugacy and Chern classes in
twisted cohomology, computed from combinatorial chart and cocycle data.
"""

from .errors import LagfibError
from .linalg import IntMatrix

__version__ = "0.1.0"
__all__ = ["IntMatrix", "LagfibError", "__version__"]
