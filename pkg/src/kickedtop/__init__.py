"""Kicked-top dynamics in the permutation-symmetric subspace.

Exact 3- and 4-qubit solutions (Chebyshev block powers, tunneling times,
averaged-entanglement formulas), brute-force Floquet evolution, reduced
density matrices and entanglement measures, the classical limit map,
random-state baselines, and tomography post-processing.
"""

from . import (
    classical,
    ensembles,
    entanglement,
    exact3,
    exact4,
    numerics,
    tomography,
    top,
    verify,
)

__all__ = [
    "classical",
    "ensembles",
    "entanglement",
    "exact3",
    "exact4",
    "numerics",
    "tomography",
    "top",
    "verify",
]

__version__ = "0.1.0"
