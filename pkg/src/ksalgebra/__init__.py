"""Exact Kuga-Satake endomorphism algebras for K3-type Hodge structures.

Given a totally real Galois number field E and a quadratic form of K3 type
with real multiplication by E, this package computes the even Clifford
algebra over E, its corestriction down to Q along two independent routes
(quaternion-symbol projection formula, and Galois-invariant subalgebra of a
twisted tensor product), and classifies the result as a quaternion algebra
over Q by its ramification set.  Everything is exact rational arithmetic.
"""

from .errors import ExactAlgebraError

__all__ = ["ExactAlgebraError"]
__version__ = "0.1.0"
