"""Exact verification of quantum principal bundle constructions.

Finite-dimensional Hopf algebras, their differential calculi and the
bundle calculus construction are handled by exact linear algebra over
Q, cyclotomic fields or Q(q).  The q-monopole on SU_q(2) is checked by
degree-truncated normal-form computations.
"""

from .report import Check, Report

__version__ = "0.1.0"

__all__ = ["Check", "Report", "__version__"]
