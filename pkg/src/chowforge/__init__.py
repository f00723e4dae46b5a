"""Exact verification of determinantal Chern-cycle identities."""

from .exactpoly import Polynomial, RingSpec, Q, parse, serialize
from .groebner import (GREVLEX, LEX, Budget, BudgetExceeded, GroebnerBasis, Ideal,
                       MonomialOrder, budget_scope, elimination_order)

__version__ = "0.1.0"

__all__ = ["Polynomial", "RingSpec", "Q", "parse", "serialize", "GREVLEX", "LEX", "Budget",
           "BudgetExceeded", "GroebnerBasis", "Ideal", "MonomialOrder", "budget_scope",
           "elimination_order"]
