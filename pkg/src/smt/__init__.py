"""Standard monomial theory for orthogonal invariants, symmetric determinantal
varieties, doset algebras and the adjoint SL2 trace algebra, in exact arithmetic."""

__version__ = "0.1.0"
