class SMTError(Exception):
    pass


class TheoremViolation(SMTError):
    """An exact computation contradicted a basis or straightening statement."""

    tag = "THEOREM-VIOLATION"

    def __str__(self):
        return f"{self.tag}: {super().__str__()}"


class IndependenceViolation(TheoremViolation):
    tag = "INDEPENDENCE-VIOLATION"


class PolynomialAlgebraRegime(ValueError):
    """m < n: the invariant ring is the polynomial algebra on the Gram entries,
    so the row determinants u(I) do not exist."""


class SizeBoundError(ValueError):
    pass
