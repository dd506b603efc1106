"""Exception types shared across the package."""


class ShapeMismatch(ValueError):
    """Two polynomials (or a polynomial and a matrix) live on different ambient shapes."""


class DegreeMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A configured size budget (group order, monomial count) would be exceeded."""


class InvalidCartanType(ValueError):
    pass


class NotMember(ValueError):
    """Vector is not in the semigroup M_d."""


class LemmaViolation(RuntimeError):
    """A member of M_d failed to decompose into S_d parts.

    The semigroup lemma says this cannot happen, so seeing it means a bug.
    """


class NotInvariant(ValueError):
    pass


class ParseError(ValueError):
    pass
