"""Exception hierarchy; every error carries a machine-readable ``code``."""


class QTypesError(Exception):
    code = "error"


class ArityError(QTypesError, ValueError):
    code = "arity_mismatch"


class SingularMatrixError(QTypesError, ValueError):
    code = "singular_matrix"


class InvalidGermError(QTypesError, ValueError):
    code = "invalid_germ"


class NotProperError(QTypesError, ValueError):
    code = "improper_ideal"


class BudgetExceeded(QTypesError, RuntimeError):
    """A computation hit its step or degree cap; this says nothing about the math."""

    code = "budget_exceeded"


class DegenerateSliceError(QTypesError, ValueError):
    code = "degenerate_slice"


class DegenerateSamplingError(QTypesError, RuntimeError):
    """Every sampled tuple was rejected."""

    code = "degenerate_sampling"


class CylinderHypothesisError(QTypesError, ValueError):
    code = "tangent_in_directrix"


class NotMonomialError(QTypesError, ValueError):
    code = "not_monomial"
