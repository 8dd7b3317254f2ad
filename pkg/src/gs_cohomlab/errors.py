"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class CohomLabError(Exception):
    code = "ERROR"


class CompositionError(CohomLabError):
    code = "COMPOSABILITY_VIOLATION"


class NotLoopFree(CohomLabError):
    code = "NOT_LOOP_FREE"


class NonInjectiveMap(CohomLabError):
    code = "NONINJECTIVE_MAP"


class IncompatibleCone(CohomLabError):
    code = "INCOMPATIBLE_CONE"


class NotLowerIdeal(CohomLabError):
    code = "NOT_LOWER_IDEAL"


class FunctorialityViolation(CohomLabError):
    code = "FUNCTORIALITY_VIOLATION"


class ThetaNotIso(CohomLabError):
    code = "THETA_NOT_ISO"


class ZigzagNotInvertible(CohomLabError):
    code = "ZIGZAG_NOT_INVERTIBLE"


class NotHomEpi(CohomLabError):
    code = "NOT_HOM_EPI"


class NotCertified(CohomLabError):
    code = "NOT_CERTIFIED"


class BaseMismatch(CohomLabError):
    code = "BASE_MISMATCH"


class InsufficientQRange(CohomLabError):
    code = "INSUFFICIENT_Q_RANGE"


class ConsistencyViolation(CohomLabError):
    code = "CONSISTENCY_VIOLATION"


class Mismatch(CohomLabError):
    code = "MISMATCH"


class InvalidStructure(CohomLabError):
    """Axiom failure while constructing a value (poset, category, algebra, ...)."""

    code = "INVALID"
