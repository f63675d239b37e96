"""Exception hierarchy shared by every module."""


class ShapeInvError(Exception):
    """Base class; the CLI maps subclasses onto exit codes."""


class InvalidInput(ShapeInvError, ValueError):
    """Raised for arguments that violate a precondition (CLI exit 2)."""


class ParameterConstraintViolated(InvalidInput):
    pass


class OutOfDomain(InvalidInput):
    pass


class IndexBeyondCutoff(InvalidInput):
    pass


class InvalidIndex(InvalidInput):
    pass


class LayerUnderflow(InvalidInput):
    pass


class LayerMismatch(InvalidInput):
    pass


class InsufficientOrder(InvalidInput):
    pass


class NotPowerWeight(InvalidInput):
    pass


class Unsupported(ShapeInvError):
    """The requested route exists only over a field we do not model."""


class ComputationError(ShapeInvError, ArithmeticError):
    """A well-posed request hit a singular case (CLI exit 1)."""


class DegenerateEigenvalue(ComputationError):
    pass


class DegenerateShift(InvalidInput):
    pass


class DegenerateTildeEigenvalue(ComputationError):
    pass


class Divergent(ComputationError):
    pass
