"""Exception hierarchy.

Contract violations (a root on the contour, a singular kernel, a point off the
variety) are kept separate from plain malformed input so the CLI can map them
to different exit codes.
"""


class SliceError(Exception):
    """Base class for all library errors."""


class ContractViolation(SliceError):
    """Input is well formed but violates an operation's precondition."""


class InvalidUnitError(SliceError, ValueError):
    pass


class NotOnVarietyError(ContractViolation):
    pass


class BoundaryZeroError(ContractViolation):
    """A zero or pole lies on (or too close to) an integration contour."""


class AsymmetricContourError(ContractViolation):
    pass


class SingularKernelError(ContractViolation):
    pass


class ConvergenceError(ContractViolation):
    pass


class DegenerateInputError(SliceError, ValueError):
    """Zero polynomial, constant where a root is required, and similar."""


class UndefinedAtOriginError(ContractViolation):
    """Jensen's formula needs a function that does not vanish at the origin."""
