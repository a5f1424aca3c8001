"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems -> 2, budget/cap -> 3.
"""


class AmalgamError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AmalgamError, ValueError):
    """Malformed or inconsistent input."""


class DegreeMismatch(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class NotInjective(InputError):
    pass


class NotInvariant(InputError):
    pass


class NotNormal(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class GraphMismatch(InputError):
    pass


class TypeMismatch(InputError):
    pass


class InvalidVertex(InputError):
    pass


class Disconnected(InputError):
    pass


class EndpointMismatch(InputError):
    pass


class NotRigid(AmalgamError):
    """Raised by the rigid classifier when (Ri) fails; carries the failing dart."""

    def __init__(self, dart, reason):
        super().__init__(f"dart {dart}: {reason}")
        self.dart = dart
        self.reason = reason


class SchemaError(InputError):
    pass


class ResourceError(AmalgamError):
    """A configured cap or budget was exceeded."""


class CapExceeded(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    pass
