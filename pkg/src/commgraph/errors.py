"""Exception hierarchy shared by every commgraph module."""


class CommGraphError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(CommGraphError, ValueError):
    """Operands differ in dimension or modulus."""


class PreconditionError(CommGraphError, ValueError):
    """An argument violates an operation's precondition."""


class NotAVertex(CommGraphError, ValueError):
    """The matrix is central, or not a member of the domain."""


class OutOfScope(CommGraphError):
    """The request falls outside what the constructive oracle covers."""


class GuardExceeded(CommGraphError):
    """Enumeration would exceed the configured size guard."""

    def __init__(self, what, required, guard):
        self.what = what
        self.required = required
        self.guard = guard
        super().__init__(f"{what}: requires {required} elements, guard is {guard}")


class WitnessCheckFailed(CommGraphError, RuntimeError):
    """A constructed witness failed its own post-check (implementation bug)."""
