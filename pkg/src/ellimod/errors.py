"""Exception hierarchy shared by all modules."""


class EllimodError(Exception):
    """Base class for every error raised by this package."""


class InputError(EllimodError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class InvalidDegreeError(InputError):
    """A degree (u, c) fails the constraint u = tau(c) mod Z^z."""


class EnumerationRefused(InputError):
    """The Weyl group is larger than the enumeration cap."""

    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(
            f"Weyl group has order {order}, which exceeds the enumeration cap "
            f"{cap} (raise it with ELLIMOD_WEYL_CAP)"
        )


class ConsistencyError(EllimodError, RuntimeError):
    """An internal cross-check failed. This always indicates a defect."""
