"""Exception hierarchy shared by all modules."""


class PubDecError(Exception):
    """Base class for every error raised by this package."""


class ModelError(PubDecError, ValueError):
    """An operation received assignments that do not fit the instance."""


class InstanceError(PubDecError, ValueError):
    """Raised when raw data does not describe a valid election instance.

    ``errors`` holds every violation found, not only the first one.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors) if self.errors else "invalid instance")


class InfeasibleOutcomeError(ModelError):
    """The outcome given to an operation that requires ``w in C`` is not feasible."""


class ConstraintError(PubDecError, ValueError):
    """Implication data is missing, malformed, or inconsistent with the constraint."""


class CapExceeded(PubDecError, RuntimeError):
    """An exhaustive search would exceed its configured size cap."""


class TraceError(PubDecError, ValueError):
    """A rule trace does not match its instance or fails to replay."""


class GenerationError(PubDecError, ValueError):
    """A random-instance request cannot be satisfied."""
