"""Exception taxonomy shared by all estarlab modules."""


class LabError(Exception):
    """Base class for all estarlab errors."""


class InvalidArgument(LabError, ValueError):
    """An argument value is malformed or out of its allowed domain."""


class OutOfRange(LabError, ValueError):
    """A numeric argument lies outside the tabulated / supported range."""


class PoleError(LabError, ValueError):
    """Evaluation was requested exactly at a pole."""


class AccuracyError(LabError, RuntimeError):
    """Requested accuracy is not reachable with the given parameters.

    ``required_terms`` carries a hint for how many terms would suffice,
    when one can be computed.
    """

    def __init__(self, message, required_terms=None):
        super().__init__(message)
        self.required_terms = required_terms


class ConsistencyError(LabError, RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""


class PreconditionError(LabError, ValueError):
    """An operation-level precondition was violated."""
