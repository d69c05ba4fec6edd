"""Exception hierarchy shared by the library and the CLI."""


class WoIdealError(Exception):
    """Base class for all errors raised by wo_ideal."""

    exit_code = 1


class InvalidGraphError(WoIdealError, ValueError):
    """Input does not describe a legal weighted oriented graph."""

    exit_code = 2


class NotACoverError(WoIdealError, ValueError):
    exit_code = 2


class NotApplicableError(WoIdealError, ValueError):
    """A construction was requested outside the hypotheses that certify it."""

    exit_code = 2


class CapacityError(WoIdealError):
    """Instance exceeds a configured exact-mode cap."""

    exit_code = 3


class BudgetExceeded(CapacityError):
    """Wall-clock budget ran out; ``partial`` carries whatever was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantViolation(WoIdealError):
    """Two routes that must agree did not. Always a bug."""

    exit_code = 4


class NotStrongCoverError(NotACoverError):
    pass
