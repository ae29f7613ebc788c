"""Exception hierarchy shared by all modules."""


class CoxperpError(Exception):
    """Base class for errors raised by this package."""


class InputError(CoxperpError, ValueError):
    """Malformed or inconsistent user input (unknown generator, bad path, ...)."""


class ParseError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class PreconditionError(CoxperpError, ValueError):
    """An operation was called outside its documented domain."""


class LimitExceeded(CoxperpError, RuntimeError):
    """A configured enumeration cap was exceeded."""


class InconsistencyError(CoxperpError, RuntimeError):
    """Two independent computations disagree. Never expected."""
