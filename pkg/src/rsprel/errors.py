"""Exception hierarchy shared by every module and mapped onto CLI exit codes."""


class RspError(Exception):
    """Base class for all errors raised by :mod:`rsprel`."""

    exit_code = 2
    kind = "error"


class InputError(RspError, ValueError):
    """Malformed or unsupported input (bad file, disconnected graph, ...)."""

    exit_code = 2
    kind = "input"


class ContractError(RspError, ValueError):
    """A documented precondition of an operation was violated by the caller."""

    exit_code = 2
    kind = "contract"


class ResourceError(RspError, RuntimeError):
    """The requested exhaustive search exceeds its configured budget."""

    exit_code = 3
    kind = "resource"
