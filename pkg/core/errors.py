# core/errors.py
"""
Exception hierarchy shared by the engine and the CLI.
The CLI maps each class to an exit code; the engine only raises.
"""


class AntiBCHError(Exception):
    """Base class for every error raised by the engine"""


class ParameterError(AntiBCHError, ValueError):
    """A precondition on the inputs of an operation does not hold"""


class GuardExceeded(AntiBCHError):
    """An enumeration would exceed its configured resource guard"""

    def __init__(self, message: str, suggestion: str = ""):
        super().__init__(message)
        self.suggestion = suggestion


class VerificationFailure(AntiBCHError, AssertionError):
    """A mechanical check inside an operation's postcondition failed"""
