"""
errors.py

Exception types raised by the numerical core. The app maps each of them to
its own exit code, so callers should raise the most specific one.
"""


class SharpenerError(Exception):
    """Base class of every error raised on purpose by this package."""


class DomainError(SharpenerError, ValueError):
    """An argument lies outside the domain of the function."""


class MomentNotDefinedError(DomainError):
    """
    The requested moment does not exist for the given degrees of freedom
    (or sample size), e.g. the variance of a t distribution with nu <= 2.
    """


class DegenerateInputError(DomainError):
    """The data cannot support inference, e.g. a constant return series."""


class NumericError(SharpenerError, ArithmeticError):
    """
    A numerical procedure failed to converge or to bracket its root.

    Parameters
    ----------
    message : str
        Human readable description of the failure
    diagnostics : dict, optional
        Whatever state helps reproduce the failure (brackets, function
        values, iteration counts). Printed by the app next to the message.
    """

    def __init__(self, message: str, diagnostics: dict | None = None) -> None:
        super().__init__(message)
        self.diagnostics: dict = dict(diagnostics or {})

    def __str__(self) -> str:
        if not self.diagnostics:
            return super().__str__()
        details = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{super().__str__()} ({details})"
