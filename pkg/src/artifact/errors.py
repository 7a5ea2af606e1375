"""Exception types shared by every module.

The CLI maps each class to its own exit status, so callers can tell a bad
input from an input that is valid but outside the supported range, and
both from an internal arithmetic inconsistency.
"""


class ArtifactError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(ArtifactError, ValueError):
    """An argument violates a documented precondition."""


class UnsupportedInput(ArtifactError):
    """The input is meaningful but lies outside what is implemented."""


class EnumerationCapExceeded(UnsupportedInput):
    """A brute-force enumeration would examine more candidates than allowed."""

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(
            f"enumeration needs {required} candidates, cap is {cap} "
            f"(raise it with --cap or ARTIFACT_ENUM_CAP)"
        )


class ConsistencyError(ArtifactError, ArithmeticError):
    """An identity that must hold exactly failed; signals a bug upstream."""
