"""
Error types - 证书器异常层次
"""

from typing import Optional


class CertifierError(Exception):
    """Root of every error raised by the certifier."""


class BoundError(CertifierError, ValueError):
    """Arguments outside the range where a discriminant bound is defined."""


class TableFormatError(CertifierError, ValueError):
    """A minoration table file violates the format or the table invariants."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class SearchCapExceeded(CertifierError, RuntimeError):
    """A closure or subgroup search grew beyond its configured cap."""


class GroupError(CertifierError, ValueError):
    """Malformed matrices or group-theoretic preconditions not met."""


class ScenarioError(CertifierError, ValueError):
    """Scenario fields violate the scenario invariants."""


class RuleError(CertifierError, ValueError):
    """A proof rule cannot be applied to the recorded inputs."""


class CertificateFormatError(CertifierError, ValueError):
    """A serialized certificate cannot be parsed."""


class WeilRangeError(CertifierError, ValueError):
    """Weil enumeration parameters outside desk-scale range."""
