"""Exception hierarchy shared across the package."""

from __future__ import annotations


class AkforgeError(Exception):
    """Base class for all package-specific errors."""


class InvalidInput(AkforgeError):
    """Argument outside the documented domain (negative s, d < 1, ...)."""


class PolySyntaxError(AkforgeError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NegativeExponent(PolySyntaxError):
    """Exponent after '^' was negative."""


class MismatchedContract(AkforgeError):
    """Truncated series with different weights/cutoff were combined."""


class PreconditionViolated(AkforgeError):
    """A coordinate-change polynomial had a constant or degree-1 term."""


class IdentityViolation(AkforgeError):
    """An exact polynomial identity failed; carries the symbolic difference."""

    def __init__(self, message: str, difference=None):
        super().__init__(message)
        self.difference = difference


class CertificationFailed(AkforgeError):
    """Newton-segment certification rejected; carries the certificate."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class WindowTooSmall(AkforgeError):
    """Series cutoff does not cover the segment inspection window."""


class NotACriticalGerm(AkforgeError):
    """Input has a nonzero constant or (for corank) linear part at the origin."""


class NonIsolated(AkforgeError):
    """The two partial derivatives share a factor; no finite Milnor number."""


class NonIsolatedSuspected(AkforgeError):
    """Local-algebra dimension did not stabilize below the cap."""


class GenericityFailure(AkforgeError):
    """All sheared resultant attempts failed the genericity checks."""
