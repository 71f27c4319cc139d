"""Exception types shared across the package."""

from __future__ import annotations


class SpinPicardError(ValueError):
    """Base class for every validation or domain error raised by this package."""


class GraphError(SpinPicardError):
    """Malformed or inconsistent dual-graph data."""


class BlowupError(SpinPicardError):
    """Blow-up counts out of range for the underlying graph."""


class WitnessError(SpinPicardError):
    """Spin witness tables violate bounds, symmetry, or parity."""


class ParityError(SpinPicardError):
    """A spin-parity condition fails: some component keeps an odd contact count."""


class DomainError(SpinPicardError):
    """Parameter outside the supported range (genus, twist bound, stability)."""


class BasicInequalityError(SpinPicardError):
    """The multidegree violates the basic inequality, so it indexes no fiber component."""


class GraphTooLargeError(SpinPicardError):
    """Vertex count exceeds the cap that keeps exhaustive subset scans tractable."""
