"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class NewtonError(Exception):
    """Base class for all package-specific errors."""


class ParseError(NewtonError):
    """Raised by the ideal parser; carries the offending text position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EmptyIdeal(NewtonError):
    """The zero ideal: no nonzero generators."""


class UnitIdeal(NewtonError):
    """A generator is a unit at the origin; local analysis is vacuous."""


class InvalidFace(NewtonError):
    """The supplied face does not belong to the ideal's polygon."""


class InvalidInput(NewtonError):
    """An argument violates a documented precondition."""


class NonRationalRoot(NewtonError):
    """A face polynomial has an irreducible factor without rational roots.

    The offending residual polynomial is attached for diagnostics.
    """

    def __init__(self, residual):
        super().__init__(
            f"face polynomial residual {residual} has no rational root"
        )
        self.residual = residual


class NotFiniteCodimension(NewtonError):
    """The ideal is not of finite codimension (vanishes along a curve)."""


class DegenerateCone(NewtonError):
    """A cone's generators are collinear or wrongly oriented."""


class InvalidEdge(NewtonError):
    """Edge determinant requested for an edge ending in an arrowhead."""


class InvalidExchange(NewtonError):
    """exchange_vertical preconditions not met at the given vertex."""


class NotMinimal(NewtonError):
    """dual_graph requires a minimal tree."""


class CertificateFailed(NewtonError):
    """The threshold certificate chain broke; indicates a bug, not a result."""


class CoordinateChangeDiverged(NewtonError):
    """Coordinate improvement failed to stabilize within the iteration bound.

    Signals a smooth-branch factor that only a power-series change could
    remove; the persistent face is attached for diagnostics.
    """

    def __init__(self, message: str, face=None):
        super().__init__(message)
        self.face = face


class UnsupportedFormat(NewtonError):
    """render() does not support the requested artifact/format pair."""


class InvariantViolation(NewtonError):
    """An internal consistency check failed; always a bug."""
