"""Shared error types.

Every contract failure in the library raises one of these instead of a bare
ValueError, so callers (and the CLI) can distinguish bad input from a
negative verdict.  A negative verdict (an axiom that fails, an ideal that is
not quadratic) is reported through result objects, never through exceptions.
"""


class DglabError(Exception):
    """Base class for all library errors."""


class NotASubspace(DglabError):
    """A vector set does not lie inside the claimed ambient space or span."""


class BadProjector(DglabError):
    """A supplied averager is not an idempotent projector onto the subspace."""


class DimensionMismatch(DglabError):
    """Two objects that must share dimensions do not."""


class InvalidSplitting(DglabError):
    """A splitting is inconsistent with the complex it claims to split."""


class NoAction(DglabError):
    """An operation requiring a group action was called without one."""


class UnsupportedArity(DglabError):
    """Transferred brackets are only available for arities 2, 3 and 4."""


class NotAnInvolution(DglabError):
    """A claimed involution does not square to the identity."""


class NotAnAutomorphism(DglabError):
    """A map fails to commute with the differential or the bracket."""


class OddDiagonal(DglabError):
    """A self-extension count is odd, so loops cannot be halved."""


class ShapeMismatch(DglabError):
    """A representation point has matrices of the wrong shape."""


class InfiniteGlobalDimension(DglabError):
    """A simple module admits no finite projective resolution."""


class NotFiniteDimensional(DglabError):
    """Path enumeration did not terminate within the length bound."""


class DegenerateForm(DglabError):
    """A Frobenius functional induces a singular bilinear form."""


class NotSymmetric(DglabError):
    """A Frobenius functional fails lambda(ab) = lambda(ba)."""


class ParseError(DglabError):
    """A fixture file is not syntactically valid JSON."""


class SchemaViolation(DglabError):
    """A fixture file parses but has missing or mistyped fields."""


class InvariantViolation(DglabError):
    """A fixture file is well formed but breaks a declared invariant."""
