"""Exception hierarchy shared across the library and the CLI.

PreconditionError subclasses signal rejected inputs (CLI exit code 2),
ParseError signals malformed input strings (exit code 3), and
InternalInvariantError signals a violated internal invariant (exit code 1).
"""

from __future__ import annotations


class AlcoveDLError(Exception):
    """Base class for all library errors."""


class PreconditionError(AlcoveDLError):
    """An operation was called on input that violates its precondition."""


class SingularWeight(PreconditionError):
    """A weight lies on a wall of the scaled hyperplane arrangement."""


class NotRestricted(PreconditionError):
    """A weight is not restricted (some simple pairing outside [0, p-1])."""


class NotRegular(PreconditionError):
    """A weight is not regular restricted (simple pairing >= p-1)."""


class MuNotInC0(PreconditionError):
    """mu - eta does not lie in the interior of the base scaled alcove."""


class MuNotDeep(PreconditionError):
    """mu - eta is not deep enough for the uniform decomposition pattern."""

    def __init__(self, depth: int, required: int):
        self.depth = depth
        self.required = required
        super().__init__(f"depth {depth} < required {required}")


class PrimeMismatch(PreconditionError):
    """Two presentations were compared at different primes."""


class NoHypothesisApplies(PreconditionError):
    """Neither covering-construction hypothesis admits any Weyl element."""


class InsufficientHypothesisHits(PreconditionError):
    """A filtered sampling run produced zero hypothesis-satisfying samples."""


class InputTooLarge(PreconditionError):
    """A brute-force oracle was called outside its bounded domain."""


class ParseError(AlcoveDLError):
    """A serialized weight, element, or flag could not be parsed."""


class InternalInvariantError(AlcoveDLError):
    """A guaranteed internal invariant failed; indicates a bug."""
