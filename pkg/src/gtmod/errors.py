"""Exception hierarchy shared by all gtmod kernels."""

from __future__ import annotations


class GTError(Exception):
    """Base class for all engine errors."""


class ContextMismatch(GTError):
    """Two jets from different jet contexts were combined."""


class NotInvertible(GTError):
    """Laurent jet whose lowest-order part is not a single monomial."""


class PrecisionExhausted(GTError):
    """A coefficient was requested beyond the tracked validity bound."""


class NotSmooth(GTError):
    """Evaluation at the origin hit a genuine (non-removable) pole."""


class PoleAtOrigin(GTError):
    """Symbolic rational function has a pole at s = 0 after cancellation."""


class RankTooLarge(GTError):
    """Exhaustive group search requested above the supported rank."""


class SeedValidationError(GTError):
    """A tableau failed seed validation; carries every violated condition."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v[1] for v in self.violations))

    def codes(self):
        return sorted({v[0] for v in self.violations})


# violation codes used inside SeedValidationError
SINGULAR_TRIPLE = "SingularTriple"
HIDDEN_SINGULAR_PAIR = "HiddenSingularPair"
UNEQUAL_PAIR = "UnequalPair"
BAD_DECLARATION = "BadDeclaration"
