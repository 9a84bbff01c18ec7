"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`PGTError`,
which is also a :class:`ValueError` so callers that only care about bad input
can catch the builtin.
"""


class PGTError(ValueError):
    """Base class for all library errors."""


# finite algebra
class NotPrime(PGTError):
    pass


class NotIrreducible(PGTError):
    pass


class DimensionMismatch(PGTError):
    pass


class SizeCapExceeded(PGTError):
    pass


# group models
class CapExceeded(PGTError):
    pass


class NotLatinSquare(PGTError):
    pass


class NoIdentity(PGTError):
    pass


class NotAssociative(PGTError):
    pass


class EvenPrime(PGTError):
    pass


class NotAlternating(PGTError):
    pass


# analyses
class CentralElement(PGTError):
    pass


class NotPrimePower(PGTError):
    pass


class NotPGroup(NotPrimePower):
    pass


class AbelianGroup(PGTError):
    pass


class AllCentral(PGTError):
    pass


class NotAbelian(PGTError):
    pass


class NotMaximalAbelian(PGTError):
    pass


class NotSes(PGTError):
    pass


# constructions
class InconsistentRelations(PGTError):
    pass


class InvalidN(PGTError):
    pass


class VerificationFailed(PGTError):
    """A constructed group failed one of its stated properties."""

    def __init__(self, predicate, detail=""):
        self.predicate = predicate
        self.detail = detail
        msg = f"verification failed: {predicate}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
