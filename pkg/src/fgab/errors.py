"""Exception hierarchy shared by every module of the package."""


class FgabError(ValueError):
    """Base class for all domain errors raised by :mod:`fgab`."""


class ContainmentViolation(FgabError):
    pass


class BadTorsion(FgabError):
    pass


class DimensionMismatch(FgabError):
    pass


class AmbientMismatch(FgabError):
    pass


class RankMismatch(FgabError):
    pass


class RankZero(FgabError):
    pass


class BadRank(FgabError):
    pass


class NotMaximal(FgabError):
    pass


class FamilyMismatch(FgabError):
    pass


class BadBound(FgabError):
    pass


class RankZeroGroup(FgabError):
    pass


class MalformedSpec(FgabError):
    pass


class IdentityInput(FgabError):
    pass


class ParseError(FgabError):
    """Raised for malformed textual input (group specs, words, JSON)."""
