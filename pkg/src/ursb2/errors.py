"""Exception hierarchy shared by every module."""


class ArtifactError(Exception):
    """Base class for all library errors."""


class DivisionByZero(ArtifactError, ZeroDivisionError):
    pass


class NotRootOfUnity(ArtifactError, ValueError):
    pass


class NotCoprime(ArtifactError, ValueError):
    pass


class DegenerateParameters(ArtifactError, ValueError):
    pass


class ConfigMismatch(ArtifactError, ValueError):
    pass


class LevelMismatch(ArtifactError, ValueError):
    pass


class CaseMismatch(ArtifactError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class RankUnexpected(ArtifactError, AssertionError):
    pass


class ConstraintViolated(ArtifactError, ValueError):
    pass


class ZeroParameter(ArtifactError, ValueError):
    pass


class SingularX1(ArtifactError, ValueError):
    pass


class DimensionCeiling(ArtifactError, ValueError):
    pass


class FamilyMismatch(ArtifactError, ValueError):
    pass


class SchurViolation(ArtifactError, AssertionError):
    """A nonzero intertwiner between simple modules turned out singular."""
