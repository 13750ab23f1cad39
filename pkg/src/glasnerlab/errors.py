"""Exception types shared across the package."""


class GlasnerError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GlasnerError):
    pass


class ZeroVector(GlasnerError):
    pass


class DependentVectors(GlasnerError):
    pass


class BadGcd(GlasnerError):
    pass


class NonIntegerValue(GlasnerError):
    pass


class HypothesisFailed(GlasnerError):
    pass


class BadDelta(GlasnerError):
    pass


class BadEpsilon(GlasnerError):
    pass


class BadMesh(GlasnerError):
    pass


class NotExact(GlasnerError):
    pass


class NotAViolation(GlasnerError):
    pass


class NotUnipotent(GlasnerError):
    pass


class BadDeterminant(GlasnerError):
    pass


class NotCertifiedIrreducible(GlasnerError):
    pass


class FormatError(GlasnerError):
    pass
