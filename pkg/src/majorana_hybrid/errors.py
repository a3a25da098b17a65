class MajoranaError(ValueError):
    """Base class for every error raised by this package."""


class OddMajoranaCount(MajoranaError):
    pass


class CapExceeded(MajoranaError):
    """A size cap was hit.

    Enumerations attach whatever they completed as ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class IndexOutOfRange(MajoranaError, IndexError):
    pass


class EqualIndices(MajoranaError):
    pass


class OddCardinality(MajoranaError):
    pass


class NotCodeSpacePreserving(MajoranaError):
    pass


class DimensionMismatch(MajoranaError):
    pass


class EmptySupport(MajoranaError):
    pass


class UnknownGate(MajoranaError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadParams(MajoranaError):
    pass


class NonCommutingGenerators(MajoranaError):
    pass
