"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CoordError(ValueError):
    """Base class for every error raised by histcoords."""


class GrammarError(CoordError):
    """A canonical coordinate string deviates from the grammar."""

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position} of {text!r}: expected {expected}")


class RangeError(CoordError):
    """Minutes/seconds >= 60 or degrees outside the hemisphere's bounds."""


class DecodeError(CoordError):
    """A nested-list geometry annotation cannot be decoded."""


class DepthError(DecodeError):
    pass


class EmptyError(DecodeError):
    pass


class UnknownPrefixError(DecodeError):
    pass


class StructureError(DecodeError):
    """The lists are well nested but do not describe any known geometry."""


class UnsupportedMeridianError(CoordError):
    """No offset is known for the meridian, so the longitude cannot be converted."""


class EmptyRegionSetError(CoordError):
    pass


class EmptyEvalError(CoordError):
    pass


class UnmatchedIdError(CoordError):
    def __init__(self, orphans):
        self.orphans = sorted(orphans)
        shown = ", ".join(self.orphans[:10])
        more = "" if len(self.orphans) <= 10 else f" (+{len(self.orphans) - 10} more)"
        super().__init__(f"prediction ids not present in gold: {shown}{more}")


class SchemaError(CoordError):
    def __init__(self, message: str, index: int | None = None, key: str | None = None):
        self.index = index
        self.key = key
        where = ""
        if index is not None:
            where = f"entry {index}"
            if key is not None:
                where += f", key {key!r}"
            where += ": "
        super().__init__(where + message)


class DatasetFileError(CoordError, OSError):
    """The dataset file is missing, unreadable or not JSON."""
