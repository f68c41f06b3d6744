"""
Error types
Structural problems and failed preconditions raise; law violations never do,
they are collected in reports instead.
"""


class ArcadeError(Exception):
    """Base class for every error raised by arcade"""


class StructureError(ArcadeError, ValueError):
    """Malformed input: unknown atom ids, non-total maps, bad documents"""


class OwnershipError(StructureError):
    """An element was combined with a structure it does not belong to"""


class PreconditionError(ArcadeError, ValueError):
    """An operation was called outside its documented preconditions"""


class CapExceededError(ArcadeError):
    """A configured search cap would be exceeded"""

    def __init__(self, what: str, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap} (too large for exact mode)")


class ConfigError(ArcadeError, ValueError):
    """Bad configuration file entry or ARCADE_CAPS override"""
