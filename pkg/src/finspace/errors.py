"""Exception types shared across the package."""


class FinspaceError(Exception):
    pass


class CycleError(FinspaceError, ValueError):
    """The covering relation closes up into a cycle (antisymmetry fails)."""


class UnknownLabel(FinspaceError, KeyError):
    pass


class EmptyPoset(FinspaceError, ValueError):
    pass


class NotPathConnected(FinspaceError, ValueError):
    pass


class ParseError(FinspaceError, ValueError):
    pass


class UnknownFormat(FinspaceError, ValueError):
    pass


class SizeLimit(FinspaceError, RuntimeError):
    """An enumeration would exceed the configured ceiling."""

    def __init__(self, what, count, limit):
        super().__init__(f"{what}: {count} exceeds the size limit {limit}")
        self.what = what
        self.count = count
        self.limit = limit


class ChainViolation(FinspaceError, AssertionError):
    """A computed inequality chain does not hold."""


DEFAULT_LIMIT = 2_000_000
