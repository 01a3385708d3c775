"""Exception hierarchy shared by every module of the package."""


class BilevelError(Exception):
    """Base class for all errors raised by intbilevel."""


class NotPositiveDefinite(BilevelError, ValueError):
    pass


class NotDiagonal(BilevelError, ValueError):
    pass


class NoConvergence(BilevelError, RuntimeError):
    pass


class DimensionMismatch(BilevelError, ValueError):
    pass


class DimensionTooLarge(BilevelError, ValueError):
    pass


class Infeasible(BilevelError):
    """Raised when a leader region or follower system admits no point."""


class SearchRegionOverflow(BilevelError, RuntimeError):
    """The certified integer search region is too large to exhaust."""


class ZeroVector(BilevelError, ValueError):
    pass


class RNotRepresentable(BilevelError, ValueError):
    pass


class TooLarge(BilevelError, ValueError):
    pass


class ParseError(BilevelError, ValueError):
    """Malformed instance file.

    ``line`` and ``field`` locate the problem when known.
    """

    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


class MismatchedManifests(BilevelError, ValueError):
    pass
