"""Exception hierarchy shared by every module."""


class RpqvError(Exception):
    pass


class DomainError(RpqvError, ValueError):
    """An operation was asked to evaluate outside its domain."""


class PoleError(DomainError):
    """A deformation function (or one of its subexpressions) has a pole at the requested point."""

    def __init__(self, message, subexpression=None):
        super().__init__(message)
        self.subexpression = subexpression


class DegenerateIndexError(DomainError):
    """Index combination where a formula divides by zero (e.g. [0] = 0)."""


class ParseError(RpqvError, ValueError):
    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
        self.message = message


class LexError(ParseError):
    pass


class ExponentError(ParseError):
    pass


class ConfigError(RpqvError, ValueError):
    def __init__(self, message, field=None, position=None):
        self.field = field
        self.position = position
        where = []
        if field:
            where.append(f"field {field!r}")
        if position is not None:
            where.append(f"position {position}")
        super().__init__(f"{message}" + (f" [{', '.join(where)}]" if where else ""))
