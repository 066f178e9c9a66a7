"""Typed errors shared across the engine, kept in one place so the CLI can map
each class to a distinct exit code."""


class SclabError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ParseError(SclabError):
    """Malformed group file. Carries source name, line and column (1-based)."""

    def __init__(self, message, *, source="<string>", line=0, column=0):
        self.source = source
        self.line = line
        self.column = column
        super().__init__(f"{source}:{line}:{column}: {message}")


class UnknownBuiltin(SclabError):
    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown builtin group {name!r}; available: {', '.join(self.available)}"
        )


class CapExceeded(SclabError):
    """Group order or lattice size exceeded a configured cap."""


class SizeCap(SclabError):
    """Simplex count exceeded a configured cap during complex construction."""


class PrimeDoesNotDivide(SclabError):
    def __init__(self, p, order):
        self.p = p
        self.order = order
        super().__init__(f"prime {p} does not divide the group order {order}")


class NotAPGroup(SclabError):
    """An operation requiring a p-group was handed something else."""


class NotMutuallyNormalizing(SclabError):
    """Subgroup product AB requested but neither factor normalizes the other."""


class MapNotWellDefined(SclabError):
    """A poset map sent some element outside the target poset."""

    def __init__(self, message, *, element=None, image=None):
        self.element = element
        self.image = image
        super().__init__(message)


class ComparisonFails(SclabError):
    """A pointwise comparison required by a certificate does not hold."""

    def __init__(self, message, *, element=None):
        self.element = element
        super().__init__(message)


class NotASubposet(SclabError):
    """An inclusion-equivalence check was handed posets that are not nested."""


class ConditionNotSatisfied(SclabError):
    """An operation whose precondition is a group-theoretic condition was called
    on a group where the condition fails."""
