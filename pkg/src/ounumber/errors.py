"""Exception hierarchy.

Every domain error derives from :class:`LinkError`; the CLI maps those to
exit code 1. :class:`InternalError` marks a broken invariant (exit code 2).
"""


class LinkError(Exception):
    """Base class for domain errors (bad input, failed preconditions)."""

    code = "ERROR"


class ParseError(LinkError):
    code = "PARSE_ERROR"


class ValidationError(LinkError):
    code = "VALIDATION_ERROR"


class RejectError(LinkError):
    """A word operation was asked to act on a position where it does not apply."""

    code = "REJECT"


class BadComponent(LinkError):
    code = "BAD_COMPONENT"


class SameComponent(LinkError):
    code = "SAME_COMPONENT"


class StaleSite(LinkError):
    code = "STALE_SITE"


class NotR3(LinkError):
    code = "NOT_R3"


class ComponentMismatch(LinkError):
    code = "COMPONENT_MISMATCH"


class InvalidWord(LinkError):
    code = "INVALID_WORD"


class BadParams(LinkError):
    code = "BAD_PARAMS"


class UnknownFixture(LinkError):
    code = "UNKNOWN_FIXTURE"


class NonIntegralBound(LinkError):
    """The Φ vectors cannot come from two diagrams of the same link."""

    code = "NON_INTEGRAL_BOUND"


class InternalError(Exception):
    """An internal invariant was violated; always a bug."""

    code = "INTERNAL"
