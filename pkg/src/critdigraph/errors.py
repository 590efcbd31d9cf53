"""Exception hierarchy shared across the package."""


class ParseError(ValueError):
    """Base class for malformed text input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HeaderError(ParseError):
    pass


class ArcFormatError(ParseError):
    pass


class RangeError(ParseError):
    pass


class LoopError(ParseError):
    pass


class DuplicateArcError(ParseError):
    pass


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class InvalidMatchingError(PreconditionError):
    """A matched pair spans a digon, so it cannot form an acyclic class."""


class StructureError(ValueError):
    """A decomposition does not fit the graph it claims to describe."""


class HypothesisError(Exception):
    """The input digraph does not satisfy the theorem's hypotheses."""

    def __init__(self, failed: list[str], trace=None):
        self.failed = failed
        self.trace = trace
        super().__init__("hypotheses not met: " + "; ".join(failed))


class TheoremViolation(AssertionError):
    """A proof step failed on an input satisfying the hypotheses.

    Carries the full trace; this would be a counterexample.
    """

    def __init__(self, step: str, trace):
        self.step = step
        self.trace = trace
        super().__init__(f"theorem violation at step {step}")
