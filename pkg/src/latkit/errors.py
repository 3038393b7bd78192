"""Exception types shared across the toolkit."""


class LatkitError(Exception):
    """Base class for all toolkit errors."""


class NotAPoset(LatkitError):
    """The input relation has a cycle or is otherwise not a partial order."""


class NotALattice(LatkitError):
    """Some pair of elements lacks a unique meet or join."""


class Unbounded(LatkitError):
    """The poset has no global bottom or no global top."""


class NotASublattice(LatkitError):
    """A subset is not closed under meet and join."""


class SizeLimit(LatkitError):
    """Input exceeds the size this operation is prepared to handle."""


class SpecViolation(LatkitError):
    """A construction's input data violates its stated preconditions."""


class ColumnNotSurjective(LatkitError):
    """A generator matrix column does not contain every generator."""


class NotGenerating(LatkitError):
    """An assignment of generators does not generate the target lattice."""


class ConstructionSelfCheckFailed(LatkitError):
    """A built-in construction failed its build-time sanity checks."""


class ParseError(LatkitError):
    """A lattice file failed to parse; carries a line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
