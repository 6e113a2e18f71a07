"""Exception hierarchy shared by every module of the package."""


class BoolHierError(Exception):
    """Base class for all errors raised by this package."""


class DfaSyntaxError(BoolHierError):
    """A DFA or regex description could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(BoolHierError):
    """A parsed automaton violates a structural invariant (e.g. a missing transition)."""


class AlphabetError(BoolHierError):
    """A word contains a letter outside the automaton's alphabet."""


class AlphabetMismatch(BoolHierError):
    """Two automata that must share an alphabet do not."""


class AlphabetArityError(BoolHierError):
    """The decider requires an alphabet of a specific size."""


class NotStarFreeError(BoolHierError):
    """The language is not star-free (its syntactic monoid is not aperiodic)."""


class BudgetExceeded(BoolHierError):
    """A search would exceed its configured state or configuration budget."""


class BoundsError(BoolHierError):
    """A search parameter exceeds its configured cap."""
