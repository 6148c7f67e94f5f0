"""Exception hierarchy shared by all modules."""


class NefWCIError(Exception):
    """Base class for every error raised by the package."""


class ParseError(NefWCIError, ValueError):
    """Input text does not match the expected grammar.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def pointer(self):
        """Two-line rendering of the input with a caret under the error."""
        return f"{self.text}\n{' ' * self.position}^"


class PreconditionError(NefWCIError, ValueError):
    """An operation was called on input outside its domain."""


class InvalidPartition(PreconditionError):
    """A splitting of the index set violates the nef partition constraints."""


class ResourceError(NefWCIError):
    """A configured node or term budget was exceeded."""


class LemmaViolation(NefWCIError, AssertionError):
    """An internal postcondition guaranteed by a proven statement failed.

    Reaching this means either a bug or a counterexample; the message
    carries the witness.
    """


class InconsistentResult(NefWCIError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class IntegrityError(NefWCIError):
    """Embedded data does not match its recorded checksum."""
