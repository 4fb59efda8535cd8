"""Exception types shared across the package."""


class EdstError(Exception):
    """Base class for all package errors."""


class MalformedNumeralError(EdstError):
    """A numeral expression violates the sign grammar of its system."""


class EncodingError(EdstError):
    """A magnitude cannot be written in the requested numeral system."""


class UnknownUnitError(EdstError):
    pass


class UnknownContextError(EdstError):
    pass


class DimensionError(EdstError):
    """Length/surface mismatch in an operation that needs one dimension."""


class UnrepresentableError(EdstError):
    """A quantity has no exact written form in the requested context."""


class MeasureParseError(EdstError):
    """Bad transliteration input; carries the byte offset of the offender."""

    def __init__(self, message: str, offset: int = 0, text: str = ""):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.text = text

    def __str__(self) -> str:
        return f"{self.message} (offset {self.offset})"


class CorpusError(EdstError):
    """Malformed corpus file; carries the file line number."""

    def __init__(self, message: str, line: int = 0, path: str = ""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.path = path

    def __str__(self) -> str:
        where = f"{self.path}:{self.line}" if self.path else f"line {self.line}"
        return f"{where}: {self.message}"


class SchemeError(EdstError):
    """A cut-and-paste scheme does not account for the target square."""
