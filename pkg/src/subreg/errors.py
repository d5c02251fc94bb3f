"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class SubregError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details


class EmptyLcpSet(SubregError, ValueError):
    code = "empty-lcp-set"


class UnknownSymbol(SubregError, KeyError):
    code = "unknown-symbol"

    def __str__(self):
        return Exception.__str__(self)


class InvalidSymbol(SubregError, ValueError):
    code = "invalid-symbol"


class AlphabetMismatch(SubregError, ValueError):
    code = "alphabet-mismatch"


class NotTotal(SubregError, ValueError):
    code = "not-total"


class ParseError(SubregError, ValueError):
    code = "parse-error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line)
        self.line = line


class ExactUnsupported(SubregError):
    code = "exact-unsupported"


class NotInClass(SubregError):
    """Raised by the canonical builders; ``verdict`` holds the replayable witness."""

    code = "not-in-class"

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ShapeUnverifiable(SubregError, ValueError):
    code = "shape-unverifiable"


class SearchTooLarge(SubregError, ValueError):
    code = "search-too-large"


class UnmappedSegment(SubregError, KeyError):
    code = "unmapped-segment"

    def __str__(self):
        return Exception.__str__(self)
