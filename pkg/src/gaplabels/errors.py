"""Exception types shared across the package."""


class GapLabelsError(Exception):
    """Base class for errors raised on malformed input data."""


class TreeStructureError(GapLabelsError):
    """A tree violates a structural invariant (bad leaf indices, empty node)."""


class DiscbracketError(GapLabelsError):
    """A bracketed tree line could not be parsed.

    Carries the 1-based line number (if known) and the 0-based column
    where the problem was detected.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        prefix = ""
        if line is not None:
            prefix = f"line {line}"
            if column is not None:
                prefix += f", column {column}"
            prefix += ": "
        super().__init__(prefix + message)


class LabelFileError(GapLabelsError):
    """A tab-separated label file row is malformed.

    Carries the 1-based line number of the offending row when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class EvalAlignmentError(GapLabelsError):
    """Gold and predicted corpora do not line up sentence by sentence."""
