"""Exception hierarchy shared by all lexfilter modules.

The CLI maps these onto process exit codes: usage problems exit 1,
DataError exits 2, InvariantError exits 3.
"""

from __future__ import annotations


class LexfilterError(Exception):
    """Base class for all errors raised by this package."""


class DataError(LexfilterError):
    """A problem with input data: missing files, bad columns, empty corpora.

    Carries optional file/row context so CLI messages can name the
    offending location.
    """

    def __init__(self, message: str, file: str | None = None, row: int | None = None):
        self.file = file
        self.row = row
        parts = [message]
        if file is not None:
            parts.append(f"file={file}")
        if row is not None:
            parts.append(f"row={row}")
        super().__init__(" ".join(parts) if len(parts) == 1 else f"{message} ({', '.join(parts[1:])})")


class InvariantError(LexfilterError):
    """An internal invariant was violated; indicates a bug or corrupted artifact."""
