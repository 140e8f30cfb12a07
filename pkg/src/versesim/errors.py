"""Shared exception types."""


class VersesimError(Exception):
    """Base class for errors raised by this package."""


class FormatError(VersesimError, ValueError):
    """A data file violates its documented format.

    Messages always name the offending file and, where possible, the line
    number or byte offset.
    """
