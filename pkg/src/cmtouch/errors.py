"""Exception hierarchy shared across the toolkit.

The CLI maps these onto stable exit codes: config/usage and I/O problems
exit 1, numeric failures exit 2, protocol guards exit 3.
"""


class CmtouchError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CmtouchError):
    """A value violates a documented invariant (names the offending field)."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class FormatError(CmtouchError):
    """A binary or JSON artifact does not match its documented layout."""


class UnsupportedVersionError(CmtouchError):
    """An artifact declares a format version this build cannot read."""


class ConsistencyError(CmtouchError):
    """Two artifacts that must agree (e.g. manifest entry vs file header) do not."""


class ConfigError(CmtouchError):
    """A run configuration is malformed or contains unknown keys."""


class DegenerateInputError(CmtouchError):
    """An input is too small for the requested operation (e.g. T <= horizon)."""


class NumericsError(CmtouchError):
    """A numeric computation produced non-finite values."""


class ProtocolError(CmtouchError):
    """An evaluation protocol guard failed (e.g. class leakage across splits)."""
