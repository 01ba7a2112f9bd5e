"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage problems exit 1, DataError
(bad corpus, bad artifact, bad request against the data) exits 2, and
anything else exits 3.
"""


class ThemescopeError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ConfigError(ThemescopeError):
    """Invalid configuration value or inconsistent artifact wiring."""

    code = "config_error"


class DataError(ThemescopeError):
    """Malformed or contradictory input data."""

    code = "data_error"


class NotFoundError(DataError):
    """A referenced document, theme, or session does not exist."""

    code = "not_found"


class ReadOnlyError(DataError):
    """Write attempted on a session bound to a different model."""

    code = "read_only"
