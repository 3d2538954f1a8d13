"""Exception hierarchy.

Two families matter for the CLI exit codes: ``ConfigError`` (bad user
input, exit 2) and ``NumericsError`` (the computation itself refused to
proceed, exit 3).  Everything else is a plain programming error.
"""


class MzLabError(Exception):
    pass


class ConfigError(MzLabError):
    """Malformed flags or config file."""


class NumericsError(MzLabError):
    """A numerical contract was violated at run time."""


class TruncationError(NumericsError):
    """Basis cutoff too small: truncation deficit exceeds the allowed epsilon."""


class DegenerateStateError(NumericsError):
    """State has (near-)zero norm where a direction is required."""


class FilterExhaustedError(NumericsError):
    """Post-selection removed every recorded event."""


class NoInformationError(NumericsError):
    """Fisher information is not positive; no phase information to invert."""


class BasisMismatchError(ValueError):
    """Two states on different truncated bases were combined."""
