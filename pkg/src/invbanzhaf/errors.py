"""Exception types shared across the package."""


class InverseBanzhafError(Exception):
    """Base class for all errors raised by this package."""


class PlayerCountTooLargeError(InverseBanzhafError):
    """Game has more players than the exhaustive-enumeration cap allows."""


class LengthMismatchError(InverseBanzhafError):
    """Two vectors that must have equal length do not."""


class NonPositiveWeightError(InverseBanzhafError):
    """A solver weight vector contains an entry <= 0."""


class TargetContainsZeroError(InverseBanzhafError):
    """A solver target vector contains an entry <= 0."""


class ExplicitLengthMismatchError(InverseBanzhafError):
    """An explicit starting-weight vector does not match the target length."""


class OracleTooLargeError(InverseBanzhafError):
    """Exact game enumeration was requested for too many players."""


class EmptyAtlasError(InverseBanzhafError):
    """A nearest-vector query was made against an atlas with no vectors."""


class BaselineZeroError(InverseBanzhafError):
    """Relative improvement is undefined because the baseline distance is 0."""


class SpecValidationError(InverseBanzhafError):
    """An experiment specification document failed validation."""
