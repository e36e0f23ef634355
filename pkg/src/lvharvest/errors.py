"""Exception types shared across the package."""


class LVHarvestError(Exception):
    """Base class for all errors raised by this package."""


class InvalidConfig(LVHarvestError):
    """A configuration value is missing, malformed, or out of range."""


class DegenerateInput(LVHarvestError):
    """An input object is structurally unusable (empty table, NaN coefficient, ...)."""


class AssumptionViolation(LVHarvestError):
    """The competition matrix does not satisfy the dominance condition c11*c22 > c21*c12."""


class RegimeError(LVHarvestError):
    """An operation that requires a specific long-run regime was applied outside it."""


class NonFinite(LVHarvestError):
    """A simulated state became NaN or infinite."""

    def __init__(self, message, path_index=None, step_index=None):
        super().__init__(message)
        self.path_index = path_index
        self.step_index = step_index


class EmptyWindow(LVHarvestError):
    """A requested averaging window contains no sample points."""


class EmptyFeasible(LVHarvestError):
    """No point of a search grid satisfies the persistence constraint."""


class ParseError(LVHarvestError):
    """A config document is structurally malformed; message carries the JSON path."""


class ValidationError(LVHarvestError):
    """A config document parsed but violates a physical or numerical constraint."""
