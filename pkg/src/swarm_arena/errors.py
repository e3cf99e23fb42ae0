class DimensionMismatchError(ValueError):
    """A vector's length does not fit a problem's dimensionality class."""


class InvalidConfigError(ValueError):
    """An optimizer or evaluation setting is out of range."""


class MissingBaselineError(KeyError):
    """The requested baseline algorithm has no records in the run matrix."""
