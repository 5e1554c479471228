"""Exception hierarchy. Everything derives from ValueError so callers can catch broadly."""


class BalanceError(ValueError):
    pass


class InvalidParameterError(BalanceError):
    """A numeric parameter is outside its admissible range."""


class InvalidInputError(BalanceError):
    """Structurally invalid input (wrong length, empty set, bad index)."""


class InstanceFormatError(BalanceError):
    """An instance document could not be parsed. ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ConfigurationError(BalanceError):
    """Unknown algorithm label or inconsistent run configuration."""


class OracleTooLargeError(BalanceError):
    pass
