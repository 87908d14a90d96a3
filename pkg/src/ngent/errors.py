class ParameterError(ValueError):
    """A state or grid parameter lies outside its allowed domain."""


class OrderOverflowError(ValueError):
    """A monomial exceeds the permitted moment order."""


class MissingMomentError(KeyError):
    """A moment table lacks an entry that a computation needs."""


class NonPhysicalWarning(UserWarning):
    """A covariance matrix violates gamma + i*Omega >= 0 beyond tolerance."""


class SerializationError(ValueError):
    """Malformed or incompatible serialized data.

    ``field`` names the offending entry; ``line`` and ``column`` are set
    when the position in the input text is known.
    """

    def __init__(self, message, field=None, line=None, column=None):
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        super().__init__(message + (f" ({'; '.join(where)})" if where else ""))
        self.field = field
        self.line = line
        self.column = column
