"""Exception hierarchy shared by all zpdlab modules."""


class ZpdError(Exception):
    """Base class for every error raised by zpdlab."""


class DimensionError(ZpdError, ValueError):
    """Operands live in spaces of different dimensions."""


class ScalarSyntaxError(ZpdError, ValueError):
    """A scalar literal could not be parsed (or has a zero denominator)."""


class AxiomError(ZpdError):
    """Structure constants violate associativity, unit or bimodule laws."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIdempotentError(ZpdError):
    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class NotAnIdealError(ZpdError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class UnsupportedAlgebraError(ZpdError):
    """No canonical idempotent family is known; the caller must supply one."""


class HypothesisError(ZpdError):
    """A theorem's hypothesis does not hold for the given input."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class PreconditionError(ZpdError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FactorizationError(ZpdError):
    """A bilinear map failed to factor through the product on some basis pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpecSyntaxError(ZpdError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column
