class STMError(Exception):
    """Base class for computation errors (CLI exit code 1)."""


class UnsupportedType(STMError, ValueError):
    pass


class NegativeStructureConstant(STMError):
    pass


class DegenerateAveraging(STMError):
    pass


class NonSplitSemisimpleQuotient(STMError):
    pass


class GateFailure(STMError):
    pass
