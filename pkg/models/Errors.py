"""Exceptions raised by the big picture library"""


class DomainError(ValueError):
    """Base class for every error caused by invalid mathematical input"""


class FormatError(DomainError):
    pass


class LevelInsufficientError(DomainError):
    pass


class OrbitCapError(DomainError):
    pass


class TruncationError(DomainError):
    pass


class NotReplicableError(DomainError):
    def __init__(self, k: int, reason: str) -> None:
        super().__init__(f"not replicable at k={k}: {reason}")
        self.k = k
        self.reason = reason


class IncompleteFamilyError(DomainError):
    pass


class SeriesFormatError(DomainError):
    def __init__(self, message: str, row: int = None) -> None:
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row
