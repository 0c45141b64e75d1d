"""Exception types shared across the package."""


class CoeulerianError(ValueError):
    """Base class for all validation and domain errors."""


class NotSquareError(CoeulerianError):
    pass


class ZeroOutdegreeError(CoeulerianError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has outdegree 0")


class NotStronglyConnectedError(CoeulerianError):
    pass


class VertexOutOfRangeError(CoeulerianError):
    pass


class SingularMatrixError(CoeulerianError):
    pass


class DimensionMismatchError(CoeulerianError):
    pass


class NotCoEulerianError(CoeulerianError):
    pass


class NotStableError(CoeulerianError):
    pass


class NotRecurrentError(CoeulerianError):
    pass


class UnequalTotalsError(CoeulerianError):
    pass


class TooLargeError(CoeulerianError):
    pass


class RankDeficientError(CoeulerianError):
    pass


class ColumnsNotZeroSumError(CoeulerianError):
    pass
