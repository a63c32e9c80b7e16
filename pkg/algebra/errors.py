"""Exceptions raised by the operator library."""


class OperatorAlgebraError(ValueError):
    """Base class for every failure raised while building or checking operators."""


class NullMomentumError(OperatorAlgebraError):
    def __init__(self, message: str = "null momentum") -> None:
        super().__init__(message)


class DimensionMismatchError(OperatorAlgebraError):
    pass


class NotHermitianError(OperatorAlgebraError):
    def __init__(self, residual: float, tol: float) -> None:
        self.residual = residual
        super().__init__(f"Matrix is not Hermitian: Hermiticity residual {residual:.3e} exceeds {tol:.1e}")


class NotCommutingError(OperatorAlgebraError):
    pass


class PreconditionError(OperatorAlgebraError):
    pass
