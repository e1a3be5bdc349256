"""Exception and warning types shared across the package."""


class PtsymError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteError(PtsymError, ValueError):
    pass


class NotHermitianError(PtsymError, ValueError):
    def __init__(self, residual: float, tol: float):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(f"matrix is not Hermitian: max|M - M^H| = {residual:.3e} > tol {tol:.1e}")


class ConvergenceError(PtsymError, RuntimeError):
    pass


class ZeroVectorError(PtsymError, ValueError):
    pass


class DimensionMismatchError(PtsymError, ValueError):
    pass


class CompositionMismatchError(PtsymError, ValueError):
    def __init__(self, residual: float, tol: float):
        self.residual = float(residual)
        super().__init__(f"PT and TP disagree: residual {residual:.3e} > tol {tol:.1e}")


class NormAnomalousError(PtsymError, ValueError):
    pass


class DegenerateInputError(PtsymError, ValueError):
    pass


class AsymmetricGridError(PtsymError, ValueError):
    pass


class AllBelowFloorError(PtsymError, ValueError):
    pass


class EvaluationError(PtsymError, ValueError):
    pass


class PotentialSyntaxError(PtsymError, ValueError):
    """Malformed potential expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at offset {position}")


class UnknownFunctionError(PotentialSyntaxError):
    pass


class UnknownIdentifierError(PotentialSyntaxError):
    pass


class DegeneracyWarning(UserWarning):
    """Eigenvalues closer than the degeneracy gap; eigenvector choice is solver-dependent."""


class FormatError(PtsymError, ValueError):
    pass
