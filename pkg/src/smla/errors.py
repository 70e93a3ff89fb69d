"""Exception hierarchy.

Two families are distinguished so that front ends can map them to different
exit statuses: :class:`InputError` for malformed or non-conformable inputs and
:class:`MathError` for inputs that are well formed but mathematically
unsuitable (singular blocks, non-ergodic chains, ...).
"""

__all__ = [
    "SuperAlgebraError",
    "InputError",
    "MathError",
    "PartitionMismatch",
    "IncompatiblePartition",
    "ComponentCountMismatch",
    "NonSquareBlock",
    "InvalidModel",
    "FileFormatError",
    "SingularBlock",
    "ZeroPolynomial",
    "NotAnEigenvalue",
    "NotDiagonalizable",
    "NotNormal",
    "NotSelfAdjoint",
    "NegativeSpectrum",
    "DependentBlock",
    "NotSymmetric",
    "NotSkew",
    "NegativeSteps",
    "NotErgodic",
    "NoNonnegativeSolution",
    "NotProductive",
]


class SuperAlgebraError(Exception):
    """Base class of every error raised by :mod:`smla`."""


class InputError(SuperAlgebraError, ValueError):
    """Structural problem with the arguments (shapes, partitions, files)."""


class MathError(SuperAlgebraError, ArithmeticError):
    """The arguments are well formed but the operation is undefined for them."""


class PartitionMismatch(InputError):
    pass


class IncompatiblePartition(InputError):
    """Operands have the same scalar shape but are cut differently."""


class ComponentCountMismatch(InputError):
    pass


class NonSquareBlock(InputError):
    def __init__(self, block, shape=None):
        self.block = block
        self.shape = shape
        msg = f"block {block} is not square"
        if shape is not None:
            msg += f" (shape {shape[0]}x{shape[1]})"
        super().__init__(msg)


class InvalidModel(InputError):
    """A model or file violates one of its stated invariants."""


class FileFormatError(InputError):
    """A file could not be parsed; the message names the line or field."""


class _BlockError(MathError):
    what = "failed"

    def __init__(self, block, detail=""):
        self.block = block
        msg = f"block {block} {self.what}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SingularBlock(_BlockError):
    what = "is singular"


class NotAnEigenvalue(_BlockError):
    what = "has a trivial eigenspace for the requested value"


class NotDiagonalizable(_BlockError):
    what = "is not diagonalizable"


class NotNormal(_BlockError):
    what = "is not normal"


class NotSelfAdjoint(_BlockError):
    what = "is not self-adjoint"


class NegativeSpectrum(_BlockError):
    what = "has a negative eigenvalue"


class NotSymmetric(_BlockError):
    what = "is not symmetric"


class NotSkew(_BlockError):
    what = "is not skew-symmetric"


class NotErgodic(_BlockError):
    what = "is not ergodic"


class NoNonnegativeSolution(_BlockError):
    what = "admits no nonnegative price vector"


class NotProductive(_BlockError):
    what = "is not productive"


class DependentBlock(MathError):
    def __init__(self, block, step):
        self.block = block
        self.step = step
        super().__init__(
            f"vectors are linearly dependent in block {block} at step {step}")


class ZeroPolynomial(MathError):
    pass


class NegativeSteps(InputError):
    pass
