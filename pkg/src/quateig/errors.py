"""Exception types raised by the solvers and translation layers."""


class QuatEigError(Exception):
    """Base class for all library errors."""


class ZeroQuaternion(QuatEigError):
    """Inversion of the zero quaternion was requested."""


class NotSameEigenclass(QuatEigError):
    """The two quaternions differ in real part or norm, so no unit
    quaternion can conjugate one into the other."""


class DimensionMismatch(QuatEigError):
    """Operands have incompatible dimensions."""


class OddDimension(QuatEigError):
    """A complex matrix or vector cannot be translated back unless its
    dimension is even."""


class DimensionTooLarge(QuatEigError):
    """The trace-recurrence characteristic polynomial is only reliable up
    to dimension 12."""


class NoConvergence(QuatEigError):
    """An iterative solver exhausted its iteration budget."""


class UnpairedEigenvalue(QuatEigError):
    """A spectrum that should be closed under conjugation could not be
    matched into conjugate pairs within tolerance."""


class NotDiagonalizable(QuatEigError):
    """The operator has a defective translated matrix; no eigenvector
    basis exists."""


class SingularEigenvectorMatrix(QuatEigError):
    """Internal consistency failure: the eigenvector matrix of an
    operator judged diagonalizable could not be inverted."""


class NotAntiHermitian(QuatEigError):
    """The input matrix fails the anti-hermiticity precondition."""


class NotCommuting(QuatEigError):
    """Simultaneous diagonalization requires commuting operators."""


class NotSimultaneouslyDiagonalizable(QuatEigError):
    """No common eigenvector basis could be constructed."""


class Unsupported(QuatEigError):
    """The requested problem class has no implemented algorithm."""


class NotTwoByTwo(Unsupported):
    """Left eigenvalue problems are only solvable for 2x2 matrices; there
    is no general elimination scheme for larger dimensions."""


class NoRootsFound(QuatEigError):
    """Every Newton seed diverged; reported instead of returning an
    empty solution list silently."""


class MalformedDocument(QuatEigError):
    """An input document does not follow the matrix file format."""
