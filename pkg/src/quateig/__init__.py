"""quateig: right and left eigenvalue problems for quaternionic and
complex-linear matrix operators on quaternionic vector spaces.

Operators translate to complex matrices of twice the dimension through
the symplectic block map; eigenproblems are solved there by an in-house
dense solver and translated back, including explicit diagonalizing
matrices.  Left eigenvalue equations (2x2) are solved directly in
quaternionic arithmetic.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    MalformedDocument,
    NoConvergence,
    NoRootsFound,
    NotAntiHermitian,
    NotCommuting,
    NotDiagonalizable,
    NotSameEigenclass,
    NotSimultaneouslyDiagonalizable,
    NotTwoByTwo,
    OddDimension,
    QuatEigError,
    SingularEigenvectorMatrix,
    Unsupported,
    UnpairedEigenvalue,
    ZeroQuaternion,
)
from .quaternion import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    UnitQuaternion,
    conjugating_unit,
    from_symplectic,
    same_eigenclass,
    symplectic_split,
)
from .hlcr import HlcrElement, from_block
from .matrices import (
    HlcrMatrix,
    QuatMatrix,
    QuatVector,
    complex_projection,
    complexify_matrix,
    complexify_vector,
    dequaternionify_matrix,
    dequaternionify_vector,
    inner_product,
    is_antihermitian,
    is_hermitian,
)
from .complex_eig import ComplexEigResult, charpoly, eig, hessenberg_reduce, roots
from .right_eig import (
    ClinEigResult,
    CoSpectrumResult,
    NEGATIVE_IMAG,
    POSITIVE_IMAG,
    RightEigResult,
    co_spectrum,
    diagonalize_complexlinear,
    diagonalize_quaternionic,
    hermitian_from_antihermitian,
    pair_spectrum,
    partner_eigenvector,
    rephase_eigenpair,
    right_spectrum_complexlinear,
    right_spectrum_quaternionic,
)
from .left_eig import (
    LeftEigResult,
    LeftFamily,
    LeftSolution,
    MagnitudeComparison,
    SimilarityComparison,
    compare_left_spectra_similarity,
    left_eig_2x2,
    left_right_magnitude_report,
    verify_left_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
