"""Dense quaternionic matrices and their complex translations.

Vectors over the quaternions are stored with right scalar
multiplication: v * s scales every component on the right, which is the
convention under which the operators in this package are linear.

A quaternionic n-vector with components x_l + j y_l translates to the
interleaved complex 2n-vector (x_1, y_1, ..., x_n, y_n), and an n x n
matrix translates blockwise to a 2n x 2n complex matrix.  Both maps are
bijections and the matrix map is an algebra homomorphism, so products,
inverses and eigenproblems can be delegated to the complex side and
translated back.

Plain complex matrices and vectors are numpy arrays throughout.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, OddDimension
from .hlcr import HlcrElement, from_block
from .quaternion import Quaternion, from_symplectic, symplectic_split

__all__ = [
    "QuatVector",
    "QuatMatrix",
    "HlcrMatrix",
    "complexify_vector",
    "dequaternionify_vector",
    "complexify_matrix",
    "dequaternionify_matrix",
    "inner_product",
    "complex_projection",
    "is_hermitian",
    "is_antihermitian",
]


def _as_quaternion(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float)):
        return Quaternion(float(x))
    if isinstance(x, complex):
        return Quaternion.from_complex(x)
    raise TypeError(f"cannot interpret {x!r} as a quaternion")


class QuatVector:
    """Immutable column vector of quaternions."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        object.__setattr__(self, "entries", tuple(_as_quaternion(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("QuatVector is immutable")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, l: int) -> Quaternion:
        return self.entries[l]

    def __add__(self, other: "QuatVector") -> "QuatVector":
        self._check_dim(other)
        return QuatVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: "QuatVector") -> "QuatVector":
        self._check_dim(other)
        return QuatVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "QuatVector":
        return QuatVector(-e for e in self.entries)

    def __mul__(self, s) -> "QuatVector":
        """Right scalar multiplication v * s (component * s, in that order)."""
        s = _as_quaternion(s) if not isinstance(s, (int, float)) else s
        return QuatVector(e * s for e in self.entries)

    def __rmul__(self, s) -> "QuatVector":
        """Left multiplication s * v; for real s this equals v * s."""
        if isinstance(s, (int, float)):
            return QuatVector(e * s for e in self.entries)
        s = _as_quaternion(s)
        return QuatVector(s * e for e in self.entries)

    def norm(self) -> float:
        return math.sqrt(sum(e.norm_sq() for e in self.entries))

    def normalized(self) -> "QuatVector":
        return self * (1.0 / self.norm())

    def _check_dim(self, other):
        if len(self) != len(other):
            raise DimensionMismatch(f"{len(self)} vs {len(other)}")

    def __repr__(self):
        return f"QuatVector({list(self.entries)!r})"


class QuatMatrix:
    """Immutable square matrix of quaternions (a quaternionic-linear
    operator in the symplectic representation)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_as_quaternion(e) for e in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("QuatMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "QuatMatrix":
        return QuatMatrix([[Quaternion(1.0 if i == j else 0.0) for j in range(n)]
                           for i in range(n)])

    @staticmethod
    def diagonal(entries: Sequence) -> "QuatMatrix":
        es = [_as_quaternion(e) for e in entries]
        n = len(es)
        return QuatMatrix([[es[i] if i == j else Quaternion() for j in range(n)]
                           for i in range(n)])

    @staticmethod
    def from_columns(columns: Sequence[QuatVector]) -> "QuatMatrix":
        n = len(columns)
        if any(len(c) != n for c in columns):
            raise DimensionMismatch("need n columns of length n")
        return QuatMatrix([[columns[j][i] for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> QuatVector:
        return QuatVector(row[j] for row in self.rows)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix((a + b for a, b in zip(ra, rb))
                          for ra, rb in zip(self.rows, other.rows))

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix((a - b for a, b in zip(ra, rb))
                          for ra, rb in zip(self.rows, other.rows))

    def __neg__(self) -> "QuatMatrix":
        return QuatMatrix((-e for e in row) for row in self.rows)

    def __mul__(self, s) -> "QuatMatrix":
        if not isinstance(s, (int, float)):
            return NotImplemented
        return QuatMatrix((e * s for e in row) for row in self.rows)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QuatVector):
            if other.n != self.n:
                raise DimensionMismatch(f"{self.n} vs {other.n}")
            return QuatVector(
                sum((row[j] * other[j] for j in range(self.n)), Quaternion())
                for row in self.rows)
        if isinstance(other, QuatMatrix):
            if other.n != self.n:
                raise DimensionMismatch(f"{self.n} vs {other.n}")
            n = self.n
            return QuatMatrix(
                [[sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), Quaternion())
                  for j in range(n)] for i in range(n)])
        return NotImplemented

    def adjoint(self) -> "QuatMatrix":
        return QuatMatrix([[self.rows[j][i].conjugate() for j in range(self.n)]
                           for i in range(self.n)])

    def norm(self) -> float:
        """Frobenius norm."""
        return math.sqrt(sum(e.norm_sq() for row in self.rows for e in row))

    def inverse(self) -> "QuatMatrix":
        """Inverse through the complex translation."""
        inv = np.linalg.inv(complexify_matrix(self))
        return dequaternionify_matrix(inv).narrow_to_quaternionic(tol=1e-9)

    def to_hlcr(self) -> "HlcrMatrix":
        return HlcrMatrix([[HlcrElement.from_quaternion(e) for e in row]
                           for row in self.rows])

    def __repr__(self):
        return f"QuatMatrix({[list(r) for r in self.rows]!r})"


def _as_hlcr(x) -> HlcrElement:
    if isinstance(x, HlcrElement):
        return x
    return HlcrElement.from_quaternion(_as_quaternion(x))


class HlcrMatrix:
    """Immutable square matrix with entries in the left-multiplication
    plus right-i algebra (a complex-linear operator)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_as_hlcr(e) for e in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("HlcrMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "HlcrMatrix":
        return QuatMatrix.identity(n).to_hlcr()

    @staticmethod
    def diagonal(entries: Sequence[HlcrElement]) -> "HlcrMatrix":
        n = len(entries)
        zero = HlcrElement.zero()
        return HlcrMatrix([[entries[i] if i == j else zero for j in range(n)]
                           for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx) -> HlcrElement:
        i, j = idx
        return self.rows[i][j]

    def apply(self, v: QuatVector) -> QuatVector:
        """Act on a vector entrywise: (Mv)_i = sum_j M_ij applied to v_j."""
        if v.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {v.n}")
        return QuatVector(
            sum((row[j].apply(v[j]) for j in range(self.n)), Quaternion())
            for row in self.rows)

    def __add__(self, other: "HlcrMatrix") -> "HlcrMatrix":
        return HlcrMatrix((a + b for a, b in zip(ra, rb))
                          for ra, rb in zip(self.rows, other.rows))

    def __sub__(self, other: "HlcrMatrix") -> "HlcrMatrix":
        return HlcrMatrix((a - b for a, b in zip(ra, rb))
                          for ra, rb in zip(self.rows, other.rows))

    def __mul__(self, s) -> "HlcrMatrix":
        if not isinstance(s, (int, float)):
            return NotImplemented
        return HlcrMatrix((e * s for e in row) for row in self.rows)

    __rmul__ = __mul__

    def __matmul__(self, other: "HlcrMatrix") -> "HlcrMatrix":
        if isinstance(other, QuatMatrix):
            other = other.to_hlcr()
        if not isinstance(other, HlcrMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        n = self.n
        return HlcrMatrix(
            [[_sum_hlcr(self.rows[i][k].compose(other.rows[k][j]) for k in range(n))
              for j in range(n)] for i in range(n)])

    def __rmatmul__(self, other) -> "HlcrMatrix":
        if isinstance(other, QuatMatrix):
            return other.to_hlcr().__matmul__(self)
        return NotImplemented

    def adjoint(self) -> "HlcrMatrix":
        return dequaternionify_matrix(complexify_matrix(self).conj().T)

    def norm(self) -> float:
        return math.sqrt(sum(e.q.norm_sq() + e.p.norm_sq()
                             for row in self.rows for e in row))

    def inverse(self) -> "HlcrMatrix":
        return dequaternionify_matrix(np.linalg.inv(complexify_matrix(self)))

    def max_p_norm(self) -> float:
        return max(e.p.norm() for row in self.rows for e in row)

    def narrow_to_quaternionic(self, tol: float = 1e-12) -> QuatMatrix:
        """Drop the right-i parts when they are negligible per entry
        (|p| <= tol * (1 + |q|)); raises otherwise."""
        for row in self.rows:
            for e in row:
                if e.p.norm() > tol * (1.0 + e.q.norm()):
                    raise ValueError(
                        f"entry has right-i part of size {e.p.norm()!r}; not quaternionic")
        return QuatMatrix([[e.q for e in row] for row in self.rows])

    def __repr__(self):
        return f"HlcrMatrix({[list(r) for r in self.rows]!r})"


def _sum_hlcr(elements) -> HlcrElement:
    total = HlcrElement.zero()
    for e in elements:
        total = total + e
    return total


# ----------------------------------------------------------------------
# translations
# ----------------------------------------------------------------------

def complexify_vector(v: QuatVector) -> np.ndarray:
    """Interleaved complex 2n-vector (x_1, y_1, ..., x_n, y_n)."""
    out = np.empty(2 * v.n, dtype=complex)
    for l, e in enumerate(v):
        z, w = symplectic_split(e)
        out[2 * l] = z
        out[2 * l + 1] = w
    return out


def dequaternionify_vector(x: np.ndarray) -> QuatVector:
    x = np.asarray(x, dtype=complex).reshape(-1)
    if x.size % 2:
        raise OddDimension(f"vector of dimension {x.size}")
    return QuatVector(from_symplectic(x[2 * l], x[2 * l + 1])
                      for l in range(x.size // 2))


def complexify_matrix(m: Union[QuatMatrix, HlcrMatrix]) -> np.ndarray:
    """The 2n x 2n complex counterpart, built 2x2 block by block."""
    n = m.n
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = m[i, j]
            if isinstance(e, Quaternion):
                e = HlcrElement.from_quaternion(e)
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = e.to_block()
    return out


def dequaternionify_matrix(c: np.ndarray) -> HlcrMatrix:
    """Blockwise inverse translation; exact on any even-dimensional
    complex matrix."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got {c.shape}")
    if c.shape[0] % 2:
        raise OddDimension(f"matrix of dimension {c.shape[0]}")
    n = c.shape[0] // 2
    return HlcrMatrix(
        [[from_block(c[2 * i:2 * i + 2, 2 * j:2 * j + 2]) for j in range(n)]
         for i in range(n)])


# ----------------------------------------------------------------------
# geometry
# ----------------------------------------------------------------------

def inner_product(phi: QuatVector, psi: QuatVector) -> Quaternion:
    """Quaternionic inner product sum_l conj(phi_l) * psi_l."""
    if phi.n != psi.n:
        raise DimensionMismatch(f"{phi.n} vs {psi.n}")
    return sum((a.conjugate() * b for a, b in zip(phi, psi)), Quaternion())


def complex_projection(q: Quaternion) -> complex:
    """(q - i*q*i) / 2: the complex part of the symplectic split."""
    return complex(q.a, q.b)


def _entrywise_adjoint_gap(m, sign: float) -> float:
    # max entry norm of M - sign * M^dagger
    if isinstance(m, QuatMatrix):
        adj = m.adjoint()
        return max((m[i, j] - adj[i, j] * sign).norm()
                   for i in range(m.n) for j in range(m.n))
    c = complexify_matrix(m)
    return float(np.max(np.abs(c - sign * c.conj().T)))


def is_hermitian(m: Union[QuatMatrix, HlcrMatrix], tol: float = 1e-9) -> bool:
    return _entrywise_adjoint_gap(m, 1.0) <= tol

def is_antihermitian(m: Union[QuatMatrix, HlcrMatrix], tol: float = 1e-9) -> bool:
    return _entrywise_adjoint_gap(m, -1.0) <= tol
