"""Scalar quaternion arithmetic.

A quaternion q = a + ib + jc + kd is stored as four 64-bit floats with
the Hamilton relations i**2 = j**2 = k**2 = ijk = -1.  Values are
immutable and every operation is a pure function, so instances can be
shared freely between threads.

The module also provides the symplectic decomposition q = z + j*w
(z, w complex) that underpins all complex translations, and eigenclass
utilities: two quaternions are similar (q = u.conjugate() * p * u for
some unit u) exactly when they share real part and norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotSameEigenclass, ZeroQuaternion

__all__ = [
    "Quaternion",
    "UnitQuaternion",
    "ONE",
    "I",
    "J",
    "K",
    "symplectic_split",
    "from_symplectic",
    "same_eigenclass",
    "conjugating_unit",
]

_Scalar = (int, float)


@dataclass(frozen=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------
    @staticmethod
    def from_complex(z: complex, w: complex = 0j) -> "Quaternion":
        """Build z + j*w from the symplectic pair (z, w)."""
        z = complex(z)
        w = complex(w)
        return Quaternion(z.real, z.imag, w.real, -w.imag)

    @staticmethod
    def from_list(values) -> "Quaternion":
        a, b, c, d = values
        return Quaternion(float(a), float(b), float(c), float(d))

    def to_list(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------
    def __add__(self, other: "Quaternion") -> "Quaternion":
        if isinstance(other, _Scalar):
            other = Quaternion(float(other))
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if isinstance(other, _Scalar):
            other = Quaternion(float(other))
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        """Hamilton product; scalars multiply componentwise."""
        if isinstance(other, _Scalar):
            s = float(other)
            return Quaternion(self.a * s, self.b * s, self.c * s, self.d * s)
        if isinstance(other, complex):
            other = Quaternion.from_complex(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        if isinstance(other, complex):
            return Quaternion.from_complex(other) * self
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _Scalar):
            s = float(other)
            return Quaternion(self.a / s, self.b / s, self.c / s, self.d / s)
        return self * other.inverse()

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> float:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def inverse(self) -> "Quaternion":
        """conjugate(q) / |q|^2.  Raises ZeroQuaternion for q = 0."""
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ZeroQuaternion("zero quaternion has no inverse")
        return self.conjugate() / n2

    def unit(self) -> "UnitQuaternion":
        n = self.norm()
        if n == 0.0:
            raise ZeroQuaternion("cannot normalize the zero quaternion")
        return UnitQuaternion(self.a / n, self.b / n, self.c / n, self.d / n)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------
    @property
    def real(self) -> float:
        return self.a

    @property
    def imag(self) -> tuple[float, float, float]:
        """Coefficients of (i, j, k)."""
        return (self.b, self.c, self.d)

    def imag_norm(self) -> float:
        return math.sqrt(self.b * self.b + self.c * self.c + self.d * self.d)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm() <= tol

    def is_complex(self, tol: float = 0.0) -> bool:
        """True when the j and k parts vanish within tol."""
        return math.hypot(self.c, self.d) <= tol

    def to_complex(self) -> complex:
        """The z of the symplectic split; only faithful for is_complex()."""
        return complex(self.a, self.b)


def symplectic_split(q: Quaternion) -> tuple[complex, complex]:
    """Decompose q = z + j*w with z = a + ib and w = c - id.

    Note j*(c - id) = jc + kd, so reassembly is exact.
    """
    return complex(q.a, q.b), complex(q.c, -q.d)


def from_symplectic(z: complex, w: complex = 0j) -> Quaternion:
    return Quaternion.from_complex(z, w)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class UnitQuaternion(Quaternion):
    """A quaternion of unit norm, validated at construction (1e-12)."""

    def __post_init__(self):
        if abs(self.norm() - 1.0) > 1e-12:
            raise ValueError(f"not a unit quaternion: |q| = {self.norm()!r}")


def same_eigenclass(q: Quaternion, p: Quaternion, tol: float = 1e-9) -> bool:
    """True when q and p share real part and norm within tol.

    Equivalently, their imaginary parts have equal magnitude and some
    unit u satisfies u.conjugate() * p * u = q.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return abs(q.a - p.a) <= tol and abs(q.norm() - p.norm()) <= tol


def _perpendicular_axis(qv: tuple[float, float, float]) -> tuple[float, float, float]:
    # Deterministic pick: project x-hat onto the plane perpendicular to qv,
    # falling back to y-hat when x-hat is (nearly) parallel to qv.
    nq = math.sqrt(qv[0] ** 2 + qv[1] ** 2 + qv[2] ** 2)
    for ref in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)):
        dot = (ref[0] * qv[0] + ref[1] * qv[1] + ref[2] * qv[2]) / nq
        proj = (ref[0] - dot * qv[0] / nq,
                ref[1] - dot * qv[1] / nq,
                ref[2] - dot * qv[2] / nq)
        norm = math.sqrt(proj[0] ** 2 + proj[1] ** 2 + proj[2] ** 2)
        if norm > 1e-8:
            return (proj[0] / norm, proj[1] / norm, proj[2] / norm)
    raise AssertionError("unreachable: two fixed axes cannot both be parallel")


def conjugating_unit(q: Quaternion, p: Quaternion, tol: float = 1e-9) -> UnitQuaternion:
    """A unit u with u.conjugate() * p * u = q, for same-eigenclass q, p.

    The rotation axis is (q_vec x p_vec) and the angle satisfies
    cos(theta) = q_vec . p_vec / (|q_vec| |p_vec|).  Degenerate cases:

    * q_vec = p_vec: the identity (trivial similarity).
    * q_vec = -p_vec: a whole circle of imaginary units perpendicular to
      q_vec works; we return the deterministic axis of
      ``_perpendicular_axis`` so tests are reproducible.
    * q_vec = 0 (both quaternions real): any unit works; returns 1.
    """
    if not same_eigenclass(q, p, tol):
        raise NotSameEigenclass(
            f"Re/{abs(q.a - p.a)!r} or norm/{abs(q.norm() - p.norm())!r} differ beyond tol={tol!r}")
    qv = (q.b, q.c, q.d)
    pv = (p.b, p.c, p.d)
    nq = math.sqrt(sum(x * x for x in qv))
    np_ = math.sqrt(sum(x * x for x in pv))
    scale = max(nq, np_)
    if scale <= tol:
        # both essentially real: any u conjugates p into q
        return UnitQuaternion(1.0)
    diff = math.sqrt(sum((x - y) ** 2 for x, y in zip(qv, pv)))
    summ = math.sqrt(sum((x + y) ** 2 for x, y in zip(qv, pv)))
    if diff <= tol * max(1.0, scale):
        return UnitQuaternion(1.0)
    if summ <= tol * max(1.0, scale):
        ax = _perpendicular_axis(qv)
        return Quaternion(0.0, ax[0], ax[1], ax[2]).unit()
    cos_t = (qv[0] * pv[0] + qv[1] * pv[1] + qv[2] * pv[2]) / (nq * np_)
    cos_t = max(-1.0, min(1.0, cos_t))
    theta = math.acos(cos_t)
    sin_t = math.sin(theta)
    cross = (qv[1] * pv[2] - qv[2] * pv[1],
             qv[2] * pv[0] - qv[0] * pv[2],
             qv[0] * pv[1] - qv[1] * pv[0])
    denom = nq * np_ * sin_t
    axis = tuple(x / denom for x in cross)
    half = theta / 2.0
    s = math.sin(half)
    return Quaternion(math.cos(half), axis[0] * s, axis[1] * s, axis[2] * s).unit()
