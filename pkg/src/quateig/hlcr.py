"""Operators built from left quaternion multiplications and the right
action of the imaginary unit i.

An element acts on a quaternion x as  Q*x + P*x*i.  The P = 0 subset is
the algebra of plain left multiplications (quaternionic-linear entries);
a nonzero P makes the entry merely complex-linear from the right.

Each element corresponds to exactly one 2x2 complex block through the
symplectic identification, and that correspondence is an algebra
isomorphism: composition of elements maps to the matrix product.  The
block map is what lets every operator here be studied as an ordinary
complex matrix twice the size.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quaternion import I, Quaternion, from_symplectic, symplectic_split

__all__ = ["HlcrElement", "from_block"]


@dataclass(frozen=True)
class HlcrElement:
    q: Quaternion  # left-acting part
    p: Quaternion  # left-acting coefficient paired with the right i

    @staticmethod
    def from_quaternion(q: Quaternion) -> "HlcrElement":
        return HlcrElement(q, Quaternion())

    @staticmethod
    def zero() -> "HlcrElement":
        return HlcrElement(Quaternion(), Quaternion())

    def apply(self, x: Quaternion) -> Quaternion:
        """Evaluate the operator on a quaternion: q*x + p*x*i."""
        return self.q * x + self.p * x * I

    def compose(self, other: "HlcrElement") -> "HlcrElement":
        """Operator composition, using (x*i)*i = -x and the fact that the
        right action of i commutes with every left multiplication."""
        return HlcrElement(self.q * other.q - self.p * other.p,
                           self.q * other.p + self.p * other.q)

    def __mul__(self, other):
        if isinstance(other, HlcrElement):
            return self.compose(other)
        if isinstance(other, Quaternion):
            return self.compose(HlcrElement.from_quaternion(other))
        if isinstance(other, (int, float)):
            return HlcrElement(self.q * other, self.p * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Quaternion):
            return HlcrElement.from_quaternion(other).compose(self)
        if isinstance(other, (int, float)):
            return HlcrElement(self.q * other, self.p * other)
        return NotImplemented

    def __add__(self, other: "HlcrElement") -> "HlcrElement":
        if isinstance(other, Quaternion):
            other = HlcrElement.from_quaternion(other)
        return HlcrElement(self.q + other.q, self.p + other.p)

    def __sub__(self, other: "HlcrElement") -> "HlcrElement":
        if isinstance(other, Quaternion):
            other = HlcrElement.from_quaternion(other)
        return HlcrElement(self.q - other.q, self.p - other.p)

    def __neg__(self) -> "HlcrElement":
        return HlcrElement(-self.q, -self.p)

    def norm(self) -> float:
        return (self.q.norm_sq() + self.p.norm_sq()) ** 0.5

    def is_quaternionic(self, tol: float = 1e-12) -> bool:
        """True when the right-i coefficient vanishes: the entry is a
        plain left multiplication."""
        return self.p.norm() <= tol * (1.0 + self.q.norm())

    def adjoint(self) -> "HlcrElement":
        """Adjoint with respect to the complex-projected inner product,
        computed through the block picture."""
        return from_block(self.to_block().conj().T)

    def to_block(self) -> np.ndarray:
        """The 2x2 complex block of this operator.

        With q = z_q + j w_q and p = z_p + j w_p the block is

            [[z_q + i z_p,  -conj(w_q) - i conj(w_p)],
             [w_q + i w_p,   conj(z_q) + i conj(z_p)]]

        which for p = 0 reduces to [[z, -w*], [w, z*]].
        """
        zq, wq = symplectic_split(self.q)
        zp, wp = symplectic_split(self.p)
        return np.array([
            [zq + 1j * zp, -np.conj(wq) - 1j * np.conj(wp)],
            [wq + 1j * wp, np.conj(zq) + 1j * np.conj(zp)],
        ])


def from_block(block: np.ndarray) -> HlcrElement:
    """Exact inverse of HlcrElement.to_block for any 2x2 complex block."""
    alpha, beta = complex(block[0, 0]), complex(block[0, 1])
    gamma, delta = complex(block[1, 0]), complex(block[1, 1])
    zq = (alpha + delta.conjugate()) / 2
    zp = (alpha - delta.conjugate()) / 2j
    wq = (gamma - beta.conjugate()) / 2
    wp = (gamma + beta.conjugate()) / 2j
    return HlcrElement(from_symplectic(zq, wq), from_symplectic(zp, wp))
