"""Shared generators and comparison helpers for the test suite."""
import numpy as np

from quateig import (
    HlcrElement,
    HlcrMatrix,
    QuatMatrix,
    QuatVector,
    Quaternion,
    complexify_vector,
)


def random_quaternion(rng, scale=1.0):
    return Quaternion(*(scale * rng.standard_normal(4)))


def random_unit_quaternion(rng):
    return random_quaternion(rng).unit()


def random_quat_vector(rng, n, scale=1.0):
    return QuatVector(random_quaternion(rng, scale) for _ in range(n))


def random_quat_matrix(rng, n, scale=1.0):
    return QuatMatrix([[random_quaternion(rng, scale) for _ in range(n)]
                       for _ in range(n)])


def random_hlcr_matrix(rng, n, scale=1.0):
    return HlcrMatrix([[HlcrElement(random_quaternion(rng, scale),
                                    random_quaternion(rng, scale))
                        for _ in range(n)] for _ in range(n)])


def random_antihermitian(rng, n, scale=1.0):
    g = random_quat_matrix(rng, n, scale)
    return (g - g.adjoint()) * 0.5


def quat_close(p, q, tol=1e-12):
    return (p - q).norm() <= tol


def vectors_match_up_to_complex_scale(ours: QuatVector, golden: QuatVector,
                                      tol=1e-9):
    """True when ours = golden * c for some complex scalar c."""
    o, g = complexify_vector(ours), complexify_vector(golden)
    idx = int(np.argmax(np.abs(g)))
    if abs(g[idx]) == 0:
        return np.linalg.norm(o) <= tol
    c = o[idx] / g[idx]
    return np.linalg.norm(o - g * c) <= tol * max(1.0, np.linalg.norm(g) * abs(c))


def multiset_close(first, second, tol=1e-9):
    """Complex multisets equal within tol after optimal matching."""
    first = sorted(map(complex, first), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    second = sorted(map(complex, second), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    if len(first) != len(second):
        return False
    return all(abs(a - b) <= tol for a, b in zip(first, second))
