import numpy as np

from quateig import HlcrElement, I, J, K, ONE, Quaternion, from_block
from helpers import random_quaternion

EPS = np.finfo(float).eps


def el(q, p=None):
    return HlcrElement(q, p if p is not None else Quaternion())


def test_apply_goldens():
    assert el(I).apply(J) == K
    assert el(Quaternion(), ONE).apply(J) == J * I  # pure right-i action: -k
    assert el(Quaternion(), ONE).apply(J) == -K
    assert el(I, I).apply(ONE) == I + I * I  # i - 1
    assert el(I, I).apply(ONE) == I - ONE


def test_compose_goldens():
    assert el(I) * el(J) == el(K)
    assert el(Quaternion(), ONE) * el(Quaternion(), ONE) == el(-ONE)
    mixed = el(I) * el(Quaternion(), ONE)
    assert mixed == HlcrElement(Quaternion(), I)
    assert mixed == el(Quaternion(), ONE) * el(I)  # left and right actions commute


def test_compose_matches_apply_on_basis():
    rng = np.random.default_rng(5)
    for _ in range(100):
        e1 = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        e2 = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        comp = e1 * e2
        for basis in (ONE, I, J, K):
            direct = e1.apply(e2.apply(basis))
            assert (comp.apply(basis) - direct).norm() <= 16 * EPS * (
                1.0 + e1.norm() * e2.norm())


def test_to_block_goldens():
    np.testing.assert_array_equal(el(I).to_block(),
                                  np.array([[1j, 0], [0, -1j]]))
    np.testing.assert_array_equal(el(J).to_block(),
                                  np.array([[0, -1], [1, 0]], dtype=complex))
    np.testing.assert_array_equal(el(K).to_block(),
                                  np.array([[0, -1j], [-1j, 0]]))
    np.testing.assert_array_equal(el(Quaternion(), ONE).to_block(),
                                  np.array([[1j, 0], [0, 1j]]))


def test_from_block_goldens():
    assert from_block(np.array([[1j, 0], [0, -1j]])) == el(I)
    assert from_block(np.eye(2, dtype=complex)) == el(ONE)


def test_block_roundtrip_both_ways():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        e = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        back = from_block(e.to_block())
        assert (back.q - e.q).norm() <= 4 * EPS * (1 + e.norm())
        assert (back.p - e.p).norm() <= 4 * EPS * (1 + e.norm())

        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        again = from_block(b).to_block()
        assert np.max(np.abs(again - b)) <= 4 * EPS * (1 + np.abs(b).max())


def test_block_map_is_algebra_homomorphism():
    rng = np.random.default_rng(29)
    for _ in range(1000):
        e1 = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        e2 = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        lhs = (e1 * e2).to_block()
        rhs = e1.to_block() @ e2.to_block()
        assert np.max(np.abs(lhs - rhs)) <= 8 * EPS * max(
            1.0, e1.norm() * e2.norm())


def test_quaternionic_blocks_satisfy_conjugation_symmetry():
    s = np.array([[0, -1], [1, 0]], dtype=complex)
    rng = np.random.default_rng(31)
    for _ in range(200):
        b = el(random_quaternion(rng)).to_block()
        np.testing.assert_array_equal(s @ b.conj() @ np.linalg.inv(s), b)


def test_is_quaternionic_flag():
    assert el(J).is_quaternionic()
    assert not HlcrElement(J, I).is_quaternionic()


def test_adjoint_matches_block_dagger():
    rng = np.random.default_rng(37)
    for _ in range(100):
        e = HlcrElement(random_quaternion(rng), random_quaternion(rng))
        np.testing.assert_allclose(e.adjoint().to_block(), e.to_block().conj().T,
                                   atol=8 * EPS * (1 + e.norm()))
