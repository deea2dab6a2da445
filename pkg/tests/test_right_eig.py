import numpy as np
import pytest

from quateig import (
    HlcrElement,
    HlcrMatrix,
    I,
    J,
    K,
    NEGATIVE_IMAG,
    NotCommuting,
    NotDiagonalizable,
    ONE,
    QuatMatrix,
    QuatVector,
    Quaternion,
    UnpairedEigenvalue,
    charpoly,
    co_spectrum,
    complexify_matrix,
    complexify_vector,
    diagonalize_complexlinear,
    diagonalize_quaternionic,
    eig,
    hermitian_from_antihermitian,
    pair_spectrum,
    partner_eigenvector,
    rephase_eigenpair,
    right_spectrum_complexlinear,
    right_spectrum_quaternionic,
    roots,
)
from helpers import (
    multiset_close,
    quat_close,
    random_antihermitian,
    random_quat_matrix,
    random_quaternion,
    random_unit_quaternion,
    vectors_match_up_to_complex_scale,
)

M_GOLDEN = QuatMatrix([[I, J], [K, I]])
LAMBDA1 = 2 ** 0.25 * np.exp(1j * 3 * np.pi / 8)
LAMBDA2 = -(2 ** 0.25) * np.exp(-1j * 3 * np.pi / 8)

MC_GOLDEN = HlcrMatrix([
    [HlcrElement(J, -I), HlcrElement(ONE, -K)],
    [HlcrElement(-ONE, -K), HlcrElement(J, I)],
])


def cq(z):
    return Quaternion.from_complex(z)


# ----------------------------------------------------------------------
# partner map and pairing
# ----------------------------------------------------------------------

def test_partner_goldens():
    np.testing.assert_array_equal(partner_eigenvector(np.array([1, 0], dtype=complex)),
                                  np.array([0, 1], dtype=complex))
    phi = np.array([-1 + 1j * LAMBDA1, 0, 0, 1])
    expected = np.array([0, -1 - 1j * np.conj(LAMBDA1), -1, 0])
    np.testing.assert_allclose(partner_eigenvector(phi), expected, atol=1e-15)


def test_partner_applied_twice_negates():
    rng = np.random.default_rng(1)
    phi = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    np.testing.assert_allclose(partner_eigenvector(partner_eigenvector(phi)), -phi,
                               atol=0)


def test_partner_preserves_eigen_residual():
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        c = complexify_matrix(random_quat_matrix(rng, n))
        res = eig(c)
        k = int(rng.integers(0, 2 * n))
        lam, v = res.eigenvalues[k], res.eigenvectors[:, k]
        r = np.linalg.norm(c @ v - lam * v)
        w = partner_eigenvector(v)
        r2 = np.linalg.norm(c @ w - np.conj(lam) * w)
        assert r2 <= r * (1 + 4 * np.finfo(float).eps) + 1e-15


def test_pair_spectrum_goldens():
    pairs = pair_spectrum([1j, -1j, 2, 2])
    assert sorted(pairs, key=lambda p: p[0].real) == [(1j, -1j), (2, 2)] or \
        sorted(pairs, key=lambda p: abs(p[0].imag)) == [(2, 2), (1j, -1j)]
    full = [LAMBDA1, np.conj(LAMBDA1), LAMBDA2, np.conj(LAMBDA2)]
    pairs = pair_spectrum(full)
    reps = sorted((p[0] for p in pairs), key=lambda z: z.real)
    assert abs(reps[0] - LAMBDA2) <= 1e-12 and abs(reps[1] - LAMBDA1) <= 1e-12
    for a, b in pairs:
        assert abs(a - np.conj(b)) <= 1e-12


def test_pair_spectrum_perturbation_robust():
    pairs = pair_spectrum([1 + 1j, 1 - 1j + 1e-12], tol=1e-9)
    assert len(pairs) == 1


def test_pair_spectrum_rejects_unpairable():
    with pytest.raises(UnpairedEigenvalue):
        pair_spectrum([1j, 1j])
    with pytest.raises(UnpairedEigenvalue):
        pair_spectrum([2.0, 3.0])  # distinct reals cannot pair


# ----------------------------------------------------------------------
# quaternionic-linear spectra
# ----------------------------------------------------------------------

def test_right_spectrum_golden():
    res = right_spectrum_quaternionic(M_GOLDEN)
    assert res.diagonalizable
    np.testing.assert_allclose(res.reduced_spectrum, [LAMBDA1, LAMBDA2], atol=1e-12)
    assert max(res.residuals) <= 1e-12

    golden1 = QuatVector([cq(-1 + 1j * LAMBDA1), J])
    golden2 = QuatVector([J * cq(1 - 1j * np.conj(LAMBDA1)), ONE])
    assert vectors_match_up_to_complex_scale(res.eigenvectors[0], golden1, 1e-12)
    assert vectors_match_up_to_complex_scale(res.eigenvectors[1], golden2, 1e-12)

    assert multiset_close(res.full_spectrum,
                          [LAMBDA1, np.conj(LAMBDA1), LAMBDA2, np.conj(LAMBDA2)],
                          tol=1e-12)


def test_right_spectrum_degenerate_complex():
    res = right_spectrum_quaternionic(QuatMatrix.diagonal([I, I]))
    np.testing.assert_allclose(res.reduced_spectrum, [1j, 1j], atol=1e-14)
    basis = [QuatVector([ONE, Quaternion()]), QuatVector([Quaternion(), ONE])]
    matched = set()
    for v in res.eigenvectors:
        for k, b in enumerate(basis):
            if k not in matched and vectors_match_up_to_complex_scale(v, b, 1e-10):
                matched.add(k)
                break
    assert matched == {0, 1}


def test_right_spectrum_real_diagonal():
    res = right_spectrum_quaternionic(QuatMatrix.diagonal([Quaternion(2), Quaternion(3)]))
    assert multiset_close(res.reduced_spectrum, [2, 3], tol=1e-12)
    assert multiset_close(res.full_spectrum, [2, 2, 3, 3], tol=1e-12)
    assert max(res.residuals) <= 1e-12


def test_convention_flip_conjugates_spectrum():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = random_quat_matrix(rng, int(rng.integers(1, 5)))
        pos = right_spectrum_quaternionic(m)
        neg = right_spectrum_quaternionic(m, convention=NEGATIVE_IMAG)
        np.testing.assert_allclose(sorted(np.conj(pos.reduced_spectrum).tolist(),
                                          key=lambda z: (z.real, z.imag)),
                                   sorted(neg.reduced_spectrum,
                                          key=lambda z: (z.real, z.imag)), atol=1e-10)
        assert multiset_close(pos.full_spectrum, neg.full_spectrum, tol=1e-12)


def test_convention_flip_multiplies_eigenvector_by_j():
    res_p = right_spectrum_quaternionic(M_GOLDEN)
    res_n = right_spectrum_quaternionic(M_GOLDEN, convention=NEGATIVE_IMAG)
    for k in range(2):
        lam = res_p.reduced_spectrum[k]
        match = [v for v, mu in zip(res_n.eigenvectors, res_n.reduced_spectrum)
                 if abs(mu - np.conj(lam)) <= 1e-10]
        assert any(vectors_match_up_to_complex_scale(res_p.eigenvectors[k] * J, v, 1e-9)
                   for v in match)


def test_psi_j_partner_property():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        m = random_quat_matrix(rng, n)
        res = right_spectrum_quaternionic(m)
        for lam, psi in zip(res.reduced_spectrum, res.eigenvectors):
            flip = (m @ (psi * J)) - (psi * J) * cq(np.conj(lam))
            assert flip.norm() <= 1e-9 * max(1.0, m.norm())


def test_rephase_goldens():
    psi = QuatVector([ONE, J])
    out_psi, out_lam = rephase_eigenpair(psi, 1j, Quaternion(1.0))
    assert out_psi.entries == psi.entries and out_lam == I

    _, lam_j = rephase_eigenpair(psi, 1j, J)
    assert lam_j == -I


def test_rephase_preserves_residual():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        m = random_quat_matrix(rng, n)
        res = right_spectrum_quaternionic(m)
        u = random_unit_quaternion(rng)
        psi, lam = rephase_eigenpair(res.eigenvectors[0], res.reduced_spectrum[0], u)
        gap = (m @ psi) - psi * lam
        assert gap.norm() <= 1e-9 * max(1.0, m.norm())


def test_right_eigenvectors_are_h_independent_for_separated_values():
    # two eigenvectors whose values are neither equal nor conjugate span
    # rank 4 after translation with their partner columns
    rng = np.random.default_rng(9)
    for _ in range(30):
        m = random_quat_matrix(rng, 2)
        res = right_spectrum_quaternionic(m)
        l1, l2 = res.reduced_spectrum
        if abs(l1 - l2) < 1e-6 or abs(l1 - np.conj(l2)) < 1e-6:
            continue
        cols = []
        for v in res.eigenvectors:
            phi = complexify_vector(v)
            cols.extend([phi, partner_eigenvector(phi)])
        sv = np.linalg.svd(np.column_stack(cols), compute_uv=False)
        assert sv[-1] > 1e-8


# ----------------------------------------------------------------------
# diagonalization
# ----------------------------------------------------------------------

def test_diagonalize_golden():
    s, d = diagonalize_quaternionic(M_GOLDEN)
    gap = (s @ M_GOLDEN @ s.inverse()) - d
    assert gap.norm() <= 1e-9

    # published closed form, reproduced up to one complex scale per row
    scale = -1.0 / (2 * abs(LAMBDA1) ** 2)
    s_golden = QuatMatrix([
        [cq(1j * np.conj(LAMBDA1)), J * cq(1j * LAMBDA1 + abs(LAMBDA1) ** 2)],
        [K * cq(np.conj(LAMBDA1)), cq(1j * LAMBDA1 - abs(LAMBDA1) ** 2)],
    ]) * scale
    t = complexify_matrix(s) @ np.linalg.inv(complexify_matrix(s_golden))
    off = t.copy()
    for b in range(2):
        off[2 * b:2 * b + 2, 2 * b:2 * b + 2] = 0
    assert np.abs(off).max() <= 1e-9

    d_golden = QuatMatrix.diagonal([cq(LAMBDA1), cq(LAMBDA2)])
    assert (d - d_golden).norm() <= 1e-10


def test_diagonalize_diagonal_input_gives_identity():
    m = QuatMatrix.diagonal([I, 2 * I])
    s, d = diagonalize_quaternionic(m)
    assert (s - QuatMatrix.identity(2)).norm() <= 1e-10
    assert (d - m).norm() <= 1e-12


def test_diagonalize_rejects_defective():
    m = QuatMatrix([[I, ONE], [Quaternion(), I]])
    with pytest.raises(NotDiagonalizable):
        diagonalize_quaternionic(m)
    # cross-checks: condition estimate and a vanishing discriminant
    res = eig(complexify_matrix(m))
    assert res.defective_flag
    rts = roots(charpoly(complexify_matrix(m)))
    disc = np.prod([rts[i] - rts[j]
                    for i in range(4) for j in range(i + 1, 4)])
    assert abs(disc) <= 1e-10


def test_diagonalizer_on_constructed_instances():
    rng = np.random.default_rng(11)
    done = 0
    while done < 30:
        n = int(rng.integers(2, 6))
        s = random_quat_matrix(rng, n)
        if np.linalg.cond(complexify_matrix(s)) > 1e4:
            continue
        lams = rng.uniform(-1, 1, n) + 1j * rng.uniform(0.2, 1.0, n)
        if min(abs(lams[i] - lams[j]) for i in range(n) for j in range(n) if i != j) < 0.05 if n > 1 else False:
            continue
        m = s.inverse() @ QuatMatrix.diagonal([cq(l) for l in lams]) @ s
        sh, d = diagonalize_quaternionic(m)
        gap = (sh @ m @ sh.inverse()) - d
        assert gap.norm() <= 1e-8 * max(1.0, m.norm())
        assert multiset_close([d[k, k].to_complex() for k in range(n)], lams, 1e-8)
        done += 1


# ----------------------------------------------------------------------
# complex-linear operators
# ----------------------------------------------------------------------

def test_clin_spectrum_golden():
    res = right_spectrum_complexlinear(MC_GOLDEN)
    assert multiset_close(res.spectrum, [2, -2, 2j, -2j], tol=1e-12)
    assert max(res.residuals) <= 1e-12
    translations = [
        QuatVector([ONE, -J]),          # eigenvalue 2
        QuatVector([J, ONE]),           # eigenvalue -2
        QuatVector([ONE + K, I + J]),   # eigenvalue 2i
        QuatVector([J - I, K - ONE]),   # eigenvalue -2i
    ]
    for lam, golden in zip([2, -2, 2j, -2j], translations):
        ours = [v for v, mu in zip(res.eigenvectors, res.spectrum)
                if abs(mu - lam) <= 1e-10]
        assert len(ours) == 1
        assert vectors_match_up_to_complex_scale(ours[0], golden, 1e-10)


def test_clin_reduces_to_quaternionic_when_no_right_action():
    rng = np.random.default_rng(13)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        m = random_quat_matrix(rng, n)
        res = right_spectrum_complexlinear(m.to_hlcr())
        full = right_spectrum_quaternionic(m).full_spectrum
        assert multiset_close(res.spectrum, full, tol=1e-9 * max(1.0, m.norm()))
        assert multiset_close(res.spectrum, np.conj(res.spectrum).tolist(),
                              tol=1e-8 * max(1.0, m.norm()))


def test_clin_pure_right_i_action():
    m = HlcrMatrix([[HlcrElement(Quaternion(), ONE)]])
    res = right_spectrum_complexlinear(m)
    np.testing.assert_allclose(res.spectrum, [1j, 1j], atol=1e-14)
    assert max(res.residuals) <= 1e-12
    # both (1) and (j) solve psi * i = psi * i trivially; check rays span them
    mats = [vectors_match_up_to_complex_scale(v, QuatVector([ONE]), 1e-9) or
            vectors_match_up_to_complex_scale(v, QuatVector([J]), 1e-9)
            for v in res.eigenvectors]
    assert all(mats)


def test_diagonalize_complexlinear_golden():
    s, d = diagonalize_complexlinear(MC_GOLDEN, order=[2, -2, 2j, -2j])
    # D = 2 diag(-i R_i, i)
    d_golden = HlcrMatrix.diagonal([HlcrElement(Quaternion(), -2 * I),
                                    HlcrElement(2 * I, Quaternion())])
    assert (d - d_golden).norm() <= 1e-10

    s_golden = HlcrMatrix([
        [HlcrElement.from_quaternion(0.5 * ONE), HlcrElement.from_quaternion(0.5 * J)],
        [HlcrElement.from_quaternion(0.25 * (ONE - K)),
         HlcrElement.from_quaternion(-0.25 * (I + J))],
    ])
    t = complexify_matrix(s) @ np.linalg.inv(complexify_matrix(s_golden))
    off = t.copy()
    for b in range(2):
        off[2 * b:2 * b + 2, 2 * b:2 * b + 2] = 0
    assert np.abs(off).max() <= 1e-9

    gap = (s @ MC_GOLDEN @ s.inverse()) - d
    assert gap.norm() <= 1e-8


def test_diagonal_rebasing_by_unit_diagonal():
    _, d = diagonalize_complexlinear(MC_GOLDEN, order=[2, -2, 2j, -2j])
    u = HlcrMatrix.diagonal([HlcrElement.from_quaternion(-J),
                             HlcrElement.from_quaternion((ONE + K) * (1 / np.sqrt(2)))])
    u_dag = u.adjoint()
    rebased = u @ d @ u_dag
    expected = HlcrMatrix.diagonal([HlcrElement(Quaternion(), 2 * I),
                                    HlcrElement.from_quaternion(2 * J)])
    assert (rebased - expected).norm() <= 1e-10


def test_diagonalize_complexlinear_identity():
    ident = HlcrMatrix.identity(2)
    s, d = diagonalize_complexlinear(ident)
    assert (s - ident).norm() <= 1e-10
    assert (d - ident).norm() <= 1e-12


# ----------------------------------------------------------------------
# hermitian-from-anti-hermitian
# ----------------------------------------------------------------------

def test_hermitian_construction_golden():
    a = QuatMatrix([[-I, 3 * J], [3 * J, I]])
    spec = right_spectrum_quaternionic(a)
    np.testing.assert_allclose(sorted(spec.reduced_spectrum, key=lambda z: z.imag),
                               [2j, 4j], atol=1e-10)
    h = hermitian_from_antihermitian(a)
    golden = QuatMatrix([[Quaternion(3), K], [-K, Quaternion(3)]])
    assert (h - golden).norm() <= 1e-9


def test_hermitian_construction_diagonal():
    h = hermitian_from_antihermitian(QuatMatrix.diagonal([I, 2 * I]))
    assert (h - QuatMatrix.diagonal([Quaternion(1), Quaternion(2)])).norm() <= 1e-10


def test_hermitian_construction_random_properties():
    from quateig import is_hermitian
    rng = np.random.default_rng(15)
    for _ in range(20):
        a = random_antihermitian(rng, 3)
        h = hermitian_from_antihermitian(a)
        assert is_hermitian(h, 1e-9)
        want = sorted(abs(l) for l in right_spectrum_quaternionic(a).reduced_spectrum)
        got = sorted(l.real for l in right_spectrum_quaternionic(h).reduced_spectrum)
        np.testing.assert_allclose(got, want, atol=1e-8)


def test_hermitian_construction_is_phase_invariant():
    rng = np.random.default_rng(17)
    a = random_antihermitian(rng, 3)
    spec = right_spectrum_quaternionic(a)
    h1 = hermitian_from_antihermitian(a)
    # rebuild with arbitrarily rephased unit eigenvectors
    n = a.n
    rows = [[Quaternion() for _ in range(n)] for _ in range(n)]
    for lam, v in zip(spec.reduced_spectrum, spec.eigenvectors):
        u = random_unit_quaternion(rng)
        w = v * u
        for i in range(n):
            for j in range(n):
                rows[i][j] = rows[i][j] + w[i] * abs(lam) * w[j].conjugate()
    h2 = QuatMatrix(rows)
    assert (h1 - h2).norm() <= 1e-8


def test_hermitian_construction_rejects_non_antihermitian():
    from quateig import NotAntiHermitian
    with pytest.raises(NotAntiHermitian):
        hermitian_from_antihermitian(QuatMatrix.identity(2))


# ----------------------------------------------------------------------
# common eigenbasis
# ----------------------------------------------------------------------

ENERGY = QuatMatrix.diagonal([I, I])
SPIN = QuatMatrix.diagonal([I, -I]) * 0.5


def test_co_spectrum_default_basis():
    res = co_spectrum(ENERGY, SPIN)
    assert [(round(a.real, 9) + 1j * round(a.imag, 9),
             round(b.real, 9) + 1j * round(b.imag, 9)) for a, b in res.pairs] == \
        [(1j, 0.5j), (1j, -0.5j)]
    assert max(res.residuals) <= 1e-10


def test_co_spectrum_table_rows():
    e1 = QuatVector([ONE, Quaternion()])
    e2 = QuatVector([Quaternion(), ONE])
    j1 = QuatVector([J, Quaternion()])
    j2 = QuatVector([Quaternion(), J])
    table = [
        ([e1, e2], [(1j, 0.5j), (1j, -0.5j)]),
        ([e1, j2], [(1j, 0.5j), (-1j, 0.5j)]),
        ([j1, e2], [(-1j, -0.5j), (1j, -0.5j)]),
        ([j1, j2], [(-1j, -0.5j), (-1j, 0.5j)]),
    ]
    for basis, expected in table:
        res = co_spectrum(ENERGY, SPIN, basis=basis)
        got = [(round(a.real, 9) + 1j * round(a.imag, 9),
                round(b.real, 9) + 1j * round(b.imag, 9)) for a, b in res.pairs]
        assert got == expected


def test_co_spectrum_identity_second_operator():
    rng = np.random.default_rng(19)
    m = random_quat_matrix(rng, 3)
    res = co_spectrum(m, QuatMatrix.identity(3))
    for (l1, l2), lam in zip(res.pairs,
                             right_spectrum_quaternionic(m).reduced_spectrum):
        assert abs(l2 - 1) <= 1e-9


def test_co_spectrum_rejects_non_commuting():
    with pytest.raises(NotCommuting):
        co_spectrum(M_GOLDEN, QuatMatrix.diagonal([I, J]))
