"""Right complex eigenvalue problems on quaternionic vector spaces.

For a quaternionic-linear operator the translated 2n x 2n complex
matrix has a spectrum closed under conjugation, and one representative
per conjugate pair (positive imaginary part by default) gives the
reduced n-value spectrum together with quaternionic eigenvectors.  The
eigenvector matrix, inverted through the translation, diagonalizes the
operator.

Complex-linear operators (entries carrying a right action of i) lose
the conjugation symmetry: all 2n eigenvalues are kept, eigenvectors
translate back one by one, and the diagonal form pairs consecutive
eigenvalues into elements of the commutative subalgebra generated by i
and the right action of i.

Also here: the hermitian operator canonically associated with an
anti-hermitian one, and common-eigenbasis spectra for commuting pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import complex_eig
from .errors import (
    NotCommuting,
    NotAntiHermitian,
    NotDiagonalizable,
    NotSimultaneouslyDiagonalizable,
    OddDimension,
    SingularEigenvectorMatrix,
    UnpairedEigenvalue,
)
from .hlcr import HlcrElement
from .matrices import (
    HlcrMatrix,
    QuatMatrix,
    QuatVector,
    complexify_matrix,
    complexify_vector,
    dequaternionify_matrix,
    dequaternionify_vector,
    inner_product,
    is_antihermitian,
)
from .quaternion import Quaternion, UnitQuaternion, from_symplectic

__all__ = [
    "RightEigResult",
    "ClinEigResult",
    "CoSpectrumResult",
    "partner_eigenvector",
    "pair_spectrum",
    "pair_indices",
    "right_spectrum_quaternionic",
    "rephase_eigenpair",
    "diagonalize_quaternionic",
    "right_spectrum_complexlinear",
    "diagonalize_complexlinear",
    "hermitian_from_antihermitian",
    "co_spectrum",
]

POSITIVE_IMAG = "positive-imag"
NEGATIVE_IMAG = "negative-imag"


@dataclass
class RightEigResult:
    """Reduced and full spectra of a quaternionic-linear operator.

    reduced_spectrum[l] belongs with eigenvectors[l] (a unit ray
    representative); residuals[l] is ||M psi - psi lambda|| for that
    pair.  full_spectrum is the complete translated spectrum in solver
    order.  ``diagonalizer`` stays None here; see
    diagonalize_quaternionic.
    """
    reduced_spectrum: list[complex]
    full_spectrum: list[complex]
    eigenvectors: list[QuatVector]
    residuals: list[float]
    diagonalizer: QuatMatrix | None
    diagonalizable: bool


@dataclass
class ClinEigResult:
    """Full 2n-value spectrum of a complex-linear operator.

    No conjugate-pair reduction applies.  ``diagonal`` holds the
    canonical diagonal form whose k-th entry combines eigenvalues
    2k-1 and 2k; ``diagonalizer`` is filled by
    diagonalize_complexlinear.
    """
    spectrum: list[complex]
    eigenvectors: list[QuatVector]
    residuals: list[float]
    diagonalizer: HlcrMatrix | None
    diagonal: HlcrMatrix | None


@dataclass
class CoSpectrumResult:
    basis: list[QuatVector]
    pairs: list[tuple[complex, complex]]
    residuals: list[float]


# ----------------------------------------------------------------------
# conjugate-pair machinery
# ----------------------------------------------------------------------

def partner_eigenvector(phi: np.ndarray) -> np.ndarray:
    """Blockwise (x, y) -> (-conj(y), conj(x)).

    Sends an eigenvector of a translated quaternionic matrix for
    eigenvalue lambda to one for conj(lambda); applying it twice gives
    -phi.  Quaternionically this is right multiplication by j.
    """
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if phi.size % 2:
        raise OddDimension(f"vector of dimension {phi.size}")
    out = np.empty_like(phi)
    out[0::2] = -np.conj(phi[1::2])
    out[1::2] = np.conj(phi[0::2])
    return out


def pair_indices(eigs, tol: float = 1e-8) -> list[tuple[int, int]]:
    """Match a conjugation-closed spectrum into index pairs.

    Returns (i, j) with Im(eigs[i]) >= 0 and eigs[j] ~ conj(eigs[i]).
    Real eigenvalues (|Im| <= tol) are paired with each other.  Greedy
    nearest-conjugate matching with an optimal-assignment fallback;
    raises UnpairedEigenvalue when no matching fits within tol.
    """
    eigs = [complex(e) for e in eigs]
    pos = [k for k, e in enumerate(eigs) if e.imag > tol]
    neg = [k for k, e in enumerate(eigs) if e.imag < -tol]
    real = [k for k, e in enumerate(eigs) if abs(e.imag) <= tol]
    if len(pos) != len(neg) or len(real) % 2:
        raise UnpairedEigenvalue(
            f"{len(pos)} upper, {len(neg)} lower, {len(real)} real eigenvalues")
    pairs: list[tuple[int, int]] = []

    real.sort(key=lambda k: eigs[k].real)
    for a, b in zip(real[0::2], real[1::2]):
        if abs(eigs[a] - eigs[b]) > 4 * tol * max(1.0, abs(eigs[a])):
            raise UnpairedEigenvalue(
                f"real values {eigs[a]!r} and {eigs[b]!r} too far apart")
        pairs.append((a, b))

    pos.sort(key=lambda k: (eigs[k].real, eigs[k].imag))
    used = set()
    matched: list[tuple[int, int]] = []
    ok = True
    for p in pos:
        best, best_d = None, np.inf
        for q in neg:
            if q in used:
                continue
            d = abs(eigs[p] - eigs[q].conjugate())
            if d < best_d:
                best, best_d = q, d
        if best is None or best_d > tol * max(1.0, abs(eigs[p])):
            ok = False
            break
        used.add(best)
        matched.append((p, best))
    if not ok and pos:
        # optimal assignment over |eigs[p] - conj(eigs[q])|
        cost = np.array([[abs(eigs[p] - eigs[q].conjugate()) for q in neg] for p in pos])
        rows, cols = linear_sum_assignment(cost)
        matched = []
        for r, c in zip(rows, cols):
            if cost[r, c] > tol * max(1.0, abs(eigs[pos[r]])):
                raise UnpairedEigenvalue(
                    f"conjugate partner of {eigs[pos[r]]!r} missing within {tol!r}")
            matched.append((pos[r], neg[c]))
    pairs.extend(matched)
    return pairs


def pair_spectrum(eigs, tol: float = 1e-8) -> list[tuple[complex, complex]]:
    """Value-level view of pair_indices: n pairs (lambda, conj-partner)."""
    eigs = [complex(e) for e in eigs]
    return [(eigs[i], eigs[j]) for i, j in pair_indices(eigs, tol)]


# ----------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------

def _phase_fix(phi: np.ndarray) -> np.ndarray:
    """Unit 2-norm with the first significant entry real and positive.

    In quaternionic terms this fixes the right complex phase of the ray
    representative, which is the entire freedom left for eigenvectors
    with non-real eigenvalues.
    """
    phi = np.asarray(phi, dtype=complex)
    nrm = np.linalg.norm(phi)
    if nrm == 0.0:
        return phi
    phi = phi / nrm
    idx = int(np.argmax(np.abs(phi) > 1e-8))
    pivot = phi[idx]
    if abs(pivot) > 0:
        phi = phi * (pivot.conjugate() / abs(pivot))
    return phi


def _echelon_basis(cols: np.ndarray) -> np.ndarray:
    """Canonical basis of the column span by reduced row echelon form.

    Degenerate eigenspaces come out of inverse iteration as arbitrary
    orthonormal combinations; the echelon form is a deterministic
    representative basis (coordinate eigenspaces yield coordinate
    vectors).  Returns the canonical columns, or the input when the
    numerical rank drops unexpectedly.
    """
    a = cols.T.copy()
    nrows, ncols = a.shape
    scale = max(float(np.abs(a).max()), 1e-300)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= 1e-8 * scale:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for q in range(nrows):
            if q != r:
                a[q] = a[q] - a[q, c] * a[r]
        r += 1
    if r < nrows:
        return cols
    return a.T


def _quat_residual_right(m: QuatMatrix, psi: QuatVector, lam: complex) -> float:
    r = (m @ psi) - psi * Quaternion.from_complex(lam)
    return r.norm()


def _hlcr_residual_right(m: HlcrMatrix, psi: QuatVector, lam: complex) -> float:
    r = m.apply(psi) - psi * Quaternion.from_complex(lam)
    return r.norm()


def _gram_schmidt_quaternionic(vectors: list[QuatVector], keep: int,
                               drop_tol: float = 1e-6) -> list[QuatVector]:
    """Modified Gram-Schmidt with right quaternion coefficients.

    Valid inside eigenspaces of real eigenvalues, where arbitrary right
    quaternion combinations stay eigenvectors.  Keeps at most ``keep``
    vectors, dropping candidates that lose almost all their norm.
    """
    kept: list[QuatVector] = []
    for v in vectors:
        if len(kept) == keep:
            break
        w = v
        for _ in range(2):  # twice for numerical orthogonality
            for u in kept:
                w = w - u * inner_product(u, w)
        if w.norm() > drop_tol * v.norm():
            kept.append(w.normalized())
    return kept


def _sort_key(z: complex) -> tuple[float, float]:
    # descending by real then imaginary part; rounding keeps ties from
    # being decided by 1e-17 noise in computed zeros
    return (-round(z.real, 9), -round(z.imag, 9))


def _sorted_pair_order(reps: list[complex]) -> list[int]:
    return sorted(range(len(reps)), key=lambda k: _sort_key(reps[k]))


# ----------------------------------------------------------------------
# quaternionic-linear operators
# ----------------------------------------------------------------------

def right_spectrum_quaternionic(m: QuatMatrix, convention: str = POSITIVE_IMAG,
                                tol: float = 1e-10,
                                pairing_tol: float = 1e-8) -> RightEigResult:
    """Reduced spectrum and quaternionic eigenvectors of a
    quaternionic-linear operator.

    The translated spectrum is matched into conjugate pairs and one
    representative per pair is selected by ``convention``.  Each
    returned eigenvector is a unit, phase-fixed ray representative; a
    pair (lambda, psi) always satisfies M psi = psi lambda within
    1e-9 * ||M|| for diagonalizable input.
    """
    if convention not in (POSITIVE_IMAG, NEGATIVE_IMAG):
        raise ValueError(f"unknown convention {convention!r}")
    c = complexify_matrix(m)
    res = complex_eig.eig(c, tol)
    pairs = pair_indices(res.eigenvalues, pairing_tol)
    norm_m = max(m.norm(), 1.0)

    # group pairs into clusters of equal representative eigenvalue
    cluster_tol = max(pairing_tol, 1e3 * np.finfo(float).eps) * norm_m
    entries = []  # (representative value, is_real, pair)
    for (ip, ineg) in pairs:
        lp = complex(res.eigenvalues[ip])
        if abs(lp.imag) <= pairing_tol:
            rep = complex((res.eigenvalues[ip].real + res.eigenvalues[ineg].real) / 2.0)
            entries.append((rep, True, (ip, ineg)))
        else:
            sel = ineg if convention == NEGATIVE_IMAG else ip
            entries.append((complex(res.eigenvalues[sel]), False, (ip, ineg)))

    order = _sorted_pair_order([e[0] for e in entries])
    entries = [entries[k] for k in order]

    clusters: list[list[int]] = []
    for k, (rep, _, _) in enumerate(entries):
        if clusters and abs(entries[clusters[-1][-1]][0] - rep) <= cluster_tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    reduced: list[complex] = [0j] * len(entries)
    vectors: list[QuatVector | None] = [None] * len(entries)
    for cluster in clusters:
        rep0, real_flag, _ = entries[cluster[0]]
        if real_flag:
            raw = []
            for k in cluster:
                ip, ineg = entries[k][2]
                raw.append(dequaternionify_vector(res.eigenvectors[:, ip]))
                raw.append(dequaternionify_vector(res.eigenvectors[:, ineg]))
            kept = _gram_schmidt_quaternionic(raw, keep=len(cluster))
            if len(kept) < len(cluster):
                # degenerate numerics; fall back to untouched translations
                kept = [dequaternionify_vector(res.eigenvectors[:, entries[k][2][0]])
                        for k in cluster]
            for k, psi in zip(cluster, kept):
                reduced[k] = entries[k][0]
                vectors[k] = dequaternionify_vector(
                    _phase_fix(complexify_vector(psi)))
        else:
            idxs = []
            for k in cluster:
                ip, ineg = entries[k][2]
                idxs.append(ineg if convention == NEGATIVE_IMAG else ip)
            cols = res.eigenvectors[:, idxs]
            if len(cluster) > 1:
                cols, _ = np.linalg.qr(cols)
            for pos, k in enumerate(cluster):
                reduced[k] = entries[k][0]
                vectors[k] = dequaternionify_vector(_phase_fix(cols[:, pos]))

    residuals = [_quat_residual_right(m, psi, lam)
                 for psi, lam in zip(vectors, reduced)]
    return RightEigResult(
        reduced_spectrum=reduced,
        full_spectrum=[complex(e) for e in res.eigenvalues],
        eigenvectors=list(vectors),
        residuals=residuals,
        diagonalizer=None,
        diagonalizable=not res.defective_flag,
    )


def rephase_eigenpair(psi: QuatVector, lam: complex,
                      u: Quaternion) -> tuple[QuatVector, Quaternion]:
    """Move along the eigenvalue class: (psi, lambda) -> (psi u, conj(u) lambda u).

    Right eigenpairs map to right eigenpairs for any unit quaternion u.
    """
    if not isinstance(u, UnitQuaternion):
        u = UnitQuaternion(u.a, u.b, u.c, u.d)
    lam_q = Quaternion.from_complex(lam) if not isinstance(lam, Quaternion) else lam
    return psi * u, u.conjugate() * lam_q * u


def diagonalize_quaternionic(m: QuatMatrix, convention: str = POSITIVE_IMAG,
                             tol: float = 1e-10,
                             pairing_tol: float = 1e-8) -> tuple[QuatMatrix, QuatMatrix]:
    """Return (S, D) with S M S^-1 = D = diag(reduced spectrum).

    S is the inverse of the eigenvector column matrix.  Raises
    NotDiagonalizable when the translated matrix is defective.
    """
    spec = right_spectrum_quaternionic(m, convention, tol, pairing_tol)
    if not spec.diagonalizable:
        raise NotDiagonalizable("translated matrix has no eigenvector basis")
    v = QuatMatrix.from_columns(spec.eigenvectors)
    vc = complexify_matrix(v)
    sv = np.linalg.svd(vc, compute_uv=False)
    if sv[-1] <= 0 or sv[0] / sv[-1] > 1.0 / tol:
        raise SingularEigenvectorMatrix(
            "eigenvector matrix numerically singular despite diagonalizable verdict")
    s = dequaternionify_matrix(np.linalg.inv(vc)).narrow_to_quaternionic(tol=1e-9)
    d = QuatMatrix.diagonal([Quaternion.from_complex(l) for l in spec.reduced_spectrum])
    return s, d


# ----------------------------------------------------------------------
# complex-linear operators
# ----------------------------------------------------------------------

def _clin_diagonal(spectrum: list[complex]) -> HlcrMatrix:
    """Diagonal matrix with entries combining consecutive eigenvalues:
    (l1 + conj(l2))/2 + ((l1 - conj(l2))/2i) acting as right-i."""
    entries = []
    for k in range(0, len(spectrum), 2):
        l1, l2 = spectrum[k], spectrum[k + 1]
        q = from_symplectic((l1 + l2.conjugate()) / 2.0)
        p = from_symplectic((l1 - l2.conjugate()) / 2j)
        entries.append(HlcrElement(q, p))
    return HlcrMatrix.diagonal(entries)


def _canonical_clin_order(eigs: np.ndarray) -> list[int]:
    return sorted(range(len(eigs)), key=lambda k: _sort_key(complex(eigs[k])))


def _match_order(eigs: np.ndarray, targets) -> list[int]:
    cost = np.abs(np.asarray(targets, dtype=complex)[:, None] - eigs[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = [0] * len(targets)
    for r, c in zip(rows, cols):
        out[r] = int(c)
    return out


def right_spectrum_complexlinear(m: HlcrMatrix, tol: float = 1e-10) -> ClinEigResult:
    """All 2n eigenvalues of a complex-linear operator with
    back-translated quaternionic eigenvectors.

    No conjugate pairing is asserted: the translated matrix is a
    generic complex matrix once any entry carries a right-i part.
    """
    c = complexify_matrix(m)
    res = complex_eig.eig(c, tol)
    order = _canonical_clin_order(res.eigenvalues)
    spectrum = [complex(res.eigenvalues[k]) for k in order]
    vectors = [dequaternionify_vector(_phase_fix(res.eigenvectors[:, k])) for k in order]
    residuals = [_hlcr_residual_right(m, psi, lam)
                 for psi, lam in zip(vectors, spectrum)]
    return ClinEigResult(
        spectrum=spectrum,
        eigenvectors=vectors,
        residuals=residuals,
        diagonalizer=None,
        diagonal=_clin_diagonal(spectrum),
    )


def diagonalize_complexlinear(m: HlcrMatrix, order=None,
                              tol: float = 1e-10) -> tuple[HlcrMatrix, HlcrMatrix]:
    """Return (S, D) with S M S^-1 = D for a complex-linear operator.

    D pairs consecutive eigenvalues into diagonal elements of the
    commutative subalgebra spanned by 1, i, R_i and i R_i.  The
    eigenvalue ordering (hence D) is a documented freedom; pass
    ``order`` (a sequence of 2n target eigenvalues) to pin it.
    """
    c = complexify_matrix(m)
    res = complex_eig.eig(c, tol)
    if res.defective_flag:
        raise NotDiagonalizable("translated matrix has no eigenvector basis")
    if order is not None:
        if len(order) != len(res.eigenvalues):
            raise ValueError(f"order must list all {len(res.eigenvalues)} eigenvalues")
        perm = _match_order(res.eigenvalues, order)
    else:
        perm = _canonical_clin_order(res.eigenvalues)
    spectrum = [complex(res.eigenvalues[k]) for k in perm]
    x = np.column_stack([_phase_fix(res.eigenvectors[:, k]) for k in perm])
    try:
        s_complex = np.linalg.inv(x)
    except np.linalg.LinAlgError as exc:
        raise SingularEigenvectorMatrix(str(exc)) from exc
    s = dequaternionify_matrix(s_complex)
    d = _clin_diagonal(spectrum)
    gap = (s @ m @ s.inverse()) - d
    if gap.norm() > 1e-8 * max(1.0, m.norm()):
        raise SingularEigenvectorMatrix(
            f"diagonalization residual {gap.norm()!r} exceeds gate")
    return s, d


# ----------------------------------------------------------------------
# derived constructions
# ----------------------------------------------------------------------

def hermitian_from_antihermitian(a: QuatMatrix, tol: float = 1e-9) -> QuatMatrix:
    """The hermitian operator sharing eigenvectors with an
    anti-hermitian one, with eigenvalues |lambda_l|.

    The imaginary unit cannot simply be divided out on the left of a
    quaternionic matrix; instead H = sum_l v_l |lambda_l| v_l^dagger
    over a unit eigenvector set, which is independent of the ray
    representatives chosen.
    """
    if not is_antihermitian(a, tol):
        raise NotAntiHermitian("input fails the anti-hermiticity gate")
    spec = right_spectrum_quaternionic(a)
    if not spec.diagonalizable:
        raise NotDiagonalizable("anti-hermitian input unexpectedly defective")
    n = a.n
    for lam in spec.reduced_spectrum:
        if abs(lam.real) > tol * max(1.0, a.norm()):
            raise NotAntiHermitian(f"eigenvalue {lam!r} is not purely imaginary")
    rows = [[Quaternion() for _ in range(n)] for _ in range(n)]
    for lam, v in zip(spec.reduced_spectrum, spec.eigenvectors):
        weight = abs(lam)
        for i in range(n):
            for j in range(n):
                rows[i][j] = rows[i][j] + v[i] * weight * v[j].conjugate()
    return QuatMatrix(rows)


def _eigenvalue_on_vector(apply_m, psi: QuatVector, norm_m: float,
                          tol: float) -> complex:
    """Extract the right complex eigenvalue of a claimed eigenvector."""
    image = apply_m(psi)
    pivot = max(range(psi.n), key=lambda l: psi[l].norm_sq())
    lam_q = psi[pivot].inverse() * image[pivot]
    if not lam_q.is_complex(tol * max(1.0, lam_q.norm())):
        raise NotSimultaneouslyDiagonalizable(
            f"vector is not an eigenvector with complex eigenvalue; got {lam_q!r}")
    lam = lam_q.to_complex()
    gap = (image - psi * Quaternion.from_complex(lam)).norm()
    if gap > tol * norm_m * max(psi.norm(), 1.0):
        raise NotSimultaneouslyDiagonalizable(
            f"eigenvector residual {gap!r} exceeds {tol!r} * ||M||")
    return lam


def co_spectrum(m1: QuatMatrix, m2: QuatMatrix, basis=None,
                convention: str = POSITIVE_IMAG, tol: float = 1e-8,
                pairing_tol: float = 1e-8) -> CoSpectrumResult:
    """Common eigenvector basis of two commuting quaternionic-linear
    operators with the eigenvalue pair carried by each basis vector.

    Different admissible bases yield different sign patterns for the
    eigenvalue pairs; pass ``basis`` to evaluate a specific choice.
    The default basis diagonalizes m1 first and then the restriction
    of m2 inside every m1-eigenspace, so degenerate m1 eigenvalues are
    resolved by the m2 values.
    """
    scale = max(1.0, m1.norm() * m2.norm())
    if ((m1 @ m2) - (m2 @ m1)).norm() > 1e-9 * scale:
        raise NotCommuting("operators do not commute within 1e-9")
    norm1, norm2 = max(m1.norm(), 1.0), max(m2.norm(), 1.0)

    if basis is not None:
        basis = [v if isinstance(v, QuatVector) else QuatVector(v) for v in basis]
        pairs = []
        residuals = []
        for psi in basis:
            l1 = _eigenvalue_on_vector(lambda v: m1 @ v, psi, norm1, tol)
            l2 = _eigenvalue_on_vector(lambda v: m2 @ v, psi, norm2, tol)
            pairs.append((l1, l2))
            r1 = _quat_residual_right(m1, psi, l1)
            r2 = _quat_residual_right(m2, psi, l2)
            residuals.append(max(r1, r2))
        return CoSpectrumResult(basis=basis, pairs=pairs, residuals=residuals)

    spec1 = right_spectrum_quaternionic(m1, convention, pairing_tol=pairing_tol)
    if not spec1.diagonalizable:
        raise NotSimultaneouslyDiagonalizable("first operator is defective")
    c2 = complexify_matrix(m2)
    cluster_tol = max(pairing_tol, 1e-9) * max(m1.norm(), 1.0)

    # cluster the reduced spectrum of m1
    clusters: list[list[int]] = []
    for k in range(len(spec1.reduced_spectrum)):
        lam = spec1.reduced_spectrum[k]
        if clusters and abs(spec1.reduced_spectrum[clusters[-1][-1]] - lam) <= cluster_tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    basis_out: list[QuatVector] = []
    pairs_out: list[tuple[complex, complex]] = []
    for cluster in clusters:
        lam1 = spec1.reduced_spectrum[cluster[0]]
        members = [spec1.eigenvectors[k] for k in cluster]
        real_case = abs(lam1.imag) <= pairing_tol
        if not real_case:
            phi = np.column_stack([complexify_vector(v) for v in members])
            restriction = np.linalg.pinv(phi) @ c2 @ phi
            sub = complex_eig.eig(restriction, tol=1e-12)
            if sub.defective_flag:
                raise NotSimultaneouslyDiagonalizable(
                    "second operator defective inside an eigenspace")
            sub_order = sorted(range(len(sub.eigenvalues)),
                               key=lambda t: _sort_key(complex(sub.eigenvalues[t])))
            for t in sub_order:
                vec = _phase_fix(phi @ sub.eigenvectors[:, t])
                psi = dequaternionify_vector(vec)
                mu = complex(sub.eigenvalues[t])
                basis_out.append(psi)
                pairs_out.append((lam1, mu))
        else:
            # eigenspace of a real eigenvalue is a quaternionic submodule:
            # the restriction of m2 to it translates back to a smaller
            # quaternionic matrix whose reduced spectrum finishes the job
            cols = []
            for v in members:
                phi = complexify_vector(v)
                cols.extend([phi, partner_eigenvector(phi)])
            phi = np.column_stack(cols)
            restriction = np.linalg.pinv(phi) @ c2 @ phi
            m2_small = dequaternionify_matrix(restriction).narrow_to_quaternionic(tol=1e-7)
            sub = right_spectrum_quaternionic(m2_small, convention,
                                              pairing_tol=pairing_tol)
            if not sub.diagonalizable:
                raise NotSimultaneouslyDiagonalizable(
                    "second operator defective inside an eigenspace")
            for mu, w in zip(sub.reduced_spectrum, sub.eigenvectors):
                acc = QuatVector([Quaternion()] * m1.n)
                for t, v in enumerate(members):
                    acc = acc + v * w[t]
                psi = dequaternionify_vector(_phase_fix(complexify_vector(acc)))
                basis_out.append(psi)
                pairs_out.append((lam1, mu))

    residuals = []
    for psi, (l1, l2) in zip(basis_out, pairs_out):
        r1 = _quat_residual_right(m1, psi, l1)
        r2 = _quat_residual_right(m2, psi, l2)
        if max(r1, r2) > 1e-8 * max(norm1, norm2):
            raise NotSimultaneouslyDiagonalizable(
                f"common-basis residual {max(r1, r2)!r} exceeds gate")
        residuals.append(max(r1, r2))
    return CoSpectrumResult(basis=basis_out, pairs=pairs_out, residuals=residuals)
