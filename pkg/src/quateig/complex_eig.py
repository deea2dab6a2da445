"""Self-contained dense complex eigensolver and low-order oracles.

The solver follows the classical dense path: unitary reduction to upper
Hessenberg form, shifted QR iteration with Wilkinson shifts and
deflation for the eigenvalues, then inverse iteration with the computed
shifts for the eigenvectors.  Two independent low-order oracles are
provided for cross-validation: the characteristic polynomial by the
Faddeev-LeVerrier trace recurrence and simultaneous polynomial root
finding by Durand-Kerner iteration.

Everything here works on plain numpy complex arrays and has no notion
of quaternions; the translation layers feed it 2n-dimensional
counterparts of quaternionic operators.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooLarge, NoConvergence

__all__ = [
    "ComplexEigResult",
    "hessenberg_reduce",
    "eig",
    "charpoly",
    "roots",
]

_EPS = np.finfo(float).eps


@dataclass
class ComplexEigResult:
    """Eigenvalues with matched eigenvectors and per-pair residuals.

    eigenvalues[k] and eigenvectors[:, k] belong together; residuals[k]
    is ||M v - lambda v||_2 for the unit vector v.  Pairs whose residual
    exceeds the requested tolerance are listed in ``flagged`` rather
    than silently dropped.  ``condition_estimate`` is the 2-norm
    condition number of the eigenvector matrix; ``defective_flag`` is
    set when it exceeds 1/tol.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    defective_flag: bool
    condition_estimate: float
    flagged: list[int] = field(default_factory=list)


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def hessenberg_reduce(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction M = U H U* with H upper Hessenberg.

    Returns (H, U) with U unitary.
    """
    h = _as_square(m).copy()
    n = h.shape[0]
    u = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        # phase-aligned Householder vector avoids cancellation
        alpha = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += alpha * nx
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v /= nv
        # H <- P H P with P = I - 2 v v* acting on rows/cols k+1..n
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        u[:, k + 1:] -= 2.0 * np.outer(u[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, u


def _eig2(a, b, c, d) -> tuple[complex, complex]:
    # eigenvalues of [[a, b], [c, d]]
    tr = a + d
    disc = np.sqrt((a - d) ** 2 + 4.0 * b * c + 0j)
    return (tr + disc) / 2.0, (tr - disc) / 2.0


def _wilkinson_shift(h, hi) -> complex:
    l1, l2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
    return l1 if abs(l1 - h[hi, hi]) <= abs(l2 - h[hi, hi]) else l2


def _qr_eigenvalues(h: np.ndarray, sweep_cap: int) -> np.ndarray:
    """Shifted QR with deflation on a Hessenberg matrix (in place)."""
    n = h.shape[0]
    eigs = np.empty(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    stall = 0
    while hi >= 0:
        # deflate negligible subdiagonals
        for p in range(1, hi + 1):
            bound = _EPS * (abs(h[p - 1, p - 1]) + abs(h[p, p]))
            if bound == 0.0:
                bound = _EPS * np.linalg.norm(np.diag(h[:hi + 1, :hi + 1]))
            if abs(h[p, p - 1]) <= bound:
                h[p, p - 1] = 0.0
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        if h[hi, hi - 1] == 0.0:
            eigs[hi] = h[hi, hi]
            hi -= 1
            stall = 0
            continue
        # active window [lo, hi]
        lo = hi
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        if hi - lo == 1:
            l1, l2 = _eig2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            eigs[hi], eigs[lo] = l1, l2
            hi -= 2
            stall = 0
            continue
        sweeps += 1
        if sweeps > sweep_cap:
            raise NoConvergence(
                f"QR iteration exceeded {sweep_cap} sweeps; pathological input")
        stall += 1
        sigma = _wilkinson_shift(h, hi)
        if stall % 12 == 0:
            # deterministic exceptional shift to break rare limit cycles
            sigma = h[hi, hi] + (0.75 + 0.4375j) * abs(h[hi, hi - 1])
        _shifted_qr_sweep(h, lo, hi, sigma)
    return eigs


def _givens(a: complex, b: complex) -> tuple[float, complex]:
    """(c, s) with c real so that [[c, s], [-conj(s), c]] @ (a, b) = (r, 0)."""
    if b == 0:
        return 1.0, 0.0 + 0j
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    r = np.hypot(abs(a), abs(b))
    return abs(a) / r, (a / abs(a)) * np.conj(b) / r


def _shifted_qr_sweep(h: np.ndarray, lo: int, hi: int, sigma: complex) -> None:
    """One explicit QR step on the window: H - sigma I = QR, H <- RQ + sigma I.

    Q is a product of Givens rotations chasing the subdiagonal, so the
    Hessenberg form is preserved and each sweep is O(window^2).
    """
    for i in range(lo, hi + 1):
        h[i, i] -= sigma
    rot = []
    for k in range(lo, hi):
        c, s = _givens(h[k, k], h[k + 1, k])
        rot.append((c, s))
        row_k = h[k, k:hi + 1].copy()
        row_k1 = h[k + 1, k:hi + 1].copy()
        h[k, k:hi + 1] = c * row_k + s * row_k1
        h[k + 1, k:hi + 1] = -np.conj(s) * row_k + c * row_k1
        h[k + 1, k] = 0.0
    # R times the adjoint rotations from the right restores Hessenberg form
    for k in range(lo, hi):
        c, s = rot[k - lo]
        col_k = h[lo:k + 2, k].copy()
        col_k1 = h[lo:k + 2, k + 1].copy()
        h[lo:k + 2, k] = c * col_k + np.conj(s) * col_k1
        h[lo:k + 2, k + 1] = -s * col_k + c * col_k1
    for i in range(lo, hi + 1):
        h[i, i] += sigma


def _inverse_iteration(m: np.ndarray, lam: complex, prior: list[np.ndarray],
                       rng: np.random.Generator, norm_m: float) -> tuple[np.ndarray, float]:
    """One eigenvector for the computed shift lam.

    ``prior`` holds already-accepted eigenvectors of the same eigenvalue
    cluster; iterates are re-orthogonalized against them every step so
    repeated eigenvalues receive independent directions.
    """
    n = m.shape[0]
    shift = lam
    base = m - shift * np.eye(n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    for p in prior:
        x -= p * (p.conj() @ x)
    x /= np.linalg.norm(x)
    best = x
    best_res = np.inf
    for _ in range(8):
        try:
            y = np.linalg.solve(base, x)
        except np.linalg.LinAlgError:
            # exactly singular shifted system: deterministic perturbation
            base = m - (shift + 1e-13 * max(norm_m, 1.0)) * np.eye(n)
            y = np.linalg.solve(base, x)
        for p in prior:
            y -= p * (p.conj() @ y)
        ny = np.linalg.norm(y)
        if ny == 0.0 or not np.isfinite(ny):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            x /= np.linalg.norm(x)
            continue
        x = y / ny
        res = np.linalg.norm(m @ x - lam * x)
        if res < best_res:
            best, best_res = x, res
        if res <= 64 * _EPS * max(norm_m, 1.0):
            break
    return best, float(best_res)


def eig(m: np.ndarray, tol: float = 1e-10) -> ComplexEigResult:
    """Full eigendecomposition of a dense complex matrix.

    Eigenvalues come from shifted QR on the Hessenberg form, eigenvectors
    from inverse iteration with the computed shifts.  Ordering of the
    output is unspecified; callers pair or sort as needed.
    """
    m = _as_square(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = m.shape[0]
    if n == 0:
        return ComplexEigResult(np.empty(0, complex), np.empty((0, 0), complex),
                                np.empty(0), False, 1.0)
    norm_m = float(np.linalg.norm(m))
    if n == 1:
        return ComplexEigResult(np.array([m[0, 0]]), np.eye(1, dtype=complex),
                                np.zeros(1), False, 1.0)
    h, _ = hessenberg_reduce(m)
    eigenvalues = _qr_eigenvalues(h, sweep_cap=100 * n)

    # group equal-within-tolerance eigenvalues so inverse iteration can
    # deliver one independent vector per copy
    cluster_tol = max(tol, 1e3 * _EPS) * max(norm_m, 1.0)
    order = sorted(range(n), key=lambda k: (eigenvalues[k].real, eigenvalues[k].imag))
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and abs(eigenvalues[clusters[-1][-1]] - eigenvalues[idx]) <= cluster_tol:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])

    rng = np.random.default_rng(0x5EED)
    vectors = np.empty((n, n), dtype=complex)
    residuals = np.empty(n)
    flagged = []
    for cluster in clusters:
        prior: list[np.ndarray] = []
        for idx in cluster:
            v, res = _inverse_iteration(m, complex(eigenvalues[idx]), prior, rng, norm_m)
            if res > tol * max(norm_m, 1.0) and prior:
                # no independent direction in this eigenspace: fall back to
                # the true eigenvector so the condition estimate exposes the
                # defect instead of a fake orthogonal column hiding it
                v2, res2 = _inverse_iteration(m, complex(eigenvalues[idx]), [], rng, norm_m)
                if res2 < res:
                    v, res = v2, res2
            vectors[:, idx] = v
            residuals[idx] = res
            prior.append(v)
            if res > tol * max(norm_m, 1.0):
                flagged.append(idx)

    sv = np.linalg.svd(vectors, compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    return ComplexEigResult(eigenvalues, vectors, residuals,
                            defective_flag=bool(cond > 1.0 / tol),
                            condition_estimate=cond,
                            flagged=flagged)


def charpoly(m: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients, highest degree first,
    by the Faddeev-LeVerrier trace recurrence.

    Limited to dimension 12: the recurrence loses accuracy quickly for
    larger matrices.  Serves as an eigenvalue oracle independent of the
    QR path.
    """
    m = _as_square(m)
    n = m.shape[0]
    if n > 12:
        raise DimensionTooLarge(f"dimension {n} > 12")
    coeffs = np.empty(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = m.copy()
    for k in range(1, n + 1):
        ck = -np.trace(mk) / k
        coeffs[k] = ck
        if k < n:
            mk = m @ (mk + ck * np.eye(n))
    return coeffs


def _polyval(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full_like(z, coeffs[0])
    for c in coeffs[1:]:
        out = out * z + c
    return out


def roots(coeffs: np.ndarray, max_iter: int = 2000) -> np.ndarray:
    """All roots of a monic polynomial by Durand-Kerner iteration.

    Convergence target: |p(r)| <= 1e-8 * max|coeff| for every root.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    degree = coeffs.size - 1
    if degree > 12:
        raise DimensionTooLarge(f"degree {degree} > 12")
    if abs(coeffs[0] - 1.0) > 1e-12:
        raise ValueError("leading coefficient must be 1")
    if degree == 0:
        return np.empty(0, dtype=complex)
    scale = float(np.max(np.abs(coeffs)))
    target = 1e-8 * scale
    radius = 1.0 + float(np.max(np.abs(coeffs[1:])))
    z = radius * (0.4 + 0.9j) ** np.arange(1, degree + 1)
    for _ in range(max_iter):
        pz = _polyval(coeffs, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        step = pz / denom
        z = z - step
        # run to stationarity; multiple roots stall early but still meet
        # the residual gate below
        if np.max(np.abs(step)) <= 1e-14 * (1.0 + np.max(np.abs(z))):
            break
    if np.all(np.abs(_polyval(coeffs, z)) <= target):
        return z
    raise NoConvergence(f"Durand-Kerner stalled above residual {target!r}")
