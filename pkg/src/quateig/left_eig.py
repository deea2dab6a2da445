"""Left quaternionic eigenvalue equations for 2x2 operators.

M psi = q psi with a quaternion q on the LEFT does not translate to a
complex eigenvalue problem (the would-be eigenvalue becomes a 2x2 block
itself), so the system is solved directly in quaternionic arithmetic.
With psi normalized to (1, psi2), eliminating q yields one unilateral
quadratic with left coefficients,

    M12 psi2^2 + (M11 - M22) psi2 - M21 = 0,

treated as a root-finding problem over R^4 and attacked by damped
Newton iteration from a deterministic seed grid.  Whole continua of
solutions exist for some operators (the Jacobian drops rank there);
they are detected, sampled and reported as families.

There is no algorithm here for n > 2: larger systems raise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import complex_eig
from .errors import DimensionMismatch, NoRootsFound, NotTwoByTwo
from .matrices import QuatMatrix, QuatVector, complexify_matrix
from .quaternion import Quaternion
from .right_eig import right_spectrum_quaternionic

__all__ = [
    "LeftSolution",
    "LeftFamily",
    "LeftEigResult",
    "MagnitudeComparison",
    "SimilarityComparison",
    "verify_left_pair",
    "left_eig_2x2",
    "left_right_magnitude_report",
    "compare_left_spectra_similarity",
]


@dataclass
class LeftSolution:
    eigenvalue: Quaternion
    eigenvector: QuatVector
    residual: float
    family_flag: bool


@dataclass
class LeftFamily:
    description: str
    members: list[LeftSolution]


@dataclass
class LeftEigResult:
    """All solutions found by the seeded search.

    ``solutions`` holds every distinct converged root (family anchors
    included, flagged); ``families`` groups the continua with sampled
    members.  No completeness claim is made beyond what the seed grid
    reaches.
    """
    solutions: list[LeftSolution]
    families: list[LeftFamily]

    def isolated(self) -> list[LeftSolution]:
        return [s for s in self.solutions if not s.family_flag]


@dataclass
class MagnitudeComparison:
    right_magnitudes: list[float]
    left_magnitudes: list[float]
    equal: bool


@dataclass
class SimilarityComparison:
    left_spectra_match: bool
    complexified_spectra_match: bool
    verdict: str
    left_first: list[Quaternion]
    left_second: list[Quaternion]


def verify_left_pair(m: QuatMatrix, q: Quaternion, psi: QuatVector) -> float:
    """Relative residual ||M psi - q psi|| / (||M|| ||psi||)."""
    if psi.n != m.n:
        raise DimensionMismatch(f"{m.n} vs {psi.n}")
    gap = (m @ psi) - q * psi
    return gap.norm() / (max(m.norm(), 1e-300) * max(psi.norm(), 1e-300))


# ----------------------------------------------------------------------
# quaternion multiplication as 4x4 real matrices (for the Newton step)
# ----------------------------------------------------------------------

def _left_mat(p: Quaternion) -> np.ndarray:
    a, b, c, d = p.a, p.b, p.c, p.d
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])


def _right_mat(q: Quaternion) -> np.ndarray:
    a, b, c, d = q.a, q.b, q.c, q.d
    return np.array([
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ])


def _as_vec(q: Quaternion) -> np.ndarray:
    return np.array([q.a, q.b, q.c, q.d])


def _as_quat(x: np.ndarray) -> Quaternion:
    return Quaternion(float(x[0]), float(x[1]), float(x[2]), float(x[3]))


class _Quadratic:
    """F(x) = A x^2 + B x - C over R^4 with its Jacobian."""

    def __init__(self, a: Quaternion, b: Quaternion, c: Quaternion):
        self.a, self.b, self.c = a, b, c
        self.la = _left_mat(a)
        self.lb = _left_mat(b)

    def value(self, x: Quaternion) -> np.ndarray:
        return _as_vec(self.a * x * x + self.b * x - self.c)

    def jacobian(self, x: Quaternion) -> np.ndarray:
        return self.la @ (_right_mat(x) + _left_mat(x)) + self.lb


def _newton(quad: _Quadratic, seed: np.ndarray, ftol: float,
            max_iter: int = 60) -> np.ndarray | None:
    x = seed.copy()
    fx = quad.value(_as_quat(x))
    for _ in range(max_iter):
        nf = np.linalg.norm(fx)
        if nf <= ftol:
            return x
        jac = quad.jacobian(_as_quat(x))
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -fx, rcond=None)
        if not np.all(np.isfinite(step)):
            return None
        # damping: halve until the residual actually drops
        t = 1.0
        for _ in range(25):
            x_new = x + t * step
            f_new = quad.value(_as_quat(x_new))
            if np.linalg.norm(f_new) < nf:
                break
            t /= 2.0
        else:
            return None
        x, fx = x_new, f_new
    return x if np.linalg.norm(fx) <= ftol else None


def _gauss_newton(quad: _Quadratic, seed: np.ndarray, ftol: float,
                  max_iter: int = 40) -> np.ndarray | None:
    """Least-squares correction onto the solution set; tolerant of the
    rank-deficient Jacobians found on continua."""
    x = seed.copy()
    for _ in range(max_iter):
        fx = quad.value(_as_quat(x))
        if np.linalg.norm(fx) <= ftol:
            return x
        jac = quad.jacobian(_as_quat(x))
        step, *_ = np.linalg.lstsq(jac, -fx, rcond=1e-10)
        if not np.all(np.isfinite(step)):
            return None
        x = x + step
    return x if np.linalg.norm(quad.value(_as_quat(x))) <= ftol else None


def _seed_grid(radius: float) -> list[np.ndarray]:
    """64 deterministic seeds subsampled from the lexicographic
    {-r, -r/2, 0, r/2, r}^4 grid."""
    levels = [-radius, -radius / 2.0, 0.0, radius / 2.0, radius]
    full = [np.array([w, x, y, z])
            for w in levels for x in levels for y in levels for z in levels]
    count = len(full)  # 625
    return [full[round(i * (count - 1) / 63.0)] for i in range(64)]


def _connected(quad: _Quadratic, a: np.ndarray, b: np.ndarray,
               ftol: float, steps: int = 8) -> bool:
    """Walk from root a to root b along corrected chords: connected
    components of the solution set merge into one reported family."""
    cur = a.copy()
    for s in range(steps, 0, -1):
        target = cur + (b - cur) / s
        corrected = _gauss_newton(quad, target, ftol)
        if corrected is None:
            return False
        cur = corrected
    return bool(np.linalg.norm(cur - b) <= 1e-4 * (1.0 + np.linalg.norm(b)))


def left_eig_2x2(m: QuatMatrix, dedup_tol: float = 1e-6) -> LeftEigResult:
    """Solve M psi = q psi for quaternionic q on a 2x2 operator.

    The psi1 = 1 normalization turns the system into the unilateral
    quadratic documented above; the psi1 = 0 branch reduces to the 1x1
    problem M22 psi2 = q psi2 (requiring M12 psi2 = 0) and is handled
    separately.  Roots where the Jacobian loses rank are flagged and
    expanded into sampled families by null-direction continuation.
    """
    if m.n != 2:
        raise NotTwoByTwo(f"left eigenvalue solver requires n = 2, got n = {m.n}")
    norm_m = m.norm()
    quad = _Quadratic(m[0, 1], m[0, 0] - m[1, 1], m[1, 0])
    scale = (1.0 + norm_m) ** 2
    ftol = 1e-12 * scale
    radius = 1.0 + norm_m

    roots: list[np.ndarray] = []
    for seed in _seed_grid(radius):
        x = _newton(quad, seed, ftol)
        if x is None:
            continue
        if all(np.max(np.abs(x - r)) > dedup_tol for r in roots):
            roots.append(x)
    has_zero_branch = m[0, 1].norm() <= 1e-12 * (1.0 + norm_m)
    if not roots and not has_zero_branch:
        raise NoRootsFound("every Newton seed diverged")

    def make_solution(x: np.ndarray, flagged: bool) -> LeftSolution:
        psi2 = _as_quat(x)
        q = m[0, 0] + m[0, 1] * psi2
        psi = QuatVector([Quaternion(1.0), psi2])
        return LeftSolution(q, psi, verify_left_pair(m, q, psi), flagged)

    # rank test: singular values of the Jacobian at each root
    deficiency: list[int] = []
    for x in roots:
        sv = np.linalg.svd(quad.jacobian(_as_quat(x)), compute_uv=False)
        thresh = 1e-6 * max(sv[0], 1e-8)
        deficiency.append(int(np.sum(sv <= thresh)))

    solutions: list[LeftSolution] = []
    families: list[LeftFamily] = []
    family_points: list[list[np.ndarray]] = []  # sampled psi2 per family
    family_nullity: list[int] = []
    order = sorted(range(len(roots)),
                   key=lambda k: tuple(np.round(roots[k], 9)))
    for k in order:
        x = roots[k]
        if deficiency[k] == 0:
            solutions.append(make_solution(x, False))
            continue
        # family root: attach to an existing connected family or start one
        attached = False
        for pts in family_points:
            # chord walks stall between antipodal points, so try several
            # already-sampled members as walk targets
            if any(_connected(quad, x, p, ftol) for p in pts[:12]):
                if all(np.max(np.abs(x - p)) > dedup_tol for p in pts):
                    pts.append(x)
                attached = True
                break
        if attached:
            continue
        members = [x]
        sv, vt = np.linalg.svd(quad.jacobian(_as_quat(x)))[1:]
        null_dirs = vt[np.argsort(sv)[:deficiency[k]]]
        span = max(1.0, float(np.linalg.norm(x)))
        for direction in null_dirs:
            for t in (0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 1.0, -1.0):
                if len(members) >= 16:
                    break
                corrected = _gauss_newton(quad, x + t * span * direction, ftol)
                if corrected is None:
                    continue
                if all(np.max(np.abs(corrected - p)) > dedup_tol for p in members):
                    members.append(corrected)
        family_points.append(members)
        family_nullity.append(deficiency[k])

    for pts, nullity in zip(family_points, family_nullity):
        sols = [make_solution(p, True) for p in pts]
        anchor = sols[0]
        spread = max((s.eigenvalue - anchor.eigenvalue).norm() for s in sols)
        if spread <= 1e-8 * (1.0 + norm_m):
            # the continuum lives in eigenvector space only: one eigenvalue
            # with a multidimensional eigenspace, not an eigenvalue family
            solutions.append(LeftSolution(anchor.eigenvalue, anchor.eigenvector,
                                          anchor.residual, False))
            continue
        mags = sorted(s.eigenvalue.norm() for s in sols)
        desc = (f"continuum detected: Jacobian nullity {nullity} at the root; "
                f"{len(sols)} sampled members with |q| in "
                f"[{mags[0]:.9g}, {mags[-1]:.9g}]")
        families.append(LeftFamily(desc, sols))
        solutions.append(anchor)

    if has_zero_branch:
        # psi1 = 0 branch: M12 = 0, so (q, psi) = (M22, (0, 1)) solves both rows
        q = m[1, 1]
        psi = QuatVector([Quaternion(), Quaternion(1.0)])
        solutions.append(LeftSolution(q, psi, verify_left_pair(m, q, psi), False))

    solutions.sort(key=lambda s: (round(s.eigenvalue.a, 9), round(s.eigenvalue.b, 9),
                                  round(s.eigenvalue.c, 9), round(s.eigenvalue.d, 9)))
    return LeftEigResult(solutions, families)


def left_right_magnitude_report(m: QuatMatrix,
                                tol: float = 1e-8) -> MagnitudeComparison:
    """Absolute values of the reduced right spectrum next to those of
    the isolated left eigenvalues.

    The two need not agree: left and right eigenvalues of the same
    operator are genuinely different quantities.
    """
    right = sorted(abs(l) for l in right_spectrum_quaternionic(m).reduced_spectrum)
    left = sorted(s.eigenvalue.norm() for s in left_eig_2x2(m).isolated())
    equal = len(right) == len(left) and all(
        abs(a - b) <= tol for a, b in zip(right, left))
    return MagnitudeComparison(right, left, equal)


def _multiset_match(first: list[complex], second: list[complex], tol: float) -> bool:
    if len(first) != len(second):
        return False
    if not first:
        return True
    cost = np.abs(np.asarray(first)[:, None] - np.asarray(second)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return bool(np.all(cost[rows, cols] <= tol))


SAME_LEFT_SPECTRUM_NOT_SIMILAR = "SAME_LEFT_SPECTRUM_NOT_SIMILAR"
CONSISTENT_WITH_SIMILARITY = "CONSISTENT_WITH_SIMILARITY"
DIFFERENT_LEFT_SPECTRUM = "DIFFERENT_LEFT_SPECTRUM"
NOT_SIMILAR = "NOT_SIMILAR"


def compare_left_spectra_similarity(m: QuatMatrix, n: QuatMatrix,
                                    tol: float = 1e-8) -> SimilarityComparison:
    """Do two operators share their isolated left spectra, and could
    they be similar?

    Operators related by a similarity transformation share translated
    spectra, so mismatching translated spectra rule similarity out even
    when the left spectra agree eigenclass by eigenclass.
    """
    left_m = [s.eigenvalue for s in left_eig_2x2(m).isolated()]
    left_n = [s.eigenvalue for s in left_eig_2x2(n).isolated()]
    # eigenclass data: (real part, norm)
    classes_m = [complex(q.a, q.norm()) for q in left_m]
    classes_n = [complex(q.a, q.norm()) for q in left_n]
    scale = max(1.0, m.norm(), n.norm())
    left_match = _multiset_match(classes_m, classes_n, tol * scale)

    spec_m = complex_eig.eig(complexify_matrix(m)).eigenvalues
    spec_n = complex_eig.eig(complexify_matrix(n)).eigenvalues
    complexified_match = _multiset_match(list(spec_m), list(spec_n), tol * scale)

    if left_match and not complexified_match:
        verdict = SAME_LEFT_SPECTRUM_NOT_SIMILAR
    elif left_match and complexified_match:
        verdict = CONSISTENT_WITH_SIMILARITY
    elif complexified_match:
        verdict = DIFFERENT_LEFT_SPECTRUM
    else:
        verdict = NOT_SIMILAR
    return SimilarityComparison(left_match, complexified_match, verdict,
                                left_m, left_n)
