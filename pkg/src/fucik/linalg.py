"""Dense spectral layer for small real matrices.

Everything the higher-level solvers need from LAPACK lives here: real
eigenvalues with algebraic/geometric multiplicities, orthonormal kernel and
adjoint-kernel bases, orthogonal projection, the restricted inverse of
(A - lambda*I) on the orthogonal complement of its kernel, and the
componentwise positive/negative-part and sign primitives.

Defective eigenvalues need care in floating point: a Jordan block of size k
perturbs into a star of computed eigenvalues of radius ~eps**(1/k) around
the true value (a double eigenvalue can even come back as a complex pair).
``spectral_data`` therefore clusters the computed spectrum with a radius
wide enough to reunite such stars and then *verifies* every cluster against
the smallest singular value of A - mean*I, splitting clusters that fail the
check.  The cluster mean is accurate to ~eps because the star is symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, RangeError, SpectralError

#: dimension cap for the brute-force sign-pattern enumeration (2**n branches)
HARD_CAP = 12

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Tolerances:
    """Numerical cutoffs used throughout the package.

    rank      relative singular-value cutoff for rank/kernel decisions
    residual  equation-residual bound for accepting solutions
    sign      magnitude below which a vector component counts as zero
    dedup     distance below which two solutions are merged
    """

    rank: float = 1e-9
    residual: float = 1e-9
    sign: float = 1e-8
    dedup: float = 1e-6

    def __post_init__(self):
        for name in ("rank", "residual", "sign", "dedup"):
            if not getattr(self, name) > 0.0:
                raise InvalidInputError(f"tolerance {name!r} must be positive")
        if self.sign < self.residual:
            raise InvalidInputError("tol sign must be >= tol residual")

    def with_residual(self, residual: float) -> "Tolerances":
        """Copy with a new residual bound; sign is bumped to stay consistent."""
        return Tolerances(
            rank=self.rank,
            residual=residual,
            sign=max(self.sign, 10.0 * residual),
            dedup=self.dedup,
        )


@dataclass(frozen=True)
class EigenvalueData:
    """One real eigenvalue with its multiplicities and kernel bases.

    kernel_basis / adjoint_kernel_basis hold orthonormal columns spanning
    Ker(A - lambda*I) and Ker(A^T - lambda*I).
    """

    value: float
    algebraic_mult: int
    geometric_mult: int
    kernel_basis: np.ndarray
    adjoint_kernel_basis: np.ndarray


@dataclass(frozen=True)
class SpectralData:
    matrix: np.ndarray
    scale: float  # 1 + ||A||_2
    eigenvalues: tuple[EigenvalueData, ...]

    def nearest(self, lam: float) -> EigenvalueData | None:
        if not self.eigenvalues:
            return None
        return min(self.eigenvalues, key=lambda e: abs(e.value - lam))


def as_matrix(a) -> np.ndarray:
    """Validate and convert to a square float64 array."""
    A = np.asarray(a, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInputError(f"expected a square n-by-n matrix with n >= 1, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix entries must be finite")
    return A.copy()


def matrix_scale(A: np.ndarray) -> float:
    return 1.0 + float(np.linalg.norm(A, 2))


def kernel_pair(A: np.ndarray, lam: float, tol: Tolerances) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases (U, V) of Ker(A - lam*I) and Ker(A^T - lam*I).

    Raises SpectralError when lam is not an eigenvalue at the rank cutoff.
    """
    A = as_matrix(A)
    n = A.shape[0]
    uu, s, vt = np.linalg.svd(A - lam * np.eye(n))
    cut = tol.rank * matrix_scale(A)
    k = int(np.sum(s <= cut))
    if k == 0:
        raise SpectralError(
            f"lambda={lam!r} is not an eigenvalue (smallest singular value {s[-1]:.3e} > cutoff {cut:.3e})"
        )
    return vt[n - k:].T.copy(), uu[:, n - k:].copy()


def _verified_clusters(vals: np.ndarray, A: np.ndarray, scale: float, tol: Tolerances):
    """Group the computed spectrum into verified real-eigenvalue clusters.

    Linking radius is wide enough for Jordan stars of size <= 4; the
    smallest-singular-value check at the cluster mean rejects accidental
    merges of genuinely distinct eigenvalues, in which case the cluster is
    re-linked at a quarter of the radius, recursively.
    """
    n = A.shape[0]
    ver_cut = tol.rank * scale

    def components(idx: np.ndarray, radius: float) -> list[np.ndarray]:
        m = len(idx)
        parent = list(range(m))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(m):
            for j in range(i + 1, m):
                if abs(vals[idx[i]] - vals[idx[j]]) <= radius:
                    parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for i in range(m):
            groups.setdefault(find(i), []).append(i)
        return [idx[g] for g in groups.values()]

    accepted: list[tuple[float, int]] = []

    def visit(idx: np.ndarray, radius: float):
        mean = vals[idx].mean()
        if abs(mean.imag) > max(ver_cut, 1e3 * _EPS * scale):
            return  # complex cluster (conjugate pair lives in its mirror)
        lam = float(mean.real)
        smin = np.linalg.svd(A - lam * np.eye(n), compute_uv=False)[-1]
        if smin <= ver_cut or len(idx) == 1:
            if smin <= ver_cut:
                accepted.append((lam, len(idx)))
            # unverifiable singleton: extremely ill-conditioned eigenvalue;
            # keep it so the spectrum stays complete
            elif abs(vals[idx[0]].imag) <= ver_cut:
                accepted.append((lam, 1))
            return
        sub = components(idx, radius / 4.0)
        if len(sub) == 1:
            visit(idx, radius / 4.0)
            return
        for part in sub:
            visit(part, radius / 4.0)

    r_link = scale * max(10.0 * tol.rank, 4.0 * _EPS ** 0.25)
    for comp in components(np.arange(len(vals)), r_link):
        visit(comp, r_link)
    return accepted


def spectral_data(A, tol: Tolerances | None = None) -> SpectralData:
    """All real eigenvalues of A with multiplicities and kernel bases.

    Complex eigenvalues are discarded; numerically coincident real ones
    (including Jordan stars of defective eigenvalues) are merged, with the
    algebraic multiplicity given by the cluster size.  Result is sorted by
    ascending eigenvalue.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    scale = matrix_scale(A)
    vals = np.linalg.eigvals(A)
    entries = []
    for lam, alg in sorted(_verified_clusters(vals, A, scale, tol)):
        U, V = _kernel_pair_lenient(A, lam, tol)
        geo = U.shape[1]
        entries.append(
            EigenvalueData(
                value=lam,
                algebraic_mult=max(alg, geo),
                geometric_mult=geo,
                kernel_basis=U,
                adjoint_kernel_basis=V,
            )
        )
    return SpectralData(matrix=A, scale=scale, eigenvalues=tuple(entries))


def _kernel_pair_lenient(A, lam, tol):
    # like kernel_pair but never empty: the smallest singular direction is
    # kept even when the cutoff misses it (ill-conditioned simple eigenvalue)
    n = A.shape[0]
    uu, s, vt = np.linalg.svd(A - lam * np.eye(n))
    cut = tol.rank * matrix_scale(A)
    k = max(1, int(np.sum(s <= cut)))
    return vt[n - k:].T.copy(), uu[:, n - k:].copy()


def project_onto(basis: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection of x onto the span of the orthonormal columns."""
    x = np.asarray(x, dtype=float)
    basis = np.asarray(basis, dtype=float)
    if basis.size == 0:
        return np.zeros_like(x)
    return basis @ (basis.T @ x)


def restricted_solve(A, lam: float, y, tol: Tolerances | None = None) -> np.ndarray:
    """Solve (A - lam*I) x = y for the unique x orthogonal to the kernel.

    y must lie in Img(A - lam*I): its projection onto the adjoint kernel has
    to vanish within the residual tolerance, otherwise RangeError is raised.
    Implemented as a minimum-norm least-squares solve followed by explicit
    removal of any kernel component.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    y = np.asarray(y, dtype=float)
    if y.shape != (A.shape[0],):
        raise InvalidInputError(f"right-hand side must have length {A.shape[0]}")
    scale = matrix_scale(A)
    U, V = kernel_pair(A, lam, tol)
    ny = float(np.linalg.norm(y))
    out_of_range = float(np.linalg.norm(V.T @ y))
    if out_of_range > tol.residual * scale * (1.0 + ny):
        raise RangeError(
            f"right-hand side is not in Img(A - {lam!r}*I): adjoint-kernel component {out_of_range:.3e}"
        )
    x, *_ = np.linalg.lstsq(A - lam * np.eye(A.shape[0]), y, rcond=None)
    return x - U @ (U.T @ x)


def pos_neg_parts(u) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise positive and negative parts (u = plus - minus)."""
    u = np.asarray(u, dtype=float)
    return np.maximum(u, 0.0), np.maximum(-u, 0.0)


def sign_matrices(u, tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal sign matrix and zero-characteristic matrix of u.

    The first has sgn(u_i) on the diagonal with |u_i| <= tol.sign treated as
    zero; the second has a 1 exactly where the first has a 0.
    """
    tol = tol or Tolerances()
    xi = sign_vector(u, tol)
    return np.diag(xi), np.diag(1.0 - np.abs(xi))


def sign_vector(u, tol: Tolerances) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.where(np.abs(u) <= tol.sign, 0.0, np.sign(u))


def orthonormal_complement_in(U: np.ndarray, u0: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(U) intersected with the complement of u0.

    U has orthonormal columns and u0 is a unit vector in span(U); the result
    has one column fewer.
    """
    proj = U - np.outer(u0, u0 @ U)
    uu, s, _ = np.linalg.svd(proj, full_matrices=False)
    keep = s > 0.5  # singular values are either ~1 or ~0 here
    return uu[:, keep]
