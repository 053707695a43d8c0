"""Emanation directions of Fucik curves at a diagonal point (lambda, lambda).

A direction is a pair (eta0, u0) with u0 a unit kernel vector of
A - lambda*I such that |u0| + eta0*u0 is orthogonal to the adjoint kernel.
The slope of the corresponding curve in the (alpha, beta) plane is
(eta0 - 1)/(eta0 + 1).

The solver enumerates the 2**n sign branches of |.|: inside the branch with
sign vector s, |u0| = diag(s) u0, and the orthogonality conditions become a
p x p linear pencil (M_S + eta*M_0) c = 0 in the kernel coordinates c.  All
real roots eta of its determinant polynomial are extracted, the pencil
kernel gives the candidate coefficient vectors, and a candidate survives iff
it is sign-consistent with its branch and reproduces the orthogonality
residual.  Branches whose determinant vanishes identically carry a
one-parameter family of admissible directions and are reported as a
continuum flag plus representative points.

Each surviving direction with strictly nonzero components and a nonzero
adjoint-kernel projection is certified against the injectivity condition
(check_nondegeneracy); everything else is marked not-applicable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DefectiveDirectionError, InvalidInputError, SpectralError
from .linalg import (
    Tolerances,
    as_matrix,
    kernel_pair,
    matrix_scale,
    orthonormal_complement_in,
    sign_vector,
)

#: eta window and step for sampling representative points of continuum branches
CONTINUUM_ETA_RANGE = 5.0
CONTINUUM_ETA_STEP = 0.05

#: angular resolution for sampling a two-dimensional pencil kernel
CONTINUUM_CIRCLE_SAMPLES = 160

#: |eta + 1| below this counts as the vertical-tangent value
_VERTICAL_ETA_TOL = 1e-12

#: threshold on ||Q u0|| separating regular directions from defective ones
DEFECT_FACTOR = 1e3  # times tol.residual


def defect_threshold(tol: Tolerances) -> float:
    return DEFECT_FACTOR * tol.residual


def iter_patterns(n: int):
    """All sign vectors in {-1,+1}^n as float arrays, deterministic order."""
    for bits in itertools.product((1.0, -1.0), repeat=n):
        yield np.array(bits)


def pattern_string(s) -> str:
    return "".join("+" if x > 0 else "-" for x in np.asarray(s))


def pattern_consistent(s, u, tol_sign: float) -> bool:
    """Weak consistency: s_i*u_i >= -tol for all i (zeros fit either sign)."""
    return bool(np.all(np.asarray(s) * np.asarray(u) >= -tol_sign))


@dataclass(frozen=True)
class NondegeneracyVerdict:
    status: str  # "holds" | "fails" | "not-applicable"
    witness_w: np.ndarray | None = None
    witness_c: float | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness_w is not None:
            out["witness_w"] = list(self.witness_w)
            out["witness_c"] = self.witness_c
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class TangentDirection:
    """One admissible emanation direction at (lambda, lambda)."""

    eta0: float
    u0: np.ndarray
    coeffs: np.ndarray  # coordinates in the orthonormal kernel basis used
    slope: float
    pattern: np.ndarray
    nondegeneracy: NondegeneracyVerdict
    quadrants: dict = field(default_factory=dict)  # {"plus": (...), "minus": (...)}
    residual: float = 0.0
    continuum: bool = False

    def to_json(self) -> dict:
        return {
            "eta0": self.eta0,
            "slope": "inf" if math.isinf(self.slope) else self.slope,
            "u0": list(self.u0),
            "coeffs": list(self.coeffs),
            "pattern": pattern_string(self.pattern),
            "nondegeneracy": self.nondegeneracy.to_json(),
            "quadrants": {k: list(v) for k, v in self.quadrants.items()},
            "residual": self.residual,
            "continuum": self.continuum,
        }


def slope_from_eta(eta: float) -> float:
    """Curve slope (eta - 1)/(eta + 1); eta = -1 gives the vertical value inf."""
    if math.isinf(eta):
        return 1.0
    if abs(eta + 1.0) <= _VERTICAL_ETA_TOL * (1.0 + abs(eta)):
        return math.inf
    return (eta - 1.0) / (eta + 1.0)


def eta_from_point(alpha: float, beta: float, lam: float) -> float:
    """Direction parameter of the point (alpha, beta) seen from (lam, lam)."""
    da, db = alpha - lam, beta - lam
    if da == db:
        raise InvalidInputError("alpha = beta: direction is undefined on the diagonal")
    return (da + db) / (da - db)


def quadrant_of(eta: float, side: str) -> tuple[str, ...]:
    """Diagonal-cone tags selected by the sign of eta on the given side.

    side "plus" is the ray with alpha - beta > 0, "minus" the opposite one.
    eta = 0 lies on the closure of both cones of its side, so both tags are
    returned there.
    """
    if side not in ("plus", "minus"):
        raise InvalidInputError(f"side must be 'plus' or 'minus', got {side!r}")
    if eta == 0.0:
        return ("E", "S") if side == "plus" else ("W", "N")
    if side == "plus":
        return ("E",) if eta > 0 else ("S",)
    return ("W",) if eta > 0 else ("N",)


def _quadrants(eta: float) -> dict:
    return {"plus": quadrant_of(eta, "plus"), "minus": quadrant_of(eta, "minus")}


def _pencil_coeffs(MS: np.ndarray, M0: np.ndarray) -> np.ndarray:
    """Ascending coefficients of det(MS + eta*M0), degree <= p."""
    p = MS.shape[0]
    nodes = np.cos(np.pi * (2.0 * np.arange(p + 1) + 1.0) / (2.0 * (p + 1)))
    dets = np.array([np.linalg.det(MS + t * M0) for t in nodes])
    return np.linalg.solve(np.vander(nodes, p + 1, increasing=True), dets)


def _real_roots(coefs: np.ndarray, trim_tol: float = 1e-12, im_tol: float = 1e-7) -> list[float]:
    mx = float(np.max(np.abs(coefs)))
    deg = len(coefs) - 1
    while deg > 0 and abs(coefs[deg]) <= trim_tol * mx:
        deg -= 1
    if deg == 0:
        return []
    roots = np.roots(coefs[: deg + 1][::-1])
    return [float(r.real) for r in roots if abs(r.imag) <= im_tol * (1.0 + abs(r.real))]


def _kernel_candidates(B: np.ndarray, extra_tol: float = 1e-7) -> tuple[list[np.ndarray], bool]:
    """Unit vectors spanning the numerical kernel of the pencil at a root.

    Returns (candidates, is_family).  A one-dimensional kernel gives the
    single candidate of an isolated direction.  A multi-dimensional kernel
    means the admissible directions at this eta form a continuum; a dense
    deterministic fan inside the kernel is returned (spaced well below the
    dedup-vs-oracle distance of 0.05) and flagged as a family.
    """
    p = B.shape[0]
    if p == 1:
        return [np.array([1.0])], False
    _, s, vt = np.linalg.svd(B)
    kdim = max(1, int(np.sum(s <= extra_tol * max(1.0, s[0]))))
    if kdim == 1:
        return [vt[-1]], False
    basis = _canonical_subspace_basis(vt[p - kdim:])
    if kdim == 2:
        angles = np.linspace(0.0, np.pi, CONTINUUM_CIRCLE_SAMPLES, endpoint=False)
        return [np.cos(a) * basis[0] + np.sin(a) * basis[1] for a in angles], True
    rng = np.random.default_rng(20230901)
    dirs = rng.standard_normal((1000, kdim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return [d @ basis for d in dirs], True


def _canonical_subspace_basis(rows: np.ndarray) -> np.ndarray:
    """Orthonormal basis depending only on the spanned subspace.

    Gram-Schmidt over the columns of the orthogonal projector, taken in
    index order, so that two pencils sharing a kernel subspace sample the
    same fan of directions regardless of the SVD's arbitrary rotation."""
    proj = rows.T @ rows
    out = []
    for col in proj.T:
        v = col.copy()
        for b in out:
            v -= (b @ v) * b
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            v /= nrm
            if v[np.argmax(np.abs(v))] < 0:
                v = -v
            out.append(v)
        if len(out) == len(rows):
            break
    return np.array(out) if out else rows


def _polish_direction(MS, M0, eta, c):
    """Newton on the square system [(MS + eta*M0)c ; (|c|^2 - 1)/2] = 0."""
    c = c / np.linalg.norm(c)
    p = len(c)
    for _ in range(6):
        B = MS + eta * M0
        F = np.concatenate([B @ c, [(c @ c - 1.0) / 2.0]])
        if np.linalg.norm(F) <= 1e-15 * p:
            break
        J = np.zeros((p + 1, p + 1))
        J[:p, 0] = M0 @ c
        J[:p, 1:] = B
        J[p, 1:] = c
        try:
            delta = np.linalg.lstsq(J, -F, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        eta = eta + float(delta[0])
        c = c + delta[1:]
    return eta, c / np.linalg.norm(c)


def _necessary_residual(V, u0, eta):
    return float(np.max(np.abs(V.T @ (np.abs(u0) + eta * u0)))) if V.size else 0.0


def tangent_directions(A, lam: float, tol: Tolerances | None = None) -> list[TangentDirection]:
    """All admissible emanation directions (eta0, u0) at (lam, lam).

    Returns isolated directions plus, for branches whose pencil determinant
    vanishes identically, continuum-flagged representative points sampled on
    an eta grid.  Directions where u0 has a zero component or where the
    adjoint-kernel projection Q u0 vanishes carry a not-applicable
    nondegeneracy verdict instead of a certificate.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    U, V = kernel_pair(A, lam, tol)  # raises SpectralError when lam is no eigenvalue
    n = A.shape[0]
    p = U.shape[1]
    M0 = V.T @ U
    res_bound = 10.0 * tol.residual

    found: list[tuple[float, np.ndarray, np.ndarray, np.ndarray, bool]] = []

    def offer(eta, c, s, continuum):
        u0 = U @ c
        nrm = np.linalg.norm(u0)
        if nrm <= 1e-12:
            return
        u0 = u0 / nrm
        c = c / nrm
        if not pattern_consistent(s, u0, tol.sign):
            return
        if _necessary_residual(V, u0, eta) > res_bound:
            return
        found.append((float(eta), u0, c, s.copy(), continuum))

    for s in iter_patterns(n):
        MS = V.T @ (s[:, None] * U)
        coefs = _pencil_coeffs(MS, M0)
        if float(np.max(np.abs(coefs))) <= 1e-11:
            # identically singular pencil: admissible directions form a
            # continuum in eta; sample representatives over the eta window
            for eta in np.arange(-CONTINUUM_ETA_RANGE, CONTINUUM_ETA_RANGE + 1e-9, CONTINUUM_ETA_STEP):
                cands, _ = _kernel_candidates(MS + eta * M0)
                for c in cands:
                    for sign in (1.0, -1.0):
                        offer(round(eta, 12), sign * c, s, True)
            continue
        for eta in _real_roots(coefs):
            cands, family = _kernel_candidates(MS + eta * M0)
            for c in cands:
                if family:
                    # u0 continuum at an isolated eta: keep the sampled fan
                    offer(eta, c, s, True)
                    offer(eta, -c, s, True)
                    continue
                eta2, c2 = _polish_direction(MS, M0, eta, c)
                for sign in (1.0, -1.0):
                    offer(eta2, sign * c2, s, False)

    deduped = _dedup_directions(found, tol)
    out = []
    for eta, u0, c, s, continuum in deduped:
        verdict = _direction_verdict(A, lam, U, V, u0, eta, tol, continuum)
        out.append(
            TangentDirection(
                eta0=eta,
                u0=u0,
                coeffs=c,
                slope=slope_from_eta(eta),
                pattern=s,
                nondegeneracy=verdict,
                quadrants=_quadrants(eta),
                residual=_necessary_residual(V, u0, eta),
                continuum=continuum,
            )
        )
    return out


def _dedup_directions(found, tol: Tolerances):
    kept: list[tuple[float, np.ndarray, np.ndarray, np.ndarray, bool]] = []
    for eta, u0, c, s, continuum in sorted(
        found, key=lambda t: (t[0], tuple(np.round(t[1], 12)))
    ):
        dup = False
        for eta2, u2, *_ in kept:
            if math.hypot(eta - eta2, float(np.linalg.norm(u0 - u2))) <= tol.dedup:
                dup = True
                break
        if not dup:
            kept.append((eta, u0, c, s, continuum))
    return kept


def _direction_verdict(A, lam, U, V, u0, eta, tol, continuum) -> NondegeneracyVerdict:
    if np.min(np.abs(u0)) <= tol.sign:
        return NondegeneracyVerdict(status="not-applicable", reason="u0 has a zero component")
    if float(np.linalg.norm(V.T @ u0)) <= defect_threshold(tol):
        return NondegeneracyVerdict(
            status="not-applicable",
            reason="Q u0 = 0: defective direction, see the one-sided analysis",
        )
    return check_nondegeneracy(A, lam, u0, eta, tol)


def check_nondegeneracy(A, lam: float, u0, eta0: float, tol: Tolerances | None = None) -> NondegeneracyVerdict:
    """Certify injectivity of (w, c) -> Q(Xi(u0) w + eta0 w) + c*Q u0.

    The map lives on {w in Ker(A - lam*I) : <u0, w> = 0} x R and is
    represented in orthonormal bases of the domain and of the adjoint
    kernel; the verdict holds iff that p x p matrix has full rank.  On
    failure the unit null vector (w, c) is returned as witness.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    u0 = np.asarray(u0, dtype=float)
    scale = matrix_scale(A)
    nrm = float(np.linalg.norm(u0))
    if abs(nrm - 1.0) > 1e-6:
        raise SpectralError(f"u0 must be a unit vector, got norm {nrm!r}")
    u0 = u0 / nrm
    if float(np.linalg.norm((A - lam * np.eye(A.shape[0])) @ u0)) > 10.0 * tol.residual * scale:
        raise SpectralError("u0 is not in the kernel of A - lambda*I")
    if float(np.min(np.abs(u0))) <= tol.sign:
        raise SpectralError("u0 has a zero component; the certificate requires all components nonzero")
    U, V = kernel_pair(A, lam, tol)
    p = U.shape[1]
    if float(np.linalg.norm(V.T @ u0)) <= defect_threshold(tol):
        raise DefectiveDirectionError(
            "Q u0 = 0: direction is defective, use the one-sided analysis"
        )
    W = orthonormal_complement_in(U, u0)
    xi = np.sign(u0)
    L = np.empty((p, p))
    if W.shape[1]:
        L[:, : W.shape[1]] = V.T @ (xi[:, None] * W + eta0 * W)
    L[:, p - 1] = V.T @ u0
    uu, s, vt = np.linalg.svd(L)
    if s[-1] > tol.rank * max(1.0, s[0]):
        return NondegeneracyVerdict(status="holds")
    y = vt[-1]
    w = W @ y[: p - 1] if p > 1 else np.zeros_like(u0)
    return NondegeneracyVerdict(status="fails", witness_w=w, witness_c=float(y[p - 1]))
