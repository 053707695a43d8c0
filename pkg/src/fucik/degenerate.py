"""One-sided tangents at defective eigenvalues.

When a kernel direction u0 also lies in the range of A - lambda*I (algebraic
multiplicity exceeds the geometric one), the first-order orthogonality
condition is vacuous and the emanating curves can lose smoothness: the
direction parameter eta has one-sided limits eta0+ and eta0- that generally
differ.  They solve, per side, an orthogonality condition on the first-order
corrector

    u1 = R(|u0| + eta*u0) + z,   R = restricted inverse of A - lambda*I,

with z ranging over the kernel directions orthogonal to u0.  The condition
is piecewise polynomial: on the zero set of u0 the corrector's absolute
values |u1_i| branch over sign assignments, which are enumerated; inside a
branch the system is quadratic in eta and bilinear in (eta, z).

Classification:

* regular       Q u0 != 0, the smooth machinery applies;
* case1         Q u0 = 0 but Q|u0| != 0, forced slope 1;
* case2         Q u0 = Q|u0| = 0, one-sided tangents from the corrector;
* inconclusive  case2 whose branch systems degenerate identically on a
                consistent region for both sides -- first order carries no
                information and higher-order terms would be needed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import SpectralError, WrongClassError
from .linalg import (
    Tolerances,
    as_matrix,
    kernel_pair,
    matrix_scale,
    orthonormal_complement_in,
    restricted_solve,
    sign_vector,
)
from .tangents import (
    NondegeneracyVerdict,
    TangentDirection,
    _quadrants,
    defect_threshold,
    pattern_string,
    quadrant_of,
    slope_from_eta,
)

#: all branch-equation coefficients below this count as identically zero
DEGENERACY_FACTOR = 1e3  # times tol.residual

#: multi-start lattice bounds for the Newton solver (p >= 2)
LATTICE_BOUND = 5.0
NEWTON_MAX_ITER = 60


@dataclass(frozen=True)
class DegeneracyClass:
    tag: str  # "regular" | "case1" | "case2" | "inconclusive"
    q_u0: float
    q_abs_u0: float


@dataclass(frozen=True)
class OneSidedEntry:
    side: str  # "plus" | "minus"
    eta0: float
    z0: np.ndarray
    u1: np.ndarray
    slope: float
    quadrants: tuple[str, ...]
    residual: float

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "eta0": self.eta0,
            "slope": "inf" if math.isinf(self.slope) else self.slope,
            "z0": list(self.z0),
            "u1": list(self.u1),
            "quadrants": list(self.quadrants),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class OneSidedTangents:
    u0: np.ndarray
    degeneracy: DegeneracyClass
    generalized_eigenvector: np.ndarray
    plus: tuple[OneSidedEntry, ...]
    minus: tuple[OneSidedEntry, ...]
    degenerate_sides: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "class": self.degeneracy.tag,
            "u0": list(self.u0),
            "generalized_eigenvector": list(self.generalized_eigenvector),
            "entries": [e.to_json() for e in self.plus + self.minus],
            "degenerate_sides": list(self.degenerate_sides),
        }


def defective_directions(A, lam: float, tol: Tolerances | None = None) -> list[np.ndarray]:
    """Unit kernel directions that also lie in Img(A - lam*I), both
    orientations of each basis vector.

    These are exactly the directions the first-order tangent system cannot
    constrain; they exist iff the algebraic multiplicity of lam exceeds the
    geometric one.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    U, V = kernel_pair(A, lam, tol)
    M = V.T @ U
    _, s, vt = np.linalg.svd(M)
    cut = defect_threshold(tol)
    out: list[np.ndarray] = []
    for k in range(len(s) - 1, -1, -1):
        if s[k] > cut:
            break
        u = U @ vt[k]
        u = u / np.linalg.norm(u)
        out.extend([u, -u])
    return out


def classify(A, lam: float, u0, tol: Tolerances | None = None) -> DegeneracyClass:
    """Sort a kernel direction into regular / case1 / case2.

    case2 can still be escalated to inconclusive by one_sided_tangents when
    its branch systems carry no information.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    u0 = np.asarray(u0, dtype=float)
    nrm = float(np.linalg.norm(u0))
    if nrm == 0.0:
        raise SpectralError("u0 must be nonzero")
    u0 = u0 / nrm
    scale = matrix_scale(A)
    if float(np.linalg.norm((A - lam * np.eye(A.shape[0])) @ u0)) > 10.0 * tol.residual * scale:
        raise SpectralError("u0 is not in the kernel of A - lambda*I")
    _, V = kernel_pair(A, lam, tol)
    q_u0 = float(np.linalg.norm(V.T @ u0))
    q_abs = float(np.linalg.norm(V.T @ np.abs(u0)))
    cut = defect_threshold(tol)
    if q_u0 > cut:
        tag = "regular"
    elif q_abs > cut:
        tag = "case1"
    else:
        tag = "case2"
    return DegeneracyClass(tag=tag, q_u0=q_u0, q_abs_u0=q_abs)


def case1_direction(A, lam: float, u0, tol: Tolerances | None = None) -> TangentDirection:
    """The forced slope-1 direction of a case1 kernel vector.

    eta is the distinguished infinite value; no nondegeneracy certificate
    applies.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    cls = classify(A, lam, u0, tol)
    if cls.tag != "case1":
        raise WrongClassError(f"case1_direction needs class case1, got {cls.tag!r}")
    u0 = np.asarray(u0, dtype=float)
    u0 = u0 / np.linalg.norm(u0)
    U, V = kernel_pair(A, lam, tol)
    s = np.where(sign_vector(u0, tol) == 0.0, 1.0, np.sign(u0))
    return TangentDirection(
        eta0=math.inf,
        u0=u0,
        coeffs=U.T @ u0,
        slope=1.0,
        pattern=s,
        nondegeneracy=NondegeneracyVerdict(status="not-applicable", reason="case1 direction"),
        quadrants={"plus": quadrant_of(math.inf, "plus"), "minus": quadrant_of(math.inf, "minus")},
        residual=0.0,
    )


def _branch_coefficients(V, xi, tauvec, sigma, wstar, ug, Uperp):
    """Coefficient blocks of the branch system E(eta, d) = 0.

    E = a + eta*b + eta^2*g + (C + eta*D) d, with the branch linearization
    |u1_i| -> tau_i * u1_i on the zero set of u0.
    """
    phi = lambda x: xi * x + sigma * tauvec * x
    a = V.T @ phi(wstar)
    b = V.T @ phi(ug) + V.T @ wstar
    g = V.T @ ug
    if Uperp.shape[1]:
        C = V.T @ (xi[:, None] * Uperp + sigma * tauvec[:, None] * Uperp)
        D = V.T @ Uperp
    else:
        C = np.zeros((len(a), 0))
        D = np.zeros((len(a), 0))
    return a, b, g, C, D


def _quadratic_roots(g: float, b: float, a: float) -> list[float]:
    scale = max(abs(g), abs(b), abs(a))
    if scale == 0.0:
        return []
    if abs(g) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            return []
        return [-a / b]
    disc = b * b - 4.0 * g * a
    if disc < 0.0:
        return []
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b if b != 0.0 else 1.0))
    roots = []
    if q != 0.0:
        roots.append(q / g)
        roots.append(a / q)
    else:
        roots.extend([0.0, -b / g])
    return roots


def _newton_roots(a, b, g, C, D, tol: Tolerances) -> list[np.ndarray]:
    """Damped Newton from a deterministic lattice over (eta, d)."""
    p = len(a)
    q = C.shape[1]
    coefscale = max(
        float(np.linalg.norm(a)),
        float(np.linalg.norm(b)),
        float(np.linalg.norm(g)),
        float(np.linalg.norm(C)) if C.size else 0.0,
        float(np.linalg.norm(D)) if D.size else 0.0,
        1e-30,
    )

    def F(x):
        eta, d = x[0], x[1:]
        return a + eta * b + eta * eta * g + (C + eta * D) @ d

    def J(x):
        eta, d = x[0], x[1:]
        out = np.empty((p, 1 + q))
        out[:, 0] = b + 2.0 * eta * g + D @ d
        out[:, 1:] = C + eta * D
        return out

    spacing = 0.5
    while (2 * LATTICE_BOUND / spacing + 1) ** (1 + q) > 20000:
        spacing *= 2.0
    axis = np.arange(-LATTICE_BOUND, LATTICE_BOUND + 1e-9, spacing)
    roots: list[np.ndarray] = []
    for start in itertools.product(axis, repeat=1 + q):
        x = np.array(start)
        fx = F(x)
        nf = np.linalg.norm(fx)
        converged = nf <= 1e-13 * coefscale
        for _ in range(NEWTON_MAX_ITER):
            if converged:
                break
            try:
                delta = np.linalg.lstsq(J(x), -fx, rcond=None)[0]
            except np.linalg.LinAlgError:
                break
            step = 1.0
            while step >= 1.0 / 64.0:
                x_new = x + step * delta
                f_new = F(x_new)
                if np.linalg.norm(f_new) < (1.0 - 1e-4 * step) * nf:
                    break
                step /= 2.0
            else:
                break
            x, fx = x_new, f_new
            nf = np.linalg.norm(fx)
            converged = nf <= 1e-13 * coefscale
        if converged and not any(np.linalg.norm(x - r) <= tol.dedup for r in roots):
            roots.append(x)
    return roots


def _consistent_region_nonempty(zero_idx, tauvec, wstar, ug, Uperp, tol) -> bool:
    """An identically-zero branch only degenerates the side when it admits a
    whole interval of branch-consistent eta (not just an isolated point)."""
    etas = np.linspace(-LATTICE_BOUND, LATTICE_BOUND, 201)
    u1 = wstar[None, :] + etas[:, None] * ug[None, :]
    ok = np.all(tauvec[zero_idx] * u1[:, zero_idx] >= -tol.sign, axis=1)
    return int(np.count_nonzero(ok)) >= 2


def one_sided_tangents(A, lam: float, u0, tol: Tolerances | None = None) -> OneSidedTangents:
    """Per-side admissible eta limits for a case2 kernel direction.

    Returns entries sorted by (side, eta).  When both side systems
    degenerate identically on consistent regions, the class is escalated to
    inconclusive and the entry lists stay empty.
    """
    A = as_matrix(A)
    tol = tol or Tolerances()
    cls = classify(A, lam, u0, tol)
    if cls.tag != "case2":
        raise WrongClassError(f"one_sided_tangents needs class case2, got {cls.tag!r}")
    u0 = np.asarray(u0, dtype=float)
    u0 = u0 / np.linalg.norm(u0)
    U, V = kernel_pair(A, lam, tol)
    p = U.shape[1]
    wstar = restricted_solve(A, lam, np.abs(u0), tol)
    ug = restricted_solve(A, lam, u0, tol)
    Uperp = orthonormal_complement_in(U, u0) if p > 1 else np.zeros((A.shape[0], 0))
    xi = sign_vector(u0, tol)
    zero_idx = np.flatnonzero(np.abs(u0) <= tol.sign)
    deg_cut = DEGENERACY_FACTOR * tol.residual

    sides: dict[str, list[tuple[float, np.ndarray]]] = {"plus": [], "minus": []}
    degenerate_sides: list[str] = []

    for sigma, side in ((1.0, "plus"), (-1.0, "minus")):
        side_degenerate = False
        accepted: list[tuple[float, np.ndarray]] = []
        for taus in itertools.product((1.0, -1.0), repeat=len(zero_idx)):
            tauvec = np.zeros(A.shape[0])
            tauvec[zero_idx] = taus
            a, b, g, C, D = _branch_coefficients(V, xi, tauvec, sigma, wstar, ug, Uperp)
            coefnorm = max(
                float(np.linalg.norm(a)),
                float(np.linalg.norm(b)),
                float(np.linalg.norm(g)),
                float(np.linalg.norm(C)) if C.size else 0.0,
                float(np.linalg.norm(D)) if D.size else 0.0,
            )
            if coefnorm <= deg_cut:
                if _consistent_region_nonempty(zero_idx, tauvec, wstar, ug, Uperp, tol):
                    side_degenerate = True
                continue
            if p == 1:
                sols = [np.array([eta]) for eta in _quadratic_roots(float(g[0]), float(b[0]), float(a[0]))]
            else:
                sols = _newton_roots(a, b, g, C, D, tol)
            for x in sols:
                eta, d = float(x[0]), np.asarray(x[1:])
                u1 = wstar + eta * ug + (Uperp @ d if d.size else 0.0)
                if len(zero_idx) and not np.all(tauvec[zero_idx] * u1[zero_idx] >= -tol.sign):
                    continue
                resid = _one_sided_residual(V, xi, zero_idx, sigma, u1, eta)
                if resid > 10.0 * tol.residual:
                    continue
                accepted.append((eta, d))
        if side_degenerate:
            degenerate_sides.append(side)
        # dedup across branches
        kept: list[tuple[float, np.ndarray]] = []
        for eta, d in sorted(accepted, key=lambda t: (t[0], tuple(np.round(t[1], 12)))):
            if not any(
                math.hypot(eta - e2, float(np.linalg.norm(d - d2))) <= tol.dedup for e2, d2 in kept
            ):
                kept.append((eta, d))
        sides[side] = kept

    if set(degenerate_sides) == {"plus", "minus"}:
        return OneSidedTangents(
            u0=u0,
            degeneracy=DegeneracyClass(tag="inconclusive", q_u0=cls.q_u0, q_abs_u0=cls.q_abs_u0),
            generalized_eigenvector=ug,
            plus=(),
            minus=(),
            degenerate_sides=tuple(degenerate_sides),
        )

    entries: dict[str, list[OneSidedEntry]] = {"plus": [], "minus": []}
    for side, sigma in (("plus", 1.0), ("minus", -1.0)):
        for eta, d in sides[side]:
            z0 = Uperp @ d if d.size else np.zeros_like(u0)
            u1 = wstar + eta * ug + z0
            entries[side].append(
                OneSidedEntry(
                    side=side,
                    eta0=eta,
                    z0=z0,
                    u1=u1,
                    slope=slope_from_eta(eta),
                    quadrants=quadrant_of(eta, side),
                    residual=_one_sided_residual(V, xi, zero_idx, sigma, u1, eta),
                )
            )
    return OneSidedTangents(
        u0=u0,
        degeneracy=cls,
        generalized_eigenvector=ug,
        plus=tuple(entries["plus"]),
        minus=tuple(entries["minus"]),
        degenerate_sides=tuple(degenerate_sides),
    )


def _one_sided_residual(V, xi, zero_idx, sigma, u1, eta) -> float:
    """Residual of the side condition with the corrector's true absolute
    values (not the branch linearization)."""
    xi0_abs = np.zeros_like(u1)
    xi0_abs[zero_idx] = np.abs(u1[zero_idx])
    vec = xi * u1 + sigma * xi0_abs + eta * u1
    return float(np.max(np.abs(V.T @ vec))) if V.size else 0.0
