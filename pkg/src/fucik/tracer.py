"""Brute-force tracing of the Fucik spectrum in an (alpha, beta) window.

For every sign pattern s in {-1,+1}^n the problem Au = alpha*u+ - beta*u-
restricted to the orthant of s is linear: with D+ = diag(max(s,0)) and
D- = diag(max(-s,0)) the points of the spectrum satisfy
det(A - alpha*D+ - beta*D-) = 0 with a kernel vector sign-consistent with
s.  The tracer sweeps a grid along one axis, extracts the real roots of the
determinant polynomial along the other (see fucik.kernels), Newton-polishes
each candidate against the smallest singular value, and keeps the points
whose kernel vector is consistent and whose equation residual passes.  The
sweep runs in both orientations so near-vertical branches are sampled too.

Output is a point cloud grouped into pattern-labelled polyline branches,
with CSV and SVG writers.  FUCIK_THREADS caps an optional thread pool over
the pattern sweeps; results are merged deterministically either way.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityError, InvalidInputError
from .linalg import HARD_CAP, Tolerances, as_matrix, matrix_scale
from .tangents import iter_patterns, pattern_consistent, pattern_string

#: window-margin fraction the root extraction is allowed to overshoot
_PAD_FRACTION = 0.02

#: normalized adjacency radius (in grid steps) for polyline assembly
_ADJACENCY = 3.0

#: secant fits steeper than this are reported as the vertical flag inf
LARGE_SLOPE = 100.0


@dataclass(frozen=True)
class TraceWindow:
    alpha_min: float
    alpha_max: float
    beta_min: float
    beta_max: float
    grid: int

    def __post_init__(self):
        if not (self.alpha_min < self.alpha_max and self.beta_min < self.beta_max):
            raise InvalidInputError("window must satisfy min < max on both axes")
        if self.grid < 2:
            raise InvalidInputError("grid must be at least 2")

    @property
    def alpha_step(self) -> float:
        return (self.alpha_max - self.alpha_min) / (self.grid - 1)

    @property
    def beta_step(self) -> float:
        return (self.beta_max - self.beta_min) / (self.grid - 1)


@dataclass(frozen=True)
class FucikPoint:
    alpha: float
    beta: float
    u: np.ndarray
    pattern: np.ndarray
    residual: float


@dataclass
class FucikPointSet:
    points: list[FucikPoint]
    branches: list[list[int]]
    window: TraceWindow


@dataclass(frozen=True)
class SlopeEstimate:
    slope: float  # math.inf flags a near-vertical branch
    side: str  # "plus" (alpha > lambda) | "minus" (alpha < lambda)
    branch: int
    points: int


def residual(A, alpha: float, beta: float, u) -> float:
    """Equation residual ||Au - alpha*u+ + beta*u-|| / ||u||."""
    A = as_matrix(A)
    u = np.asarray(u, dtype=float)
    nrm = float(np.linalg.norm(u))
    if nrm == 0.0:
        raise InvalidInputError("u must be nonzero")
    up = np.maximum(u, 0.0)
    um = np.maximum(-u, 0.0)
    return float(np.linalg.norm(A @ u - alpha * up + beta * um)) / nrm


def trace(A, window: TraceWindow, tol: Tolerances | None = None, kernel: str | None = None) -> FucikPointSet:
    """Sample the Fucik spectrum of A inside the window.

    Every emitted point carries a unit kernel vector, the sign pattern of
    its orthant, and an equation residual bounded by tol.residual*(1+||A||).
    """
    A = as_matrix(A)
    n = A.shape[0]
    if n > HARD_CAP:
        raise CapacityError(f"n={n} exceeds the enumeration cap {HARD_CAP}")
    tol = tol or Tolerances()
    scale = matrix_scale(A)
    sweep = kernels.get_sweep(kernel)

    tasks = []
    for swap in (False, True):
        if not swap:
            vals = np.linspace(window.alpha_min, window.alpha_max, window.grid)
            lo, hi = window.beta_min, window.beta_max
        else:
            vals = np.linspace(window.beta_min, window.beta_max, window.grid)
            lo, hi = window.alpha_min, window.alpha_max
        pad = _PAD_FRACTION * (hi - lo)
        for s in iter_patterns(n):
            dplus = np.maximum(s, 0.0)
            dminus = np.maximum(-s, 0.0)
            dfix, droot = (dplus, dminus) if not swap else (dminus, dplus)
            if not np.any(droot != 0.0):
                continue
            tasks.append((swap, s, dfix, droot, vals, lo, hi, pad))

    def run(task):
        swap, s, dfix, droot, vals, lo, hi, pad = task
        idx, roots = sweep(A, dfix, droot, vals, lo, hi, pad, 1e-6, 1e-10)
        return _accept_candidates(A, s, swap, vals[idx], roots, window, tol, scale)

    nthreads = max(1, int(os.environ.get("FUCIK_THREADS", "1")))
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            chunks = list(pool.map(run, tasks))
    else:
        chunks = [run(t) for t in tasks]

    points = [pt for chunk in chunks for pt in chunk]
    points = _dedup_points(points, window, tol)
    points.sort(key=lambda p: (pattern_string(p.pattern), p.alpha, p.beta))
    branches = _assemble_branches(points, window)
    return FucikPointSet(points=points, branches=branches, window=window)


def _accept_candidates(A, s, swap, fixed, roots, window, tol, scale):
    if len(fixed) == 0:
        return []
    alpha = fixed if not swap else roots
    beta = roots if not swap else fixed
    dplus = np.maximum(s, 0.0)
    dminus = np.maximum(-s, 0.0)
    droot = dminus if not swap else dplus  # diagonal of the polished coordinate

    out = []
    for a0, b0 in zip(alpha, beta):
        a, b = float(a0), float(b0)
        u = None
        for _ in range(6):
            M = A - a * np.diag(dplus) - b * np.diag(dminus)
            uu, sv, vt = np.linalg.svd(M)
            u, w, smin = vt[-1], uu[:, -1], sv[-1]
            if smin <= 1e-14 * scale:
                break
            den = float(w @ (droot * u))
            if abs(den) <= 1e-12:
                break
            step = float(w @ (M @ u)) / den
            if not swap:
                b += step
            else:
                a += step
            if abs(step) <= 1e-16 * (1.0 + abs(a) + abs(b)):
                break
        if u is None:
            continue
        if not (
            window.alpha_min - 1e-9 <= a <= window.alpha_max + 1e-9
            and window.beta_min - 1e-9 <= b <= window.beta_max + 1e-9
        ):
            continue
        # orient the kernel vector into the pattern's orthant
        if float(np.min(s * u)) < float(np.min(-s * u)):
            u = -u
        if not pattern_consistent(s, u, tol.sign):
            continue
        res = residual(A, a, b, u)
        if res > tol.residual * scale:
            continue
        out.append(FucikPoint(alpha=a, beta=b, u=u, pattern=s.copy(), residual=res))
    return out


def _dedup_points(points, window, tol):
    """Merge coincident points found through a pattern and its negation."""
    span = max(window.alpha_max - window.alpha_min, window.beta_max - window.beta_min, 1.0)
    dtol = tol.dedup * span

    def canon(s):
        return pattern_string(s if s[0] > 0 else -s)

    points = sorted(points, key=lambda p: (canon(p.pattern), p.alpha, p.beta))
    kept: list[FucikPoint] = []
    for pt in points:
        if kept:
            prev = kept[-1]
            if (
                canon(prev.pattern) == canon(pt.pattern)
                and abs(prev.alpha - pt.alpha) <= dtol
                and abs(prev.beta - pt.beta) <= dtol
            ):
                continue
        kept.append(pt)
    return kept


def _assemble_branches(points, window):
    """Group same-pattern points into polylines.

    Within a pattern the points are swept in (alpha, beta) order and each is
    attached to the nearest open strand whose endpoint is within the
    adjacency radius; several curves sharing one pattern therefore stay
    separate strands instead of fragmenting each other.
    """
    ha, hb = window.alpha_step, window.beta_step
    groups: dict[str, list[int]] = {}
    for i, pt in enumerate(points):
        groups.setdefault(pattern_string(pt.pattern), []).append(i)
    branches = []
    for key in sorted(groups):
        strands: list[list[int]] = []
        for i in groups[key]:  # already sorted by (alpha, beta)
            cur = points[i]
            best, best_d = None, _ADJACENCY
            for strand in strands:
                prev = points[strand[-1]]
                d = math.hypot((cur.alpha - prev.alpha) / ha, (cur.beta - prev.beta) / hb)
                if d <= best_d:
                    best, best_d = strand, d
            if best is None:
                strands.append([i])
            else:
                best.append(i)
        branches.extend(strands)
    return branches


def numerical_slopes(A, lam: float, point_set: FucikPointSet, radius: float) -> list[SlopeEstimate]:
    """Secant-slope estimates of the branches passing near (lam, lam).

    Points at distance within [radius/4, radius] of the diagonal point are
    fitted per branch and per side (alpha > lam vs alpha < lam) with a
    quadratic through the origin, which removes the leading curvature bias;
    fits steeper than LARGE_SLOPE are reported as the vertical flag inf.
    """
    out: list[SlopeEstimate] = []
    for bi, idxs in enumerate(point_set.branches):
        da, db = [], []
        for i in idxs:
            x = point_set.points[i].alpha - lam
            y = point_set.points[i].beta - lam
            r = math.hypot(x, y)
            if radius / 4.0 <= r <= radius:
                da.append(x)
                db.append(y)
        if not da:
            continue
        da = np.array(da)
        db = np.array(db)
        for side, sel in (("plus", da > 0.0), ("minus", da < 0.0)):
            if not np.any(sel):
                continue
            slope = _fit_slope(da[sel], db[sel])
            out.append(SlopeEstimate(slope=slope, side=side, branch=bi, points=int(sel.sum())))
    return out


def _fit_slope(da: np.ndarray, db: np.ndarray) -> float:
    if len(da) == 1:
        t = db[0] / da[0] if abs(da[0]) > 1e-300 else math.inf
        return math.inf if abs(t) >= LARGE_SLOPE else float(t)
    steep = np.median(np.abs(db)) > np.median(np.abs(da))
    x, y = (db, da) if steep else (da, db)
    basis = np.stack([x, x * x], axis=1)
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    t = float(coef[0])
    slope = (1.0 / t) if steep and t != 0.0 else (math.inf if steep else t)
    return math.inf if abs(slope) >= LARGE_SLOPE else float(slope)


# ---------------------------------------------------------------------------
# serialization

def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def csv_text(point_set: FucikPointSet) -> str:
    """Columns: alpha, beta, pattern, residual, u_1..u_n."""
    n = len(point_set.points[0].u) if point_set.points else 0
    header = ["alpha", "beta", "pattern", "residual"] + [f"u_{i + 1}" for i in range(n)]
    lines = [",".join(header)]
    for pt in point_set.points:
        row = [_fmt(pt.alpha), _fmt(pt.beta), pattern_string(pt.pattern), _fmt(pt.residual)]
        row += [_fmt(x) for x in pt.u]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_csv(point_set: FucikPointSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(csv_text(point_set))


def write_svg(point_set: FucikPointSet, path: str, tangents=None, size: int = 640) -> None:
    """One polyline per branch plus diagonal and optional tangent overlays.

    tangents is an iterable of (lam, slope) pairs; vertical tangents are
    passed as slope = math.inf.  Output is deterministic for fixed input.
    """
    w = point_set.window
    margin = 40.0
    inner = size - 2.0 * margin

    def X(a):
        return margin + (a - w.alpha_min) / (w.alpha_max - w.alpha_min) * inner

    def Y(b):
        return size - margin - (b - w.beta_min) / (w.beta_max - w.beta_min) * inner

    def fmt(v):
        return format(v, ".2f")

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<rect x="{fmt(margin)}" y="{fmt(margin)}" width="{fmt(inner)}" height="{fmt(inner)}" '
        'fill="none" stroke="#888" stroke-width="1"/>',
    ]
    # axes through the origin, when visible
    if w.alpha_min < 0.0 < w.alpha_max:
        parts.append(
            f'<line x1="{fmt(X(0))}" y1="{fmt(margin)}" x2="{fmt(X(0))}" y2="{fmt(size - margin)}" '
            'stroke="#ccc" stroke-width="1"/>'
        )
    if w.beta_min < 0.0 < w.beta_max:
        parts.append(
            f'<line x1="{fmt(margin)}" y1="{fmt(Y(0))}" x2="{fmt(size - margin)}" y2="{fmt(Y(0))}" '
            'stroke="#ccc" stroke-width="1"/>'
        )
    # the diagonal alpha = beta, clipped to the window
    lo = max(w.alpha_min, w.beta_min)
    hi = min(w.alpha_max, w.beta_max)
    if lo < hi:
        parts.append(
            f'<line x1="{fmt(X(lo))}" y1="{fmt(Y(lo))}" x2="{fmt(X(hi))}" y2="{fmt(Y(hi))}" '
            'stroke="#999" stroke-width="1" stroke-dasharray="6,4"/>'
        )
    for lam, slope in tangents or []:
        if math.isinf(slope):
            if w.alpha_min <= lam <= w.alpha_max:
                parts.append(
                    f'<line x1="{fmt(X(lam))}" y1="{fmt(margin)}" x2="{fmt(X(lam))}" '
                    f'y2="{fmt(size - margin)}" stroke="black" stroke-width="1"/>'
                )
            continue
        pts = []
        for a in (w.alpha_min, w.alpha_max):
            b = lam + slope * (a - lam)
            if w.beta_min - 1e-9 <= b <= w.beta_max + 1e-9:
                pts.append((a, b))
        if abs(slope) > 1e-12:
            for b in (w.beta_min, w.beta_max):
                a = lam + (b - lam) / slope
                if w.alpha_min - 1e-9 <= a <= w.alpha_max + 1e-9:
                    pts.append((a, b))
        pts = sorted(set((round(a, 12), round(b, 12)) for a, b in pts))
        if len(pts) >= 2:
            (a1, b1), (a2, b2) = pts[0], pts[-1]
            parts.append(
                f'<line x1="{fmt(X(a1))}" y1="{fmt(Y(b1))}" x2="{fmt(X(a2))}" y2="{fmt(Y(b2))}" '
                'stroke="black" stroke-width="1"/>'
            )
    for idxs in point_set.branches:
        if len(idxs) == 1:
            pt = point_set.points[idxs[0]]
            parts.append(
                f'<circle cx="{fmt(X(pt.alpha))}" cy="{fmt(Y(pt.beta))}" r="1.5" fill="#e07000"/>'
            )
            continue
        coords = " ".join(
            f"{fmt(X(point_set.points[i].alpha))},{fmt(Y(point_set.points[i].beta))}" for i in idxs
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#e07000" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
