"""Pure-numpy sweep kernel.

Fallback used when the compiled extension is unavailable or FUCIK_PURE=1 is
set.  Semantics must match fucik._sweep_cy exactly: for each value a of the
swept variable, the determinant det(A - a*Dfix - b*Droot) is interpolated as
a polynomial in the Chebyshev-scaled root variable b and its real roots
inside the padded window are returned as (sweep index, root) pairs.
"""

from __future__ import annotations

import numpy as np


def sweep_pattern(A, dfix, droot, values, lo, hi, pad, im_tol, trim_tol):
    A = np.ascontiguousarray(A, dtype=float)
    dfix = np.asarray(dfix, dtype=float)
    droot = np.asarray(droot, dtype=float)
    values = np.asarray(values, dtype=float)
    m = int(np.count_nonzero(droot))
    G = len(values)
    if m == 0 or G == 0:
        return np.empty(0, dtype=np.intp), np.empty(0)

    mid = 0.5 * (lo + hi)
    half = max(0.5 * (hi - lo), 1e-300)
    tnodes = np.cos(np.pi * (2.0 * np.arange(m + 1) + 1.0) / (2.0 * (m + 1)))
    bnodes = mid + half * tnodes

    stack = (
        A[None, None]
        - values[:, None, None, None] * np.diag(dfix)[None, None]
        - bnodes[None, :, None, None] * np.diag(droot)[None, None]
    )
    dets = np.linalg.det(stack)  # (G, m+1)

    vand = np.vander(tnodes, m + 1, increasing=True)
    coefs = np.linalg.solve(vand, dets.T).T  # ascending powers of t

    mx = np.max(np.abs(coefs), axis=1)
    tpad = 1.0 + pad / half
    out_i: list[np.ndarray] = []
    out_r: list[np.ndarray] = []

    # the common case, batched: full degree m with a solid leading coefficient
    nonzero = mx > 1e-300
    full = nonzero & (np.abs(coefs[:, m]) > trim_tol * mx)
    if np.any(full):
        monic = coefs[full] / coefs[full, m][:, None]
        B = int(full.sum())
        comp = np.zeros((B, m, m))
        if m > 1:
            ar = np.arange(m - 1)
            comp[:, ar + 1, ar] = 1.0
        comp[:, :, m - 1] = -monic[:, :m]
        ev = np.linalg.eigvals(comp)
        rows = np.flatnonzero(full)
        keep = (np.abs(ev.imag) <= im_tol * (1.0 + np.abs(ev.real))) & (np.abs(ev.real) <= tpad)
        idx_rows, _ = np.nonzero(keep)
        out_i.append(rows[idx_rows])
        out_r.append(mid + half * ev.real[keep])

    # degree dropped at this sweep value (leading minor vanished)
    for i in np.flatnonzero(nonzero & ~full):
        c = coefs[i]
        deg = m
        while deg > 0 and abs(c[deg]) <= trim_tol * mx[i]:
            deg -= 1
        if deg == 0:
            continue
        for r in np.roots(c[: deg + 1][::-1]):
            if abs(r.imag) <= im_tol * (1.0 + abs(r.real)) and abs(r.real) <= tpad:
                out_i.append(np.array([i], dtype=np.intp))
                out_r.append(np.array([mid + half * r.real]))

    if not out_i:
        return np.empty(0, dtype=np.intp), np.empty(0)
    idx = np.concatenate(out_i).astype(np.intp)
    roots = np.concatenate(out_r)
    order = np.lexsort((roots, idx))
    return idx[order], roots[order]
