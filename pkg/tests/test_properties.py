"""Property tests of the algebraic primitives and solver invariants.

Hypothesis drives the exact componentwise identities; seeded random
matrices drive the spectral-layer invariants.  The full cross-fixture
property sweep lives in the acceptance suite.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fucik import (
    Tolerances,
    pos_neg_parts,
    project_onto,
    restricted_solve,
    sign_matrices,
    spectral_data,
    tangent_directions,
)
from fucik.linalg import kernel_pair, matrix_scale

finite_vec = arrays(
    np.float64,
    st.integers(min_value=1, max_value=8),
    elements=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
)


@given(finite_vec)
def test_pos_neg_complementarity(u):
    up, um = pos_neg_parts(u)
    assert np.all(up * um == 0.0)
    assert np.array_equal(up - um, u)
    assert np.array_equal(up + um, np.abs(u))


@given(finite_vec)
def test_sign_matrix_identities(u):
    xi, xi0 = sign_matrices(u)
    xi_abs, _ = sign_matrices(np.abs(u))
    assert np.array_equal(xi0, np.eye(len(u)) - xi_abs)
    tol = Tolerances()
    kept = np.abs(u) > tol.sign
    assert np.allclose((xi @ u)[kept], np.abs(u)[kept])


@given(
    arrays(np.float64, (5, 2), elements=st.floats(min_value=-10, max_value=10)),
    arrays(np.float64, 5, elements=st.floats(min_value=-10, max_value=10)),
)
def test_projector_idempotent_symmetric(raw, x):
    q, _ = np.linalg.qr(raw + 1e-3 * np.eye(5, 2))
    p1 = project_onto(q, x)
    assert np.allclose(project_onto(q, p1), p1, atol=1e-9)
    y = np.linspace(-1.0, 1.0, 5)
    assert abs(p1 @ y - x @ project_onto(q, y)) <= 1e-8


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=0, max_value=10_000))
def test_spectral_invariants_random(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 4))
    sd = spectral_data(A)
    tol = Tolerances()
    scale = matrix_scale(A)
    total_alg = sum(e.algebraic_mult for e in sd.eigenvalues)
    assert total_alg <= 4
    for e in sd.eigenvalues:
        assert 1 <= e.geometric_mult <= e.algebraic_mult
        U, V = e.kernel_basis, e.adjoint_kernel_basis
        assert np.allclose(U.T @ U, np.eye(e.geometric_mult), atol=1e-9)
        assert np.allclose(V.T @ V, np.eye(e.geometric_mult), atol=1e-9)
        assert np.linalg.norm((A - e.value * np.eye(4)) @ U) <= tol.residual * scale
        assert np.linalg.norm((A.T - e.value * np.eye(4)) @ V) <= tol.residual * scale


@settings(deadline=None, max_examples=15)
@given(st.integers(min_value=0, max_value=10_000))
def test_restricted_solve_invariants_random(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 4))
    sd = spectral_data(A)
    if not sd.eigenvalues:
        return
    tol = Tolerances()
    scale = matrix_scale(A)
    e = sd.eigenvalues[0]
    lam = e.value
    U, V = kernel_pair(A, lam, tol)
    y = rng.standard_normal(4)
    y -= V @ (V.T @ y)  # force into the range
    x = restricted_solve(A, lam, y, tol)
    assert np.linalg.norm((A - lam * np.eye(4)) @ x - y) <= tol.residual * scale * (1 + np.linalg.norm(y))
    assert np.max(np.abs(U.T @ x)) <= 1e-8


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=0, max_value=10_000))
def test_tangent_invariants_random_symmetric(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 4))
    A = 0.5 * (A + A.T)
    sd = spectral_data(A)
    lam = sd.eigenvalues[0].value
    dirs = tangent_directions(A, lam)
    assert dirs
    _, V = kernel_pair(A, lam, Tolerances())
    for d in dirs:
        assert abs(np.linalg.norm(d.u0) - 1.0) <= 1e-9
        assert np.max(np.abs(V.T @ (np.abs(d.u0) + d.eta0 * d.u0))) <= 1e-8
        # symmetric specialization pins eta
        assert abs(d.eta0 + float(np.abs(d.u0) @ d.u0)) <= 1e-8
        # simple eigenvalue of a symmetric matrix always certifies
        if not d.continuum:
            assert d.nondegeneracy.status == "holds"


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=0, max_value=10_000))
def test_negation_closure_random(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 4))
    sd = spectral_data(A)
    for e in sd.eigenvalues:
        dirs = tangent_directions(A, e.value)
        for d in dirs:
            tol = 1e-5 if d.continuum else 1e-6
            assert any(
                max(abs(d2.eta0 + d.eta0), float(np.linalg.norm(d2.u0 + d.u0))) <= tol
                for d2 in dirs
            )
