import math

import numpy as np
import pytest

from fucik import (
    CapacityError,
    InvalidInputError,
    Tolerances,
    TraceWindow,
    numerical_slopes,
    residual,
    trace,
)
from fucik.tracer import csv_text, pattern_string, write_svg


def curve_value(curves, a, b):
    return min(
        abs(cab * a * b + ca * a + cb * b + c1) / (1.0 + abs(a) + abs(b) + abs(a * b))
        for cab, ca, cb, c1 in curves
    )


class TestWindow:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            TraceWindow(1.0, 0.0, 0.0, 1.0, 10)
        with pytest.raises(InvalidInputError):
            TraceWindow(0.0, 1.0, 0.0, 1.0, 1)


class TestResidual:
    def test_diagonal_eigenpair(self, A1):
        assert residual(A1, 0.0, 0.0, np.array([1.0, 1.0, 1.0])) <= 1e-14

    def test_eigenvector_at_3(self, A1):
        assert residual(A1, 3.0, 3.0, np.array([-1.0, 0.0, 1.0])) <= 1e-14

    def test_off_point_value(self, A1):
        # direct arithmetic oracle: u=[-1,0,1], alpha=3, beta=0:
        # A1 u = 3u, u+ = e3, so ||3u - 3e3|| / ||u|| = 3/sqrt(2)
        u = np.array([-1.0, 0.0, 1.0])
        oracle = np.linalg.norm(A1 @ u - 3.0 * np.maximum(u, 0)) / np.linalg.norm(u)
        got = residual(A1, 3.0, 0.0, u)
        assert abs(got - 3.0 / math.sqrt(2.0)) <= 1e-14
        assert abs(got - oracle) <= 1e-15

    def test_zero_vector(self, A1):
        with pytest.raises(InvalidInputError):
            residual(A1, 0.0, 0.0, np.zeros(3))


class TestCapacity:
    def test_cap(self):
        with pytest.raises(CapacityError):
            trace(np.eye(13), TraceWindow(0.0, 1.0, 0.0, 1.0, 10))


class TestDiagonalMatrix:
    """diag(1,2): the spectrum is the four lines alpha=1, beta=1, alpha=2,
    beta=2 restricted to consistent sign patterns (enumerated by hand: u=e1
    gives alpha=1 with free beta, u=-e1 gives beta=1, and e2 likewise)."""

    def test_lines(self):
        A = np.diag([1.0, 2.0])
        ps = trace(A, TraceWindow(0.0, 3.0, 0.0, 3.0, 120))
        assert ps.points
        for pt in ps.points:
            d = min(abs(pt.alpha - 1), abs(pt.beta - 1), abs(pt.alpha - 2), abs(pt.beta - 2))
            assert d <= 1e-8
        # all four lines are present
        for line in ("a1", "b1", "a2", "b2"):
            sel = {
                "a1": [p for p in ps.points if abs(p.alpha - 1) <= 1e-8],
                "b1": [p for p in ps.points if abs(p.beta - 1) <= 1e-8],
                "a2": [p for p in ps.points if abs(p.alpha - 2) <= 1e-8],
                "b2": [p for p in ps.points if abs(p.beta - 2) <= 1e-8],
            }[line]
            assert len(sel) >= 50

    def test_line_vectors(self):
        A = np.diag([1.0, 2.0])
        ps = trace(A, TraceWindow(0.0, 3.0, 0.0, 3.0, 120))
        for pt in ps.points:
            if abs(pt.alpha - 1) <= 1e-8 and abs(pt.beta - 1) > 1e-6 and abs(pt.beta - 2) > 1e-6:
                assert abs(abs(pt.u[0]) - 1.0) <= 1e-9  # u proportional to e1


class TestCurves:
    def test_a1(self, A1):
        fx_curves = [(0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0), (1.0, -2.0, -1.0, 0.0), (1.0, -1.0, -2.0, 0.0)]
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 150))
        scale = 1.0 + np.linalg.norm(A1, 2)
        for pt in ps.points:
            assert pt.residual <= 1e-9 * scale
            assert curve_value(fx_curves, pt.alpha, pt.beta) <= 1e-6

    def test_a2(self, A2):
        fx_curves = [(1.0, -2.0, 1.0, 0.0), (1.0, 1.0, -2.0, 0.0)]
        ps = trace(A2, TraceWindow(-2.0, 4.0, -2.0, 4.0, 150))
        for pt in ps.points:
            assert curve_value(fx_curves, pt.alpha, pt.beta) <= 1e-6

    def test_a1_vertical_line_pattern(self, A1):
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 150))
        on_axis = [p for p in ps.points if abs(p.alpha) <= 1e-9 and p.beta > 0.5]
        assert on_axis
        for pt in on_axis:
            assert pattern_string(pt.pattern) == "+++"
            assert np.allclose(np.abs(pt.u), 1.0 / math.sqrt(3.0), atol=1e-9)


class TestReflection:
    def test_pointwise(self, A2):
        ps = trace(A2, TraceWindow(-2.0, 4.0, -2.0, 4.0, 100))
        scale = 1.0 + np.linalg.norm(A2, 2)
        for pt in ps.points:
            assert residual(A2, pt.beta, pt.alpha, -pt.u) <= 10 * 1e-9 * scale

    def test_set_level(self, A2):
        ps = trace(A2, TraceWindow(-2.0, 4.0, -2.0, 4.0, 100))
        pts = np.array([[p.alpha, p.beta] for p in ps.points])
        mirror = pts[:, ::-1]
        for m in mirror:
            assert np.min(np.max(np.abs(pts - m), axis=1)) <= 1e-6


class TestBranches:
    def test_members_share_pattern(self, A1):
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 100))
        for br in ps.branches:
            pats = {pattern_string(ps.points[i].pattern) for i in br}
            assert len(pats) == 1
        assert sorted(i for br in ps.branches for i in br) == list(range(len(ps.points)))

    def test_adjacency(self, A1):
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 100))
        ha, hb = ps.window.alpha_step, ps.window.beta_step
        for br in ps.branches:
            for i, j in zip(br, br[1:]):
                p, q = ps.points[i], ps.points[j]
                d = math.hypot((p.alpha - q.alpha) / ha, (p.beta - q.beta) / hb)
                assert d <= 3.0 + 1e-9


class TestNumericalSlopes:
    def test_a1_near_3(self, A1):
        ps = trace(A1, TraceWindow(1.5, 4.5, 1.5, 4.5, 400))
        est = numerical_slopes(A1, 3.0, ps, 0.2)
        got = sorted({round(e.slope, 1) for e in est if e.points >= 3})
        assert got == [-2.0, -0.5]
        for e in est:
            if e.points >= 3:
                assert min(abs(e.slope + 0.5), abs(e.slope + 2.0)) <= 1e-2

    def test_a2_near_1(self, A2):
        ps = trace(A2, TraceWindow(-0.5, 2.5, -0.5, 2.5, 400))
        est = numerical_slopes(A2, 1.0, ps, 0.2)
        for want in (0.5, 2.0):
            assert any(abs(e.slope - want) <= 1e-2 for e in est if e.points >= 3)

    def test_empty_when_far(self, A1):
        ps = trace(A1, TraceWindow(-0.9, -0.1, -0.9, -0.1, 50))
        assert numerical_slopes(A1, 3.0, ps, 0.2) == []


class TestSerialization:
    def test_csv(self, A1, tmp_path):
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 60))
        text = csv_text(ps)
        lines = text.strip().split("\n")
        assert lines[0] == "alpha,beta,pattern,residual,u_1,u_2,u_3"
        assert len(lines) == len(ps.points) + 1
        cells = lines[1].split(",")
        assert len(cells) == 7
        float(cells[0]), float(cells[1]), float(cells[3])

    def test_svg_deterministic(self, A1, tmp_path):
        ps = trace(A1, TraceWindow(-1.0, 6.0, -1.0, 6.0, 60))
        p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
        write_svg(ps, str(p1), tangents=[(3.0, -0.5), (3.0, -2.0), (0.0, math.inf)])
        write_svg(ps, str(p2), tangents=[(3.0, -0.5), (3.0, -2.0), (0.0, math.inf)])
        s1, s2 = p1.read_text(), p2.read_text()
        assert s1 == s2
        assert s1.count("<polyline") >= 4
        assert "</svg>" in s1


class TestKernelEquivalence:
    def test_point_sets_match(self, A2):
        w = TraceWindow(-2.0, 4.0, -2.0, 4.0, 90)
        key = lambda ps: sorted(
            (pattern_string(p.pattern), round(p.alpha, 6), round(p.beta, 6)) for p in ps.points
        )
        a = key(trace(A2, w, kernel="python"))
        try:
            b = key(trace(A2, w, kernel="compiled"))
        except ImportError:
            pytest.skip("compiled kernel not built")
        assert a == b
