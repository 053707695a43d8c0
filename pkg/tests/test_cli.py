import json
import math

import numpy as np
import pytest

from fucik.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEigen:
    def test_a1(self, capsys):
        code, out, _ = run(capsys, "eigen", "--fixture", "A1")
        assert code == 0
        data = json.loads(out)
        got = [(e["value"], e["algebraic"], e["geometric"]) for e in data["eigenvalues"]]
        assert [(g[1], g[2]) for g in got] == [(1, 1), (2, 2)]
        assert np.allclose([g[0] for g in got], [0.0, 3.0], atol=1e-9)

    def test_a5_defect(self, capsys):
        code, out, _ = run(capsys, "eigen", "--fixture", "A5")
        data = json.loads(out)
        first = data["eigenvalues"][0]
        assert (first["algebraic"], first["geometric"]) == (2, 1)

    def test_one_by_one_file(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text('{"n": 1, "rows": [[7]]}')
        code, out, _ = run(capsys, "eigen", "--file", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["eigenvalues"] == [
            {
                "value": 7.0,
                "algebraic": 1,
                "geometric": 1,
                "kernel_basis": [[1.0]],
                "adjoint_kernel_basis": [[1.0]],
            }
        ]

    def test_text_format(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("2\n1 1\n2 2\n")
        code, out, _ = run(capsys, "eigen", "--file", str(path))
        assert code == 0
        vals = [e["value"] for e in json.loads(out)["eigenvalues"]]
        assert vals == [0.0, 3.0]


class TestTangents:
    def test_as3(self, capsys):
        code, out, _ = run(capsys, "tangents", "--fixture", "As3", "--lambda", "0")
        assert code == 0
        data = json.loads(out)
        etas = sorted({round(d["eta0"], 9) for d in data["directions"]})
        assert np.allclose(etas, [-2.0 / 3, -1.0 / 3, 0.0, 1.0 / 3, 2.0 / 3], atol=1e-8)
        slopes = sorted({d["slope"] for d in data["directions"]})
        assert np.allclose(slopes, [-5.0, -2.0, -1.0, -0.5, -0.2], atol=1e-8)

    def test_a5_one_sided(self, capsys):
        code, out, _ = run(capsys, "tangents", "--fixture", "A5", "--lambda", "0")
        assert code == 0
        data = json.loads(out)
        assert len(data["one_sided"]) == 2
        assert all(rec["class"] == "case2" for rec in data["one_sided"])
        etas = set()
        for rec in data["one_sided"]:
            for e in rec["entries"]:
                etas.add((e["side"], round(e["eta0"], 6)))
        assert ("plus", round(-1.0 / 3.0, 6)) in etas
        assert ("minus", 1.0) in etas

    def test_a4_inconclusive(self, capsys):
        code, out, _ = run(capsys, "tangents", "--fixture", "A4", "--lambda", "0")
        data = json.loads(out)
        assert all(rec["class"] == "inconclusive" for rec in data["one_sided"])
        assert data["one_sided"]

    def test_infinite_slope_serialization(self, capsys):
        code, out, _ = run(capsys, "tangents", "--fixture", "A1", "--lambda", "0")
        data = json.loads(out)
        assert "inf" in {d["slope"] for d in data["directions"]}

    def test_non_eigenvalue_exit_3(self, capsys):
        code, _, err = run(capsys, "tangents", "--fixture", "A1", "--lambda", "0.5")
        assert code == 3
        assert "error" in err

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "tangents", "--fixture", "A2", "--lambda", "1")
        _, out2, _ = run(capsys, "tangents", "--fixture", "A2", "--lambda", "1")
        assert out1 == out2

    def test_json_file(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, _ = run(
            capsys, "tangents", "--fixture", "A2", "--lambda", "1", "--json", str(path)
        )
        assert code == 0 and out == ""
        data = json.loads(path.read_text())
        assert {round(d["eta0"], 6) for d in data["directions"]} == {-3.0, 3.0}


class TestTrace:
    def test_csv_and_svg(self, capsys, tmp_path):
        csv = tmp_path / "a1.csv"
        svg = tmp_path / "a1.svg"
        code, _, err = run(
            capsys,
            "trace", "--fixture", "A1",
            "--window", "-1", "6", "-1", "6",
            "--grid", "80",
            "--csv", str(csv), "--svg", str(svg),
        )
        assert code == 0
        header = csv.read_text().splitlines()[0]
        assert header == "alpha,beta,pattern,residual,u_1,u_2,u_3"
        body = svg.read_text()
        assert body.count("<polyline") >= 4  # the four published curves
        assert "traced" in err

    def test_csv_stdout(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--fixture", "A2", "--window", "-2", "4", "-2", "4", "--grid", "40"
        )
        assert code == 0
        assert out.startswith("alpha,beta,pattern,residual")

    def test_capacity_exit_4(self, capsys, tmp_path):
        path = tmp_path / "big.json"
        n = 13
        path.write_text(json.dumps({"n": n, "rows": np.eye(n).tolist()}))
        code, _, err = run(
            capsys, "trace", "--file", str(path), "--window", "0", "1", "0", "1", "--grid", "10"
        )
        assert code == 4


class TestErrors:
    def test_unknown_fixture_exit_2(self, capsys):
        code, _, err = run(capsys, "eigen", "--fixture", "A99")
        assert code == 2

    def test_bad_file_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n1 2\n")
        code, _, _ = run(capsys, "eigen", "--file", str(path))
        assert code == 2

    def test_missing_source_exit_2(self, capsys):
        code, _, _ = run(capsys, "eigen")
        assert code == 2

    def test_both_sources_exit_2(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("1\n7\n")
        code, _, _ = run(capsys, "eigen", "--fixture", "A1", "--file", str(path))
        assert code == 2


class TestVerify:
    def test_as4(self, capsys):
        code, out, _ = run(capsys, "verify", "As4")
        assert code == 0
        assert "checks passed" in out

    def test_a1(self, capsys):
        code, out, _ = run(capsys, "verify", "A1")
        assert code == 0

    def test_a6_figure_only(self, capsys):
        code, out, _ = run(capsys, "verify", "A6")
        assert code == 0
        assert "figure-only" in out

    def test_unknown_exit_2(self, capsys):
        code, _, _ = run(capsys, "verify", "A17")
        assert code == 2

    def test_failure_exit_5(self, capsys, monkeypatch):
        import fucik.fixtures
        import fucik.verify

        real = fucik.fixtures.get_fixture("A2")
        tampered = fucik.fixtures.Fixture(
            name="A2",
            matrix=real.matrix,
            expected={"tangents": {1.0: {"etas": [0.5, -0.5], "slopes": [1.0, 2.0]}}},
        )
        monkeypatch.setattr(fucik.verify, "get_fixture", lambda name: tampered)
        code, out, _ = run(capsys, "verify", "A2")
        assert code == 5
        assert "FAIL" in out
