import csv
import io
import json

import numpy as np
import pytest
from scipy.integrate import simpson

from x1pot import cli, models


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestSpectrum:
    def test_oscillator_rows(self, capsys):
        code, out = run(capsys, "spectrum", "--family", "oscillator", "--omega", "1", "--l", "0", "--nu-max", "3")
        assert code == 0
        r = rows(out.out)
        assert [float(x["E_analytic"]) for x in r] == [1.5, 3.5, 5.5, 7.5]
        assert all(float(x["abs_diff"]) <= 1e-4 for x in r)

    def test_scarf_json(self, capsys, tmp_path):
        path = tmp_path / "s.json"
        code, _ = run(capsys, "spectrum", "--family", "scarf", "--A", "3", "--B", "1", "--nu-max", "2", "--json", "--out", str(path))
        assert code == 0
        report = json.loads(path.read_text())
        assert report["schema_version"] == 1 and report["passed"]
        assert [r["E_analytic"] for r in report["rows"]] == [9, 16, 25]
        assert report["params"] == {"A": 3.0, "B": 1.0}

    def test_tight_tolerance_fails(self, capsys):
        code, _ = run(capsys, "spectrum", "--family", "scarf", "--A", "3", "--B", "1", "--nu-max", "1", "--n", "200", "--tol", "1e-12")
        assert code == 1

    @pytest.mark.parametrize(
        "argv",
        [
            ["--family", "scarf", "--A", "3", "--B", "2.5"],
            ["--family", "scarf", "--A", "3"],
            ["--family", "oscillator", "--omega", "-1"],
            ["--family", "oscillator", "--nu-max", "-1"],
            ["--family", "cubic"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            cli.main(["spectrum", *argv])
        assert exc.value.code == 2


class TestSample:
    def test_columns_and_precision(self, capsys):
        code, out = run(capsys, "sample", "--family", "oscillator", "--nu", "1", "--points", "11", "--factored")
        assert code == 0
        r = rows(out.out)
        assert list(r[0]) == ["x", "psi", "phi", "psi10"] and len(r) == 11
        p = models.OscillatorParams()
        for row in r:
            x = float(row["x"])
            # 17 significant digits round-trip exactly
            assert float(row["psi"]) == models.psi(p, 1, x)
        assert r[0]["psi"] == "0"

    def test_normalized(self, capsys):
        code, out = run(capsys, "sample", "--family", "scarf", "--A", "4", "--B", "1.5", "--nu", "2", "--points", "2001", "--normalized")
        r = rows(out.out)
        xs = np.array([float(x["x"]) for x in r])
        ys = np.array([float(x["psi"]) for x in r])
        assert simpson(ys**2, x=xs) == pytest.approx(1.0, abs=1e-10)

    def test_bad_points(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["sample", "--family", "oscillator", "--points", "2"])
        assert exc.value.code == 2


class TestPartner:
    def test_columns(self, capsys):
        code, out = run(capsys, "partner", "--family", "scarf", "--A", "3", "--B", "1", "--points", "3")
        assert code == 0
        r = rows(out.out)
        assert list(r[0]) == ["x", "W", "W_prime", "V_plus", "V_minus"]
        mid = r[1]
        assert float(mid["x"]) == 0.0
        assert float(mid["W"]) == pytest.approx(-1 - 4 / 35, abs=1e-15)
        assert float(mid["V_plus"]) == pytest.approx(7.32, abs=1e-14)
        assert float(mid["V_minus"]) == pytest.approx(float(mid["V_plus"]) + 2 * float(mid["W_prime"]), abs=1e-13)


class TestVerify:
    def test_shape_invariance_only(self, capsys):
        code, out = run(capsys, "verify", "--only", "shape-invariance")
        assert code == 0
        assert "gap=2 " in out.out and "gap=4 " in out.out and "gap=7 " in out.out
        assert out.out.rstrip().endswith("(9 checks)")

    def test_json_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "v.json"
        code, _ = run(capsys, "verify", "--only", "point-value", "--only", "pct", "--json", "--out", str(path))
        summary = json.loads(path.read_text())
        assert code == 0 and summary["passed"] and summary["schema_version"] == 1
        for c in summary["checks"]:
            assert c["passed"] == (c["value"] <= c["tolerance"])

    def test_fault_injection_fails(self, capsys):
        code, out = run(capsys, "verify", "--only", "isospectrality", "--perturb-v2")
        assert code == 1
        assert "FAIL isospectrality" in out.out
        assert out.out.rstrip().endswith("(9 checks)")

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--only", "nope"])
        assert exc.value.code == 2

    def test_unwritable_output(self, capsys, tmp_path):
        code, out = run(capsys, "verify", "--only", "point-value", "--out", str(tmp_path / "missing" / "x.txt"))
        assert code == 1 and "cannot write" in out.err
