import csv
import hashlib
import io
import json
import math

import pytest

from rindler_kit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


class TestConfig:
    def test_defaults(self):
        cfg = cli.resolve_config(["verify"])
        assert cfg == cli.RunConfig(command="verify")
        assert len(cfg.kernels()) == 4

    def test_three_layer_precedence(self, tmp_path):
        f = tmp_path / "run.cfg"
        f.write_text("# sample\na = 0.25,0.5\nq = 2.5\nformat = json\nnu-grid = 0.1,0.2\n")
        cfg = cli.resolve_config(["spectrum", "--config", str(f), "--q", "-1"])
        assert cfg.a == "0.25,0.5"            # file beats default
        assert cfg.format == "json"
        assert cfg.nu_grid == "0.1,0.2"
        assert cfg.q == -1.0                  # flag beats file
        assert cfg.tol == cli.RunConfig().tol  # default survives

    def test_bad_file_key(self, tmp_path, capsys):
        f = tmp_path / "bad.cfg"
        f.write_text("nonsense = 1\n")
        code, _, err = run(capsys, "spectrum", "--config", str(f))
        assert code == 2 and "unknown config key" in err

    def test_unknown_flag_is_config_error(self, capsys):
        code, _, _ = run(capsys, "spectrum", "--bogus")
        assert code == 2

    def test_range_grid(self):
        assert cli._parse_list("0:1:5", "a") == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_repeatable_kernel(self):
        cfg = cli.resolve_config(["response", "--kernel", "powerexp:1,1,1", "--kernel", "oscillator:1,1,1"])
        assert len(cfg.kernels()) == 2

    def test_tolerance_flag(self):
        q = cli.resolve_config(["verify", "--tol", "1e-10"]).quadrature()
        assert q.rel_tol == 1e-10 and q.abs_tol == pytest.approx(1e-12)


class TestSpectrum:
    def test_fitted_slope(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--a", "1", "--format", "json", "--nu-grid", "0.05:2:40", "--packet-width", "0.05")
        assert code == 0
        doc = json.loads(out)
        assert doc["fit"]["1.0"]["slope"] == pytest.approx(2 * math.pi, rel=1e-3)
        assert doc["fit"]["1.0"]["temperature"] == pytest.approx(1 / (2 * math.pi), rel=1e-3)

    def test_columns_and_ratio(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--a", "2", "--nu-grid", "0.1,0.5,1")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 3
        assert {"nu", "omega", "n_analytic", "n_smeared", "n_smeared_err", "ratio"} <= set(rows[0])
        assert float(rows[1]["omega"]) == pytest.approx(1.0)
        ratios = [float(r["ratio"]) for r in rows]
        assert max(ratios) / min(ratios) - 1 < 0.02

    def test_empty_grid(self, capsys):
        code, _, err = run(capsys, "spectrum", "--nu-grid", "0.05:2:0")
        assert code == 2 and "empty" in err

    def test_json_round_trip(self, capsys, tmp_path):
        out = tmp_path / "s.json"
        code, _, _ = run(capsys, "spectrum", "--a", "1", "--nu-grid", "0.3,0.6", "--format", "json", "--out", str(out))
        doc = json.loads(out.read_text())
        assert code == 0
        assert set(doc) == {"config", "rows", "fit"}
        assert cli.RunConfig(**doc["config"]).nu_grid == "0.3,0.6"
        assert json.loads(json.dumps(doc)) == doc
        assert [r["nu"] for r in doc["rows"]] == [0.3, 0.6]

    def test_csv_header_records_config(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--a", "1", "--nu-grid", "0.5")
        header = [line for line in out.splitlines() if line.startswith("# ")]
        assert "# a=1" in header and "# nu_grid=0.5" in header


class TestResponse:
    def test_zero_acceleration_uses_rindler(self, capsys):
        code, out, _ = run(capsys, "response", "--a", "0", "--kernel", "powerexp:1,1,1", "--q", str(math.pi))
        rows = csv_rows(out)
        assert code == 0 and [r["route"] for r in rows] == ["rindler"]
        assert float(rows[0]["value"]) == pytest.approx(1.0, abs=1e-8)

    def test_route_agreement(self, capsys):
        code, out, _ = run(capsys, "response", "--a", "0.5,1", "--kernel", "oscillator:1,2,0.5", "--route", "all")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 8
        assert all(r["routes_agree"] == "true" and r["status"] == "ok" for r in rows)

    def test_abrupt_kernel_error_row(self, capsys):
        code, out, _ = run(capsys, "response", "--a", "1", "--kernel", "abrupt:1", "--route", "time")
        rows = csv_rows(out)
        assert code == 0
        assert rows[0]["status"].startswith("error:") and rows[0]["value"] == ""
        code, _, _ = run(capsys, "response", "--a", "1", "--kernel", "abrupt:1", "--route", "time", "--strict")
        assert code == 3

    def test_bad_kernel_spec(self, capsys):
        code, _, _ = run(capsys, "response", "--kernel", "powerexp:1")
        assert code == 2


class TestForce:
    def test_linear_sweep(self, capsys):
        code, out, _ = run(capsys, "force", "--a", "0.1:2:8")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 32
        for kernel in {r["kernel"] for r in rows}:
            col = [float(r["F_over_a"]) for r in rows if r["kernel"] == kernel]
            assert (max(col) - min(col)) / abs(col[0]) < 1e-8
        assert max(float(r["residual"]) / abs(float(r["F_closed"])) for r in rows) < 1e-10

    def test_rindler_vacuum_zero(self, capsys):
        code, out, _ = run(capsys, "force", "--a", "0.5,1", "--vacuum", "rindler")
        rows = csv_rows(out)
        assert code == 0 and all(float(r["F_quadrature"]) == 0.0 for r in rows)

    def test_charge_sign_flip(self, capsys):
        _, plus, _ = run(capsys, "force", "--a", "1", "--kernel", "oscillator:1,2,0.5", "--q", "2")
        _, minus, _ = run(capsys, "force", "--a", "1", "--kernel", "oscillator:1,2,0.5", "--q", "-2")
        assert float(csv_rows(plus)[0]["F_quadrature"]) == -float(csv_rows(minus)[0]["F_quadrature"])


class TestVerify:
    def test_filter(self, capsys, tmp_path):
        out = tmp_path / "v.json"
        code, _, err = run(capsys, "verify", "--filter", "gamma", "--out", str(out))
        doc = json.loads(out.read_text())
        assert code == 0 and doc["passed"]
        assert {c["group"] for c in doc["checks"]} == {"gamma"}
        assert err.count("PASS") == 3


class TestSweep:
    ARGS = ("sweep", "--a", "0.2:2:10")

    @staticmethod
    def digest(path):
        return hashlib.sha256(path.read_bytes()).hexdigest()

    def test_row_count_and_order(self, capsys, tmp_path):
        code, _, _ = run(capsys, *self.ARGS, "--out", str(tmp_path))
        rows = csv_rows((tmp_path / "sweep.csv").read_text())
        assert code == 0 and len(rows) == 200
        keys = [(r["kernel"], float(r["a"]), r["observable"]) for r in rows]
        assert keys == sorted(keys)

    def test_rerun_identical(self, capsys, tmp_path):
        run(capsys, *self.ARGS, "--out", str(tmp_path / "one"), "--jobs", "4")
        run(capsys, *self.ARGS, "--out", str(tmp_path / "two"), "--jobs", "1")
        assert self.digest(tmp_path / "one" / "sweep.csv") == self.digest(tmp_path / "two" / "sweep.csv")

    def test_resume(self, capsys, tmp_path):
        run(capsys, *self.ARGS, "--out", str(tmp_path))
        ref = self.digest(tmp_path / "sweep.csv")
        (tmp_path / "part-0001.csv").unlink()
        (tmp_path / "sweep.csv").unlink()
        code, _, _ = run(capsys, *self.ARGS, "--out", str(tmp_path), "--skip-existing")
        assert code == 0 and self.digest(tmp_path / "sweep.csv") == ref

    def test_size_cap(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--a", "0.1:1:6000", "--out", str(tmp_path))
        assert code == 2 and "cap" in err

    def test_needs_out(self, capsys):
        code, _, _ = run(capsys, "sweep")
        assert code == 2

    def test_json_mirror(self, capsys, tmp_path):
        run(capsys, "sweep", "--a", "1", "--kernel", "powerexp:1,1,1", "--format", "json", "--out", str(tmp_path))
        doc = json.loads((tmp_path / "sweep.json").read_text())
        assert len(doc["rows"]) == 5 and "out" not in doc["config"]

    def test_no_nan_cells(self, capsys, tmp_path):
        run(capsys, "sweep", "--a", "1", "--kernel", "abrupt:1", "--out", str(tmp_path))
        text = (tmp_path / "sweep.csv").read_text()
        assert "nan" not in text.lower()
        assert all(r["status"] == "ok" or r["value"] == "" for r in csv_rows(text))
