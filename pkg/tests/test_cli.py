"""
Testes da interface de linha de comando.
"""
import json
import sys
from pathlib import Path

import pytest

# main.py fica na raiz do repositório
sys.path.insert(0, str(Path(__file__).parent.parent))

import main
from src.utils.file_handler import dump_json


@pytest.fixture
def simulated(tmp_path):
    """Séries e histórico gerados pelo subcomando simulate."""
    code = main.main([
        "simulate", "--out", str(tmp_path), "--seed", "3",
        "--true-droop", "2.0", "--noise", "0", "--history-rows", "200",
    ])
    assert code == 0
    return tmp_path


class TestSimulate:
    """Testes do subcomando simulate."""

    def test_files_written(self, simulated):
        for name in ("delta_f.csv", "delta_p.csv", "history.csv"):
            assert (simulated / name).is_file()
        assert (simulated / "delta_f.csv").read_text(encoding="utf-8").startswith("t,delta_f")

    def test_without_history(self, tmp_path):
        assert main.main(["simulate", "--out", str(tmp_path)]) == 0
        assert not (tmp_path / "history.csv").exists()


class TestPredict:
    """Testes dos subcomandos reconstruct e predict."""

    def test_reconstruct(self, simulated):
        out = simulated / "spectra.json"
        code = main.main([
            "reconstruct", str(simulated / "delta_f.csv"), str(simulated / "delta_p.csv"),
            "--grid", "100", "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["actual_droop"]["k"] == pytest.approx(2.0, abs=1e-2)
        assert len(report["nodes"]) == 101

    def test_predict_with_scenario(self, simulated):
        (simulated / "wing.csv").write_text("t,u,v\n1,0,1\n2,0,1\n3,0,1\n4,0,1\n", encoding="utf-8")
        scenario = simulated / "scenario.env"
        scenario.write_text(
            "wing = wing.csv\nhistory = history.csv\nintercept_only = true\n",
            encoding="utf-8",
        )
        out = simulated / "report.json"
        code = main.main([
            "predict", str(simulated / "delta_f.csv"), str(simulated / "delta_p.csv"),
            "--config", str(scenario), "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert set(report) >= {"actual_droop", "expected_droops", "paths", "totals", "config_echo"}
        assert report["paths"]["correlation"]["status"] == "ok"
        assert report["totals"]["L_d"] is not None

    def test_predict_missing_inputs_still_reports(self, simulated):
        out = simulated / "report.json"
        code = main.main([
            "predict", str(simulated / "delta_f.csv"), str(simulated / "delta_p.csv"),
            "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["paths"]["resonance"]["status"] == "MissingInput"
        assert report["totals"]["L_m"] is None

    def test_missing_series(self, tmp_path):
        code = main.main(["predict", str(tmp_path / "a.csv"), str(tmp_path / "b.csv")])
        assert code == 1

    def test_non_numeric_series(self, simulated, capsys):
        bad = simulated / "bad_f.csv"
        bad.write_text("t,delta_f\n1,0.0\n2,abc\n", encoding="utf-8")
        code = main.main(["predict", str(bad), str(simulated / "delta_p.csv")])
        assert code == 1
        assert "InvalidInput" in capsys.readouterr().out

    def test_report_matches_serializer(self, simulated):
        out = simulated / "report.json"
        assert main.main([
            "predict", str(simulated / "delta_f.csv"), str(simulated / "delta_p.csv"), "--out", str(out),
        ]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert out.read_text(encoding="utf-8") == dump_json(report)

    def test_bad_config(self, simulated):
        scenario = simulated / "bad.env"
        scenario.write_text("grid = 2\n", encoding="utf-8")
        code = main.main([
            "predict", str(simulated / "delta_f.csv"), str(simulated / "delta_p.csv"),
            "--config", str(scenario),
        ])
        assert code == 2


class TestFitPoisson:
    """Testes do subcomando fit-poisson."""

    def test_fit(self, simulated):
        out = simulated / "model.json"
        code = main.main(["fit-poisson", str(simulated / "history.csv"), "--out", str(out)])
        assert code == 0
        model = json.loads(out.read_text(encoding="utf-8"))
        assert len(model["beta"]) == 5
        assert model["rows"] == 200
        assert len(model["source_sha256"]) == 64

    def test_intercept_only(self, simulated):
        out = simulated / "model.json"
        code = main.main([
            "fit-poisson", str(simulated / "history.csv"), "--intercept-only", "--out", str(out),
        ])
        assert code == 0
        model = json.loads(out.read_text(encoding="utf-8"))
        assert model["intercept_only"] is True
        assert model["beta"][1:] == [0.0, 0.0, 0.0, 0.0]


class TestCheck:
    """Testes do subcomando check."""

    def test_check(self):
        assert main.main(["check"]) == 0

    def test_command_required(self):
        with pytest.raises(SystemExit):
            main.main([])
