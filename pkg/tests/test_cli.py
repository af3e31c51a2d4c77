from __future__ import annotations

import pytest

from opnumlab.cli import main


@pytest.fixture(autouse=True)
def _isolated_home(monkeypatch, tmp_path) -> None:
    monkeypatch.setenv("OPNUM_HOME", str(tmp_path / "home"))
    monkeypatch.setenv("OPNUM_THREADS", "1")


def test_list_shows_registered_experiments(capsys) -> None:
    assert main(["list"]) == 0
    output = capsys.readouterr().out
    assert "Registered experiments (12):" in output
    assert "diag-seminal" in output
    assert "beta-vs-gamma" in output


def test_show_prints_defaults(capsys) -> None:
    assert main(["show", "chobou"]) == 0
    output = capsys.readouterr().out
    assert output.startswith("chobou: ")
    assert "  theta = 0.5" in output
    assert main(["show", "missing"]) == 2


def test_run_writes_artifacts(tmp_path, capsys) -> None:
    out = tmp_path / "runs"
    code = main(["run", "capacity-table", "--param", "radii=(1/e,1/e)", "--out", str(out)])
    assert code == 0
    output = capsys.readouterr().out
    assert "Experiment 'capacity-table' finished" in output
    for name in ("results.csv", "results.json", "manifest.json"):
        assert (out / "capacity-table" / name).exists()
        assert f"  Wrote {name}" in output


def test_run_reports_bad_parameters(tmp_path, capsys) -> None:
    out = tmp_path / "runs"
    assert main(["run", "capacity-table", "--param", "radius=0.5", "--out", str(out)]) == 2
    output = capsys.readouterr().out
    assert output.startswith("Error: ")
    assert (out / "capacity-table" / "error.json").exists()
    assert main(["run", "capacity-table", "--param", "radii", "--out", str(out)]) == 2


def test_run_rejects_unknown_formats(tmp_path, capsys) -> None:
    assert main(["run", "capacity-table", "--format", "xml", "--out", str(tmp_path)]) == 2
    assert "Unsupported output formats" in capsys.readouterr().out


def test_config_file_caps_the_truncation(tmp_path, capsys) -> None:
    config = tmp_path / "lab.yaml"
    config.write_text("n_max: 32\n", encoding="utf-8")
    out = tmp_path / "runs"
    assert main(["run", "diag-seminal", "--config", str(config), "--out", str(out)]) == 2
    assert "error.json" in capsys.readouterr().out
    assert (out / "diag-seminal" / "error.json").exists()
