import json

import pytest

from dilatia.cli import build_parser, main


def test_parser_shot_list() -> None:
    args = build_parser().parse_args(["prep", "--shots", "64,256", "--exact"])
    assert args.shots == [64, 256]
    assert args.mode == "exact"


def test_prep_exact_run(tmp_path, capsys) -> None:
    code = main(["prep", "--exact", "--seed", "3", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "table1.csv").read_text().startswith("shots,mean_distance")
    assert json.loads((tmp_path / "run.json").read_text())["seed"] == 3
    out = capsys.readouterr().out
    assert f"wrote {tmp_path / 'table1.csv'}" in out


def test_damping_writes_figure(tmp_path) -> None:
    assert main(["damping", "--exact", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "fig5_damping.svg").read_text().lstrip().startswith("<?xml")


def test_config_file_and_flags(tmp_path) -> None:
    cfg = tmp_path / "dephasing.json"
    cfg.write_text(json.dumps({"experiment": "dephasing", "n_points": 3}))
    assert main(["dephasing", "--config", str(cfg), "--shots", "200", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "dephasing.csv").read_text().splitlines()
    assert len(lines) == 4
    assert json.loads((tmp_path / "run.json").read_text())["config"]["shots"] == [200]


def test_usage_errors_exit_2(tmp_path, capsys) -> None:
    assert main(["teleport"]) == 2
    assert main(["prep", "--shots", "ten"]) == 2
    assert main(["prep", "--config", str(tmp_path / "missing.json")]) == 2
    assert main(["decompose", "--out", str(tmp_path)]) == 2
    assert "dilatia:" in capsys.readouterr().err


def test_parse_error_exit_2(tmp_path, capsys) -> None:
    path = tmp_path / "m.txt"
    path.write_text("1 0\n0 abc\n")
    assert main(["decompose", "--input", str(path), "--out", str(tmp_path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_oversized_operator_exit_3(tmp_path) -> None:
    path = tmp_path / "big.txt"
    path.write_text("\n".join(" ".join(["0"] * 65) for _ in range(65)))
    assert main(["decompose", "--input", str(path), "--out", str(tmp_path)]) == 3


def test_contraction_violation_exit_4(tmp_path, capsys) -> None:
    path = tmp_path / "m.txt"
    path.write_text("2 0\n0 0\n")
    assert main(["decompose", "--input", str(path), "--out", str(tmp_path)]) == 4
    assert "ContractionError" in capsys.readouterr().err
    assert main(["decompose", "--input", str(path), "--out", str(tmp_path), "--auto-rescale", "--qasm"]) == 0
    assert (tmp_path / "decompose_M.qasm").exists()


def test_version(capsys) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("dilatia ")


@pytest.mark.slow
@pytest.mark.parametrize("experiment", ["prep", "dephasing", "damping"])
def test_full_default_runs(experiment, tmp_path) -> None:
    assert main([experiment, "--out", str(tmp_path)]) == 0
