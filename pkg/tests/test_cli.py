import pytest

from cmoead.cli import main


def test_problems_listing(capsys):
    assert main(["problems"]) == 0
    out = capsys.readouterr().out
    for name in ("osy", "tnk", "mcdtlz", "wb"):
        assert name in out


def test_run_writes_outputs(tmp_path, capsys):
    args = ["run", "--problem", "tnk", "--population", "10", "--generations", "3", "--neighborhood", "3"]
    assert main(args + ["--seed-list", "1,2", "--out", str(tmp_path)]) == 0
    assert "mean final HV" in capsys.readouterr().out
    assert (tmp_path / "history_tnk_cmoead-dma-lm_1.csv").exists()
    assert (tmp_path / "summary_tnk_cmoead-dma-lm.csv").exists()


def test_compare_prints_table(tmp_path, capsys):
    args = ["compare", "--problem", "wb", "--population", "10", "--generations", "2", "--neighborhood", "3"]
    assert main(args + ["--seeds", "2", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "cmoead-dma-lm" in out and "wilcoxon" in out


def test_missing_problem_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 2


def test_unknown_algorithm_rejected():
    with pytest.raises(SystemExit):
        main(["run", "--problem", "tnk", "--algorithm", "nsga2"])


def test_invalid_config_returns_2(capsys):
    assert main(["run", "--problem", "tnk", "--population", "5", "--neighborhood", "9"]) == 2
    assert "neighborhood" in capsys.readouterr().err


def test_validate_quick(capsys):
    assert main(["validate", "--quick"]) == 0
    assert capsys.readouterr().out.count("[PASS]") == 6
