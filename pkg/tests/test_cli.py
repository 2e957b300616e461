"""CLI behaviour: exit codes, output files, config precedence, determinism."""

import hashlib
import json

import pytest

from talbotlab import __version__
from talbotlab.cli import main


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_quantize_writes_csv_and_summary(tmp_path, capsys):
    code = run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3")
    assert code == 0
    out = capsys.readouterr().out
    assert "quantize: pass" in out
    assert "max_residual" in out
    csv_path = tmp_path / "quantize.csv"
    json_path = tmp_path / "quantize.json"
    assert csv_path.exists() and json_path.exists()
    assert csv_path.read_text().splitlines()[0] == "p,q,grid_size,residual"
    summary = json.loads(json_path.read_text())
    assert summary["subcommand"] == "quantize"
    assert summary["version"] == __version__
    assert summary["passed"] is True
    assert summary["config"]["m_max"] == 64
    assert summary["measured"]["max_residual"] < 1e-8
    assert summary["criteria"]["max_residual_lt"] == 1e-8


def test_config_hash_is_canonical_sha256(tmp_path):
    assert run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3") == 0
    summary = json.loads((tmp_path / "quantize.json").read_text())
    canonical = json.dumps(
        {"subcommand": "quantize", "seed": summary["seed"], **summary["config"]},
        sort_keys=True,
    )
    digest = hashlib.sha256(canonical.encode("ascii")).hexdigest()
    assert summary["config_hash"] == digest


def test_refuses_overwrite_without_force(tmp_path, capsys):
    assert run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3") == 0
    capsys.readouterr()
    assert run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3") == 2
    assert "refusing to overwrite" in capsys.readouterr().err
    assert run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3",
               "--force") == 0


def test_tolerance_failure_exits_one(tmp_path, capsys):
    code = run(tmp_path, "quantize", "--m-max", "64", "--q-max", "3",
               "--tol", "1e-22")
    assert code == 1
    assert "quantize: FAIL" in capsys.readouterr().out
    summary = json.loads((tmp_path / "quantize.json").read_text())
    assert summary["passed"] is False


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m_max": 64, "q_max": 5}))
    out_dir = tmp_path / "out"
    code = main(["quantize", "--config", str(cfg), "--q-max", "3",
                 "--out", str(out_dir)])
    assert code == 0
    summary = json.loads((out_dir / "quantize.json").read_text())
    assert summary["config"]["m_max"] == 64
    assert summary["config"]["q_max"] == 3


def test_config_seed_key_is_recorded(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m_max": 64, "q_max": 3, "seed": 7}))
    out_dir = tmp_path / "out"
    assert main(["quantize", "--config", str(cfg), "--out", str(out_dir)]) == 0
    summary = json.loads((out_dir / "quantize.json").read_text())
    assert summary["seed"] == 7


def test_unknown_config_key_is_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m_max": 64, "bogus_key": 1}))
    code = main(["quantize", "--config", str(cfg), "--out",
                 str(tmp_path / "out")])
    assert code == 2
    assert "unknown config keys" in capsys.readouterr().err


def test_unreadable_and_malformed_config(tmp_path, capsys):
    assert main(["quantize", "--config", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "o1")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2, 3]")
    assert main(["quantize", "--config", str(bad),
                 "--out", str(tmp_path / "o2")]) == 2
    err = capsys.readouterr().err
    assert "cannot read config" in err
    assert "config must be a JSON object" in err


def test_driver_value_error_exits_two(tmp_path, capsys):
    code = run(tmp_path, "quantize", "--m-max", "64", "--p", "2", "--q", "4")
    assert code == 2
    assert "coprime" in capsys.readouterr().err


def test_dimension_variant_dispatch(tmp_path):
    code = run(tmp_path, "dimension", "torus-step", "--m-max", "256",
               "--grid", "2048", "--window", "4,8", "--tol", "0.5")
    assert code == 0
    summary = json.loads((tmp_path / "dimension-torus-step.json").read_text())
    assert summary["subcommand"] == "dimension-torus-step"
    assert summary["config"]["seed"] == 1729
    assert 1.0 < summary["measured"]["median_dim"] < 2.0
    header = (tmp_path / "dimension-torus-step.csv").read_text().splitlines()[0]
    assert header == "t,kind,dim_real,dim_imag,dim_max"


def test_kappa_table_writes_value_tables(tmp_path):
    code = run(tmp_path, "kappa-table", "--n-max", "4", "--dims", "2",
               "--scan-n-max", "16")
    assert code == 0
    assert (tmp_path / "kappa-table.csv").exists()
    assert (tmp_path / "kappa-values-d2.json").exists()
    csv_lines = (tmp_path / "kappa-values-d2.csv").read_text().splitlines()
    assert csv_lines[0] == "n1,n2,n3,n4,value"
    assert not (tmp_path / "kappa-values-d3.json").exists()
    payload = json.loads((tmp_path / "kappa-values-d2.json").read_text())
    assert payload["d"] == 2 and payload["n_max"] == 4


def test_seeded_runs_are_byte_identical(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    argv = ["weyl", "--p", "1.5", "--exponent-range", "3,6",
            "--grid-factor", "8", "--seed", "5"]
    assert main([*argv, "--out", str(d1)]) == 0
    assert main([*argv, "--out", str(d2)]) == 0
    assert (d1 / "weyl.csv").read_bytes() == (d2 / "weyl.csv").read_bytes()
    s1 = json.loads((d1 / "weyl.json").read_text())
    s2 = json.loads((d2 / "weyl.json").read_text())
    assert s1 == s2
    assert s1["seed"] == 5


def test_different_seed_changes_panel(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    base = ["weyl", "--p", "1.5", "--exponent-range", "3,6",
            "--grid-factor", "8"]
    assert main([*base, "--seed", "5", "--out", str(d1)]) == 0
    assert main([*base, "--seed", "6", "--out", str(d2)]) == 0
    assert (d1 / "weyl.csv").read_bytes() != (d2 / "weyl.csv").read_bytes()


def test_bad_flag_value_raises_system_exit(tmp_path):
    with pytest.raises(SystemExit) as info:
        run(tmp_path, "dimension", "torus-step", "--window", "4")
    assert info.value.code == 2
