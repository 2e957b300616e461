"""Experiment drivers at reduced scale: pass flags, rows, determinism."""

import json

import pytest

from talbotlab import __version__
from talbotlab.experiments import (
    ExperimentResult,
    run_bilinear_contrast,
    run_kappa_suite,
    run_nls_smoothing,
    run_polygon_dimension,
    run_quantization,
    run_resonance_decay,
    run_specialfun_checks,
    run_torus_step_dimension,
    run_weyl_decay,
    run_zonal_dimension,
    run_zonal_holder,
    write_rows,
)


def test_quantization_driver_small():
    result = run_quantization(m_max=256, q_max=6)
    assert result.passed
    assert result.measured["max_residual"] < 1e-10
    assert len(result.rows) == sum(1 for q in range(1, 7) for p in range(1, q + 1) if __import__("math").gcd(p, q) == 1)
    single = run_quantization(m_max=256, p=3, q=8)
    assert single.passed and len(single.rows) == 1


def test_quantization_driver_rejects_bad_tolerance():
    result = run_quantization(m_max=128, q_max=4, tol=1e-22)
    assert not result.passed


def test_torus_step_dimension_small():
    result = run_torus_step_dimension(m_max=4096, grid=16384, window=(5, 9))
    assert result.measured["median_dim"] == pytest.approx(1.5, abs=0.1)
    assert result.passed
    assert all("t" in row and "dim_max" in row for row in result.rows)


def test_polygon_dimension_small():
    result = run_polygon_dimension(m_max=128, grid=512, window=(3, 6), tol=0.35)
    assert result.measured["median_dim"] == pytest.approx(2.5, abs=0.35)
    assert result.passed


def test_zonal_dimension_small():
    result = run_zonal_dimension(p=1.5, n_max=511, grid=4096, window=(4, 9))
    assert result.passed
    assert 1.0 <= result.measured["median_dim"] <= 2.0


def test_zonal_holder_small():
    result = run_zonal_holder(p=1.5, n_max=1023, j_max=9, window=(2, 9))
    assert result.passed
    assert result.measured["median_slope"] <= 0.02


def test_weyl_decay_small():
    result = run_weyl_decay(p=1.5, exponent_range=(3, 7))
    assert result.passed
    assert result.measured["median_exponent"] == pytest.approx(-1.0, abs=0.15)


def test_kappa_suite_small():
    result = run_kappa_suite(n_max=8, dims=(2, 3), scan_n_max=24)
    assert result.passed
    for d in (2, 3):
        assert result.measured[f"d{d}_unclassified"] == 0
        assert result.measured[f"d{d}_support_max"] < 1e-10
        assert result.measured[f"d{d}_parseval_max"] < 1e-8
        assert result.measured[f"d{d}_min_entry"] > -1e-10


def test_resonance_decay_small():
    result = run_resonance_decay(degrees=(16, 32, 64))
    assert result.passed
    assert result.measured["decay_exponent"] <= -0.9
    assert result.measured["stderr"] < 0.5


def test_bilinear_contrast_small():
    result = run_bilinear_contrast(
        block_n=64, m_blocks=(4, 8, 16), beam_degrees=(8, 16, 32, 64, 128)
    )
    assert result.passed
    assert result.measured["bilinear_exponent"] <= 0.15
    assert result.measured["beam_quartic_exponent"] == pytest.approx(0.5, abs=0.1)


def test_nls_smoothing_small():
    result = run_nls_smoothing(n_max=48, dt=2e-3, t_final=0.05, fit_n_min=4)
    assert result.passed
    assert result.measured["mass_drift"] < 1e-8
    assert result.measured["smoothing_gain"] >= 0.2
    assert result.measured["single_mode_error"] < 1e-10


def test_specialfun_driver():
    result = run_specialfun_checks(ortho_n_max=32, szego_degrees=(64, 128))
    assert result.passed
    assert result.measured["orthonormality_defect"] < 1e-10
    assert 0.0 < result.measured["fitted_envelope_constant"] <= 2.0


def test_summary_embeds_reproducibility_fields():
    result = run_quantization(m_max=64, q_max=3)
    summary = result.summary(config={"m_max": 64, "q_max": 3}, seed=7, config_hash="abc123")
    payload = json.loads(json.dumps(summary))
    assert payload["subcommand"] == "quantize"
    assert payload["version"] == __version__
    assert payload["seed"] == 7
    assert payload["config"]["m_max"] == 64
    assert payload["config_hash"] == "abc123"
    assert payload["passed"] is True
    assert "measured" in payload and "criteria" in payload


def test_write_rows_deterministic(tmp_path):
    rows = [{"a": 1, "b": 0.5}, {"a": 2, "b": 0.25}]
    p1, p2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    write_rows(p1, rows)
    write_rows(p2, rows)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[0] == "a,b"


def test_experiment_result_shape():
    result = run_resonance_decay(degrees=(16, 32))
    assert isinstance(result, ExperimentResult)
    assert set(result.measured) >= {"decay_exponent", "stderr"}
    assert isinstance(result.criteria, dict)
    assert isinstance(result.rows, tuple) and result.rows
