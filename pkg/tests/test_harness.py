"""Metrics, pairing, determinism, replay, CSV emission."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chirpjrc.errors import ParameterError
from chirpjrc.harness import (
    BerSweepConfig,
    RadarSweepConfig,
    accuracy_metrics,
    ber_csv,
    radar_csv,
    run_ber_sweep,
    run_radar_sweep,
    run_radar_trial,
    wilson_halfwidth,
    write_manifest,
)


# --- accuracy metrics -------------------------------------------------------------

def test_accuracy_examples():
    assert accuracy_metrics((250.0, 10_000.0), (247.5, 10_000.0)) == pytest.approx((99.0, 100.0))
    assert accuracy_metrics((250.0, 10_000.0), (250.0, 10_000.0)) == (100.0, 100.0)
    # coupled FMCW gross error stays negative, not clipped
    pct_r, _ = accuracy_metrics((250.0, 10_000.0), (3292.0, 10_000.0))
    assert pct_r == pytest.approx(100.0 - abs(250.0 - 3292.0) / 250.0 * 100.0)
    assert pct_r == pytest.approx(-1116.8)


def test_accuracy_zero_truth_rejected():
    with pytest.raises(ParameterError):
        accuracy_metrics((0.0, 10.0), (1.0, 1.0))
    with pytest.raises(ParameterError):
        accuracy_metrics((10.0, 0.0), (1.0, 1.0))


@given(
    r=st.floats(min_value=1.0, max_value=500.0),
    v=st.floats(min_value=1.0, max_value=15_000.0),
    dr=st.floats(min_value=-100.0, max_value=100.0),
)
def test_accuracy_bounded_above(r, v, dr):
    pct_r, pct_v = accuracy_metrics((r, v), (r + dr, v))
    assert pct_r <= 100.0
    assert pct_v == 100.0
    if r + dr != r:  # perturbation representable at this magnitude
        assert pct_r < 100.0


def test_wilson_halfwidth_properties():
    assert wilson_halfwidth(0, 1000) > 0.0
    assert wilson_halfwidth(10, 1000) < wilson_halfwidth(100, 1000)
    # matches the normal approximation for large n, mid p
    n, e = 100_000, 25_000
    approx = 1.96 * math.sqrt(0.25 * 0.75 / n)
    assert wilson_halfwidth(e, n) == pytest.approx(approx, rel=0.01)
    with pytest.raises(ParameterError):
        wilson_halfwidth(0, 0)


# --- radar sweep --------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_radar_cfg(desk):
    return RadarSweepConfig(params=desk, snr_db=(float("inf"), 0.0), trials=12, master_seed=5)


@pytest.fixture(scope="module")
def small_radar_run(small_radar_cfg):
    return run_radar_sweep(small_radar_cfg)


def test_radar_sweep_noiseless_point(small_radar_run):
    prop, fmcw, _ = small_radar_run
    assert prop.points[0].snr_db == float("inf")
    assert prop.points[0].mean_pct_r >= 99.5
    assert prop.points[0].fail_count == 0
    assert fmcw.points[0].mean_pct_r < 0.0  # coupling bias dominates


def test_radar_sweep_pairing(small_radar_run):
    prop, fmcw, records = small_radar_run
    for a, b in zip(prop.points, fmcw.points):
        assert a.trials == b.trials
        assert a.fail_count == b.fail_count  # shared measurement, shared failures
        assert a.mean_pct_v == pytest.approx(b.mean_pct_v)  # same beat-average readout
        assert a.mean_pct_r >= b.mean_pct_r
    by_key = {}
    for r in records:
        by_key.setdefault((r.point_index, r.trial_id), []).append(r)
    for pair in by_key.values():
        assert {r.scheme for r in pair} == {"proposed", "fmcw"}
        assert pair[0].truth_r == pair[1].truth_r  # common draws


def test_radar_trial_replay(small_radar_cfg, small_radar_run):
    _, _, records = small_radar_run
    sample = [r for r in records if r.scheme == "proposed"][3]
    again_p, again_f = run_radar_trial(small_radar_cfg, sample.point_index, sample.trial_id)
    assert again_p == sample
    assert again_f.scheme == "fmcw"


def test_radar_sweep_deterministic_and_thread_invariant(small_radar_cfg, small_radar_run):
    prop1, fmcw1, _ = small_radar_run
    prop2, fmcw2, _ = run_radar_sweep(small_radar_cfg, threads=2)
    assert radar_csv([prop1, fmcw1]) == radar_csv([prop2, fmcw2])


def test_radar_csv_schema(small_radar_run):
    prop, fmcw, _ = small_radar_run
    text = radar_csv([prop, fmcw])
    lines = text.strip().splitlines()
    assert lines[0] == "snr_db,scheme,trials,mean_pct_r,mean_pct_v,fail_count"
    assert len(lines) == 1 + 2 * len(prop.points)
    assert all(len(line.split(",")) == 6 for line in lines[1:])


def test_radar_config_validation(desk):
    with pytest.raises(ParameterError):
        RadarSweepConfig(params=desk, snr_db=(), trials=5)
    with pytest.raises(ParameterError):
        RadarSweepConfig(params=desk, snr_db=(0.0,), trials=0)


# --- BER sweep ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_ber_cfg(desk):
    return BerSweepConfig(
        params=desk, snr_db=(float("inf"), 8.0), bits_per_point=1500, master_seed=6
    )


@pytest.fixture(scope="module")
def small_ber_run(small_ber_cfg):
    return run_ber_sweep(small_ber_cfg)


def test_ber_noiseless_is_exact_zero(small_ber_run):
    prop, base = small_ber_run
    assert prop.points[0].errors == 0
    assert base.points[0].errors == 0
    assert prop.points[0].ber == 0.0


def test_ber_ordering_at_8db(small_ber_run):
    prop, base = small_ber_run
    assert prop.points[1].ber < base.points[1].ber


def test_ber_deterministic_and_thread_invariant(small_ber_cfg, small_ber_run):
    prop1, base1 = small_ber_run
    prop2, base2 = run_ber_sweep(small_ber_cfg, threads=2)
    assert ber_csv([prop1, base1]) == ber_csv([prop2, base2])


def test_ber_csv_schema(small_ber_run):
    prop, base = small_ber_run
    lines = ber_csv([prop, base]).strip().splitlines()
    assert lines[0] == "snr_db,scheme,bits,errors,ber,ci95_halfwidth"
    assert len(lines) == 5
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert row["scheme"] in ("proposed", "lfm_mf")
    assert int(row["bits"]) == 1500


def test_manifest_roundtrip(tmp_path, desk):
    import yaml

    path = tmp_path / "manifest.yaml"
    write_manifest(path, {"seed": 7, "preset": "desk", "x": [1, 2]})
    doc = yaml.safe_load(path.read_text())
    assert doc["seed"] == 7
    assert doc["chirpjrc_version"]
    # rewriting produces identical bytes (sorted keys, fixed style)
    first = path.read_bytes()
    write_manifest(path, {"seed": 7, "preset": "desk", "x": [1, 2]})
    assert path.read_bytes() == first
