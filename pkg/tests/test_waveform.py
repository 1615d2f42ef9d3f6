"""Waveform synthesis: energies, frequency courses, symmetries."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chirpjrc.errors import ParameterError
from chirpjrc.params import WaveformParams
from chirpjrc.signal import ComplexSignal
from chirpjrc.waveform import (
    ChirpDirection,
    SymbolShape,
    gen_chirp,
    gen_symbol,
    instantaneous_frequency,
    modulate_bits,
    shape_for_bit,
    symbol_pair,
)


def fit_slope(t, f):
    return np.polyfit(t, f, 1)[0]


# --- gen_chirp ---------------------------------------------------------------

def test_chirp_unit_energy(desk, paper):
    for params in (desk, paper):
        for direction in ChirpDirection:
            sig = gen_chirp(params, direction, params.t_half)
            assert sig.energy() == pytest.approx(1.0, abs=1e-9)


def test_chirp_frequency_monotone_and_slope(desk):
    up = gen_chirp(desk, ChirpDirection.UP, desk.t_half)
    f = instantaneous_frequency(up)
    assert np.all(np.diff(f) > 0)  # monotone increasing for Up
    t = up.t[:-1]
    assert fit_slope(t, f) == pytest.approx(desk.mu, rel=0.01)

    down = gen_chirp(desk, ChirpDirection.DOWN, desk.t_half)
    fd = instantaneous_frequency(down)
    assert np.all(np.diff(fd) < 0)
    assert fit_slope(down.t[:-1], fd) == pytest.approx(-desk.mu, rel=0.01)


def test_chirp_sweep_spans_bandwidth(desk, paper):
    for params in (desk, paper):
        sig = gen_chirp(params, ChirpDirection.UP, params.t_half)
        f = instantaneous_frequency(sig)
        span = f.max() - f.min()
        assert span == pytest.approx(params.delta_f, rel=0.02)
        assert np.max(np.abs(f)) <= params.fs / 2


def test_chirp_raw_phase_matches_quadratic_law():
    # mu = 9.6e11 Hz/s, down-chirp, 300 us: accumulated phase -pi*mu*T^2 =
    # -pi*86400 at t = T. Checked against the sample values directly with a
    # rate that keeps the raw (uncentered) sweep inside the band.
    params = WaveformParams(f0=340e9, delta_f=288e6, t_half=300e-6, fs=720e6)
    sig = gen_chirp(params, ChirpDirection.DOWN, params.t_half, f_start=0.0)
    t = np.arange(len(sig)) / params.fs
    expected_phase = -np.pi * params.mu * t * t
    amp = np.sqrt(params.fs / len(sig))
    assert np.max(np.abs(sig.samples - amp * np.exp(1j * expected_phase))) < 1e-9
    assert expected_phase[-1] == pytest.approx(-np.pi * params.mu * params.t_half**2, rel=1e-4)
    assert -np.pi * params.mu * params.t_half**2 == pytest.approx(-np.pi * 86_400.0)


def test_chirp_duration_guards(desk):
    with pytest.raises(ParameterError):
        gen_chirp(desk, ChirpDirection.UP, 0.0)
    with pytest.raises(ParameterError):
        gen_chirp(desk, ChirpDirection.UP, 1e-12)  # fewer than 2 samples


# --- gen_symbol ---------------------------------------------------------------

def test_symbol_energy_and_duration(desk, paper):
    for params in (desk, paper):
        for shape in SymbolShape:
            sig = gen_symbol(params, shape)
            assert sig.energy() == pytest.approx(1.0, abs=1e-9)
            assert len(sig) == params.symbol_samples
            assert sig.duration == pytest.approx(2 * params.t_half, abs=1 / params.fs)
            assert sig.t_start == -params.t_half


def test_vlfm_is_conjugate_of_triangle(desk, paper):
    for params in (desk, paper):
        tri = gen_symbol(params, SymbolShape.TRIANGLE_LFM)
        v = gen_symbol(params, SymbolShape.V_LFM)
        assert np.array_equal(v.samples, np.conj(tri.samples))


def test_triangle_frequency_course(desk):
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    f = instantaneous_frequency(tri)
    apex = np.argmax(f)
    mid = len(tri) // 2
    assert abs(apex - mid) <= 2  # rises then falls, apex at the symbol center
    assert np.all(np.diff(f[: apex - 2]) > 0)
    assert np.all(np.diff(f[apex + 2 :]) < 0)
    # V symbol mirrors the course in frequency
    v = gen_symbol(desk, SymbolShape.V_LFM)
    fv = instantaneous_frequency(v)
    assert np.allclose(fv, -f, atol=1e-3)


def test_triangle_halves_equal_centered_chirps(desk):
    # First half == up-chirp, second half == down-chirp (1/sqrt(2) energy split).
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    half = desk.half_samples
    up = gen_chirp(desk, ChirpDirection.UP, desk.t_half)
    down = gen_chirp(desk, ChirpDirection.DOWN, desk.t_half)
    assert np.allclose(tri.samples[:half] * np.sqrt(2.0), up.samples, atol=1e-9)
    assert np.allclose(tri.samples[half:] * np.sqrt(2.0), down.samples, atol=1e-9)


def test_frequency_at_quarter_relative_to_band_center(desk, paper):
    # At t = -T/2 the sweep sits mu*(-T/2) below band center: -delta_f/2
    # (-144 MHz at full scale).
    for params in (desk, paper):
        tri = gen_symbol(params, SymbolShape.TRIANGLE_LFM)
        f = instantaneous_frequency(tri)
        idx = params.half_samples // 2
        rel = f[idx] - params.delta_f / 2.0
        assert rel == pytest.approx(params.mu * (-params.t_half / 2), rel=0.01)


def test_phase_continuity_at_apex(desk):
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    half = desk.half_samples
    dphi = np.abs(np.angle(tri.samples[1:] * np.conj(tri.samples[:-1])))
    assert dphi[half - 1] <= np.pi * (desk.delta_f / desk.fs) + 0.1  # no stitching jump


def test_frequency_magnitude_profile_symmetric_under_reversal(desk):
    # Reversing the samples mirrors the frequency course; its magnitude
    # profile is unchanged (the envelope is even in |t| structure).
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    rev = ComplexSignal(tri.samples[::-1], tri.fs, tri.t_start)
    f = instantaneous_frequency(tri)
    f_rev = instantaneous_frequency(rev)
    assert np.allclose(np.abs(f_rev), np.abs(f[::-1]), atol=1e-3)
    # conjugating the reversal recovers the triangle course exactly
    conj_rev = ComplexSignal(np.conj(tri.samples[::-1]), tri.fs, tri.t_start)
    assert np.allclose(instantaneous_frequency(conj_rev), f[::-1], atol=1e-3)


@given(
    n_half=st.integers(min_value=32, max_value=512),
    fs_mhz=st.floats(min_value=1.0, max_value=100.0),
    ratio=st.floats(min_value=0.05, max_value=0.8),
)
def test_symbol_energy_property(n_half, fs_mhz, ratio):
    fs = fs_mhz * 1e6
    params = WaveformParams(f0=100e9, delta_f=ratio * fs / 1.25, t_half=n_half / fs, fs=fs)
    for shape in SymbolShape:
        assert gen_symbol(params, shape).energy() == pytest.approx(1.0, abs=1e-9)


# --- modulate_bits ------------------------------------------------------------

def test_single_bit_is_the_symbol(desk):
    one = modulate_bits(desk, [1])
    assert np.array_equal(one.samples, gen_symbol(desk, SymbolShape.TRIANGLE_LFM).samples)


def test_concatenation_order(desk):
    stream = modulate_bits(desk, [0, 1])
    n = desk.symbol_samples
    assert len(stream) == 2 * n
    assert np.array_equal(stream.samples[:n], gen_symbol(desk, SymbolShape.V_LFM).samples)
    assert np.array_equal(stream.samples[n:], gen_symbol(desk, SymbolShape.TRIANGLE_LFM).samples)


def test_stream_duration(desk):
    stream = modulate_bits(desk, [1, 1, 0])
    assert len(stream) == 3 * desk.symbol_samples
    assert stream.duration == pytest.approx(3 * 2 * desk.t_half, abs=1 / desk.fs)


def test_bits_validation(desk):
    with pytest.raises(ParameterError):
        modulate_bits(desk, [])
    with pytest.raises(ParameterError):
        modulate_bits(desk, [0, 2])
    assert shape_for_bit(1) is SymbolShape.TRIANGLE_LFM
    assert shape_for_bit(0) is SymbolShape.V_LFM


# --- instantaneous_frequency ---------------------------------------------------

def test_pure_tone_frequency(desk):
    t = np.arange(4096) / desk.fs
    tone = ComplexSignal(np.exp(2j * np.pi * 1e6 * t), desk.fs)
    f = instantaneous_frequency(tone)
    assert np.max(np.abs(f - 1e6)) < 1.0  # 1 MHz +- 1 Hz


def test_output_length_and_bound(desk):
    sig = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    f = instantaneous_frequency(sig)
    assert len(f) == len(sig) - 1
    assert np.max(np.abs(f)) <= desk.fs / 2


def test_too_short_signal_rejected(desk):
    with pytest.raises(ParameterError):
        instantaneous_frequency(ComplexSignal(np.ones(1), desk.fs))


def test_symbol_pair_cache_consistency(desk):
    refs = symbol_pair(desk)
    assert np.array_equal(
        refs[SymbolShape.TRIANGLE_LFM].samples,
        gen_symbol(desk, SymbolShape.TRIANGLE_LFM).samples,
    )
    assert np.array_equal(
        refs[SymbolShape.V_LFM].samples, gen_symbol(desk, SymbolShape.V_LFM).samples
    )
