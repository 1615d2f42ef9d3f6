"""Two-branch demodulator, matched-filter reference, stream loopbacks."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chirpjrc.channel import RicianChannel, add_awgn, apply_rician
from chirpjrc.comms import (
    baseline_symbol_samples,
    baseline_templates,
    demodulate_stream,
    demodulate_symbol,
    demodulate_symbol_lfm_mf,
)
from chirpjrc.errors import ParameterError
from chirpjrc.harness import derived_rng
from chirpjrc.params import WaveformParams
from chirpjrc.signal import ComplexSignal
from chirpjrc.waveform import SymbolShape, gen_symbol, modulate_bits, symbol_pair


def test_matched_branch_statistics(desk, paper):
    for params in (desk, paper):
        tri = gen_symbol(params, SymbolShape.TRIANGLE_LFM)
        stats = demodulate_symbol(tri, params)
        assert stats.decided_bit == 1
        assert stats.branch_tri == pytest.approx(1.0, abs=1e-9)  # unit-energy match
        # mismatched branch equals |<x_tri, x_v>|, small for large time-bandwidth
        inner = abs(np.vdot(gen_symbol(params, SymbolShape.V_LFM).samples, tri.samples)) / params.fs
        assert stats.branch_v == pytest.approx(inner, abs=1e-12)
        assert stats.branch_v < 0.1
        assert stats.branch_tri / stats.branch_v >= 10.0


@given(theta=st.floats(min_value=0.0, max_value=2 * np.pi))
def test_vlfm_decision_is_phase_invariant(theta):
    params = WaveformParams(f0=100e9, delta_f=28.8e6, t_half=30e-6, fs=36e6)
    v = gen_symbol(params, SymbolShape.V_LFM)
    rx = ComplexSignal(v.samples * np.exp(1j * theta), v.fs, v.t_start)
    stats = demodulate_symbol(rx, params)
    assert stats.decided_bit == 0


def test_decision_scale_invariance(desk):
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    for scale in (1e-3, 1.0, 1e3, 1e3 * np.exp(1.7j)):
        rx = ComplexSignal(tri.samples * scale, tri.fs, tri.t_start)
        assert demodulate_symbol(rx, desk).decided_bit == 1


def test_tie_breaks_to_one(desk):
    rx = ComplexSignal(np.zeros(desk.symbol_samples, dtype=complex) + 0.0, desk.fs)
    assert demodulate_symbol(rx, desk).decided_bit == 1  # equal (zero) branches


def test_symbol_length_validation(desk):
    tri = gen_symbol(desk, SymbolShape.TRIANGLE_LFM)
    short = ComplexSignal(tri.samples[:-1], tri.fs, tri.t_start)
    with pytest.raises(ParameterError):
        demodulate_symbol(short, desk)


# --- matched-filter reference ---------------------------------------------------------

def test_baseline_templates_unit_energy(desk):
    tmpl = baseline_templates(desk)
    for sig in tmpl.values():
        assert sig.energy() == pytest.approx(1.0, abs=1e-9)
        assert sig.fs == 2 * desk.fs
    assert baseline_symbol_samples(desk) == desk.symbol_samples


def test_baseline_noiseless_decisions(desk):
    tmpl = baseline_templates(desk)
    up = tmpl[1]
    assert demodulate_symbol_lfm_mf(up, desk).decided_bit == 1
    down = tmpl[0]
    rx = ComplexSignal(down.samples * np.exp(0.9j), down.fs, down.t_start)
    assert demodulate_symbol_lfm_mf(rx, desk).decided_bit == 0


def test_baseline_peak_found_off_grid(desk):
    # timing offset within the lag search: decision unchanged
    tmpl = baseline_templates(desk)[1]
    shifted = np.roll(tmpl.samples, 37)
    rx = ComplexSignal(shifted, tmpl.fs, tmpl.t_start)
    assert demodulate_symbol_lfm_mf(rx, desk).decided_bit == 1


# --- streams ---------------------------------------------------------------------------

def test_stream_loopback(desk):
    bits = [1, 0, 1]
    rx = modulate_bits(desk, bits)
    assert list(demodulate_stream(rx, 3, "proposed", desk)) == bits


def test_stream_loopback_through_pure_los(desk, rng):
    bits = list(rng.integers(0, 2, 20))
    rx = apply_rician(modulate_bits(desk, bits), RicianChannel(k_factor=1e12, seed=4),
                      desk.symbol_samples)
    assert list(demodulate_stream(rx, 20, "proposed", desk)) == bits


def test_large_noiseless_rician_loopback_is_error_free(desk):
    # 100k bits through K=10 block fading, no noise: fading alone cannot flip
    # a magnitude comparison between near-orthogonal branches.
    total = 100_000
    chunk = 2_000
    rng = np.random.default_rng(8)
    ch = RicianChannel(k_factor=10.0)
    errors = 0
    for _ in range(total // chunk):
        bits = rng.integers(0, 2, chunk)
        tx = modulate_bits(desk, bits)
        rx = apply_rician(tx, ch, desk.symbol_samples, rng)
        out = demodulate_stream(rx, chunk, "proposed", desk)
        errors += int(np.sum(out != bits))
    assert errors == 0


def test_stream_length_validation(desk):
    rx = modulate_bits(desk, [1, 0])
    with pytest.raises(ParameterError):
        demodulate_stream(rx, 3, "proposed", desk)
    with pytest.raises(ParameterError):
        demodulate_stream(rx, 2, "qam", desk)


def test_paired_demod_at_10db(desk):
    # 1000 symbols at Eb/N0 = 10 dB, K = 10: proposed makes fewer errors than
    # the matched-filter reference on the same draws.
    n = 1000
    rng = derived_rng(99, 0, 0, 0)
    refs = symbol_pair(desk)
    ref_mat = np.stack([refs[SymbolShape.V_LFM].samples, refs[SymbolShape.TRIANGLE_LFM].samples])
    tmpl = baseline_templates(desk)
    tmpl_mat = np.stack([tmpl[0].samples, tmpl[1].samples])
    gamma = 10.0
    sigma = np.sqrt(desk.fs / gamma)
    ch = RicianChannel(k_factor=10.0)
    bits = rng.integers(0, 2, n)
    taps = ch.draw_taps(n, rng)
    err_p = err_b = 0
    for i in range(n):
        noise = (rng.standard_normal(desk.symbol_samples)
                 + 1j * rng.standard_normal(desk.symbol_samples)) / np.sqrt(2)
        rx = ComplexSignal(taps[i] * ref_mat[bits[i]] + sigma * noise, desk.fs, -desk.t_half)
        err_p += demodulate_symbol(rx, desk).decided_bit != bits[i]
        rxb = ComplexSignal(taps[i] * tmpl_mat[bits[i]] + np.sqrt(2) * sigma * noise,
                            2 * desk.fs, 0.0)
        err_b += demodulate_symbol_lfm_mf(rxb, desk).decided_bit != bits[i]
    assert err_p < err_b
