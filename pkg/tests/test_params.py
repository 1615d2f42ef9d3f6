import pytest

from chirpjrc.errors import ParameterError
from chirpjrc.params import C_LIGHT, DESK_PARAMS, PAPER_PARAMS, WaveformParams, get_preset


def test_paper_preset_constants():
    p = PAPER_PARAMS
    assert p.f0 == 340e9
    assert p.delta_f == 288e6
    assert p.t_half == 300e-6
    assert p.fs == 360e6
    assert p.mu == pytest.approx(9.6e11)
    assert p.lam == pytest.approx(C_LIGHT / 340e9)
    assert p.symbol_samples == 216_000


def test_desk_preset_preserves_slope():
    assert DESK_PARAMS.mu == pytest.approx(PAPER_PARAMS.mu, rel=1e-12)
    assert DESK_PARAMS.symbol_samples == 2160


def test_mu_is_derived_not_stored():
    p = WaveformParams(f0=1e9, delta_f=10e6, t_half=10e-6, fs=20e6)
    assert p.mu == p.delta_f / p.t_half


@pytest.mark.parametrize("field,value", [
    ("f0", 0.0), ("f0", -1.0), ("delta_f", 0.0), ("t_half", -2e-6), ("fs", 0.0),
])
def test_positive_fields_enforced(field, value):
    kwargs = dict(f0=1e9, delta_f=10e6, t_half=10e-6, fs=20e6)
    kwargs[field] = value
    with pytest.raises(ParameterError):
        WaveformParams(**kwargs)


def test_nyquist_headroom_enforced():
    with pytest.raises(ParameterError):
        WaveformParams(f0=1e9, delta_f=10e6, t_half=10e-6, fs=12e6)  # < 1.25*delta_f
    WaveformParams(f0=1e9, delta_f=10e6, t_half=10e-6, fs=12.5e6)  # boundary ok


def test_fractional_sample_count_rejected():
    p = WaveformParams(f0=1e9, delta_f=10e6, t_half=10.00001e-6, fs=20e6)
    with pytest.raises(ParameterError):
        _ = p.half_samples


def test_presets_are_the_only_builtins():
    assert get_preset("paper") is PAPER_PARAMS
    assert get_preset("desk") is DESK_PARAMS
    with pytest.raises(ParameterError):
        get_preset("bench")
