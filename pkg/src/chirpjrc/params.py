"""Waveform parameter set and the two built-in presets.

A symbol spans (-T, T): an up-chirp half followed by a down-chirp half (or
the reverse), each sweeping delta_f over t_half at slope mu = delta_f/t_half.
Sampled signals are band-centered, i.e. each half sweeps -delta_f/2..+delta_f/2
at complex baseband so that Doppler-shifted echoes stay inside the Nyquist
band at fs = 1.25*delta_f.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

C_LIGHT = 299_792_458.0  # m/s

# Headroom so echoes Doppler-shifted by up to ~0.125*delta_f stay in-band.
MIN_FS_RATIO = 1.25


@dataclass(frozen=True)
class WaveformParams:
    """Chirp geometry of the dual-function waveform.

    f0      : carrier frequency (Hz); sets the wavelength used for Doppler.
    delta_f : per-chirp sweep bandwidth (Hz).
    t_half  : chirp half-duration T (s); one symbol lasts 2*T.
    fs      : complex baseband sample rate (Hz), >= 1.25*delta_f.
    """

    f0: float
    delta_f: float
    t_half: float
    fs: float

    def __post_init__(self):
        for name in ("f0", "delta_f", "t_half", "fs"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ParameterError(f"{name} must be a positive number, got {v!r}")
        if self.fs < MIN_FS_RATIO * self.delta_f - 1e-9:
            raise ParameterError(
                f"fs={self.fs:.6g} Hz violates fs >= {MIN_FS_RATIO}*delta_f "
                f"(= {MIN_FS_RATIO * self.delta_f:.6g} Hz)"
            )

    @property
    def mu(self) -> float:
        """Chirp slope mu = delta_f / t_half (Hz/s); always derived."""
        return self.delta_f / self.t_half

    @property
    def lam(self) -> float:
        """Carrier wavelength c / f0 (m)."""
        return C_LIGHT / self.f0

    @property
    def symbol_duration(self) -> float:
        """One symbol lasts 2*T seconds."""
        return 2.0 * self.t_half

    @property
    def half_samples(self) -> int:
        """Samples per chirp half at fs."""
        n = self.t_half * self.fs
        n_round = int(round(n))
        if abs(n - n_round) > 1e-6:
            raise ParameterError(
                f"t_half*fs = {n} is not an integer sample count; "
                "choose fs so each chirp half has a whole number of samples"
            )
        return n_round

    @property
    def symbol_samples(self) -> int:
        return 2 * self.half_samples


# Full-scale constants: 340 GHz carrier, 288 MHz sweep, 300 us chirp half.
PAPER_PARAMS = WaveformParams(f0=340e9, delta_f=288e6, t_half=300e-6, fs=360e6)

# Scaled preset for fast CI runs. mu is preserved (28.8 MHz / 30 us = 9.6e11
# Hz/s). The carrier drops to 100 GHz so the physical debris Doppler
# (6.67 MHz at 10 km/s) still fits the scaled Nyquist band while staying
# above mu*tau (1.60 MHz at 250 m), keeping the Doppler-dominant regime.
DESK_PARAMS = WaveformParams(f0=100e9, delta_f=28.8e6, t_half=30e-6, fs=36e6)

PRESETS: dict[str, WaveformParams] = {"paper": PAPER_PARAMS, "desk": DESK_PARAMS}


def get_preset(name: str) -> WaveformParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(
            f"unknown preset {name!r}; built-ins are {sorted(PRESETS)}"
        ) from None
