"""Up/down chirps, triangle-LFM / V-LFM symbols, and bit modulation.

One symbol occupies (-T, T). The triangle symbol chirps up over (-T, 0) and
down over (0, T); the V symbol is its exact complex conjugate (frequency
course mirrored). Bits map 1 -> triangle, 0 -> V. All outputs are unit energy
in the continuous-time sense (sum|x|^2/fs = 1).

Sampled outputs are band-centered: a tone at delta_f/2 multiplies the raw
envelope exp(+-j*pi*mu*t^2) so each half sweeps -delta_f/2..+delta_f/2 and
Doppler-shifted echoes stay inside the Nyquist band at fs = 1.25*delta_f.
Magnitude-level quantities (energy, correlations, beat frequencies,
ambiguity) are unchanged by this fixed tone.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .params import WaveformParams
from .signal import ComplexSignal


class ChirpDirection(Enum):
    UP = 1    # frequency increases over time (c = 1)
    DOWN = 0  # frequency decreases over time (c = 0)

    @property
    def sign(self) -> int:
        """Sign of the quadratic phase term: (-1)^(1-c)."""
        return 1 if self is ChirpDirection.UP else -1


class SymbolShape(Enum):
    TRIANGLE_LFM = 1  # carries bit 1: up-chirp then down-chirp
    V_LFM = 0         # carries bit 0: down-chirp then up-chirp

    @property
    def bit(self) -> int:
        return self.value


def shape_for_bit(bit: int) -> SymbolShape:
    if bit not in (0, 1):
        raise ParameterError(f"bits must be 0 or 1, got {bit!r}")
    return SymbolShape.TRIANGLE_LFM if bit else SymbolShape.V_LFM


def gen_chirp(
    params: WaveformParams,
    direction: ChirpDirection,
    duration: float,
    f_start: float | None = None,
) -> ComplexSignal:
    """Generate one unit-energy linear chirp over t in [0, duration).

    The phase is pi*s*mu*t^2 + 2*pi*f_start*t with s = +1 for UP, -1 for
    DOWN. f_start defaults to -s*mu*duration/2, which centers the sweep on
    0 Hz; pass f_start=0.0 for the raw one-sided sweep (instantaneous
    frequency s*mu*t).
    """
    if not (duration > 0):
        raise ParameterError(f"duration must be positive, got {duration!r}")
    n = int(round(duration * params.fs))
    if n < 2:
        raise ParameterError(
            f"duration*fs = {duration * params.fs:.3g} gives fewer than 2 samples"
        )
    s = direction.sign
    if f_start is None:
        f_start = -0.5 * s * params.mu * duration
    t = np.arange(n) / params.fs
    phase = np.pi * s * params.mu * t * t + 2.0 * np.pi * f_start * t
    amp = np.sqrt(params.fs / n)  # sum |x|^2 / fs == 1
    return ComplexSignal(samples=amp * np.exp(1j * phase), fs=params.fs, t_start=0.0)


def gen_symbol(params: WaveformParams, shape: SymbolShape) -> ComplexSignal:
    """Generate one unit-energy symbol over t in [-T, T).

    Triangle envelope: exp(+j*pi*mu*t^2) on (-T, 0), exp(-j*pi*mu*t^2) on
    (0, T), times the band-centering tone exp(+j*pi*delta_f*t). Both halves
    have zero phase at t = 0, so no stitching phase is needed. The V symbol
    is the elementwise conjugate.
    """
    n = params.symbol_samples
    t = -params.t_half + np.arange(n) / params.fs
    quad = np.where(t < 0.0, 1.0, -1.0) * params.mu * t * t
    phase = np.pi * (quad + params.delta_f * t)
    amp = np.sqrt(params.fs / n)
    samples = amp * np.exp(1j * phase)
    if shape is SymbolShape.V_LFM:
        samples = np.conj(samples)
    return ComplexSignal(samples=samples, fs=params.fs, t_start=-params.t_half)


@lru_cache(maxsize=8)
def _symbol_pair_cached(params: WaveformParams):
    tri = gen_symbol(params, SymbolShape.TRIANGLE_LFM)
    v = ComplexSignal(np.conj(tri.samples), tri.fs, tri.t_start)
    return {SymbolShape.TRIANGLE_LFM: tri, SymbolShape.V_LFM: v}


def symbol_pair(params: WaveformParams) -> dict[SymbolShape, ComplexSignal]:
    """Both reference symbols; cached, treat the samples as read-only."""
    return _symbol_pair_cached(params)


def modulate_bits(params: WaveformParams, bits) -> ComplexSignal:
    """Concatenate per-bit symbols; each bit occupies 2*T seconds."""
    bits = list(bits)
    if not bits:
        raise ParameterError("bits must be nonempty")
    refs = symbol_pair(params)
    chunks = [refs[shape_for_bit(int(b))].samples for b in bits]
    return ComplexSignal(
        samples=np.concatenate(chunks), fs=params.fs, t_start=-params.t_half
    )


def instantaneous_frequency(sig: ComplexSignal) -> np.ndarray:
    """Per-sample frequency from successive phase differences (Hz).

    Returns len-1 values, each in (-fs/2, fs/2].
    """
    if len(sig) < 2:
        raise ParameterError("need at least 2 samples to estimate frequency")
    dphi = np.angle(sig.samples[1:] * np.conj(sig.samples[:-1]))
    return dphi * sig.fs / (2.0 * np.pi)
