"""Dual-function triangle-LFM / V-LFM waveform simulator:
synthesis, debris echo channel, dechirp + root-MUSIC radar receiver,
two-branch communications receiver, ambiguity functions, and Monte Carlo
accuracy/BER sweeps."""

__version__ = "0.1.0"

from .ambiguity import (
    AmbiguityGrid,
    ambiguity_grid,
    benchmark_axes,
    chi_numeric,
    chi_triangle,
    chi_u11,
    chi_u12,
    chi_u22,
    resolution_from_cut,
)
from .channel import (
    DebrisTarget,
    RicianChannel,
    ScenarioDistribution,
    add_awgn,
    apply_rician,
    echo,
    sample_scenario,
)
from .comms import (
    DecisionStatistics,
    demodulate_stream,
    demodulate_symbol,
    demodulate_symbol_lfm_mf,
)
from .errors import (
    AmbiguousRegimeError,
    BlindSpotError,
    ChirpJrcError,
    ConfigError,
    EstimationError,
    ParameterError,
    ResolutionUndefinedError,
)
from .fresnel import FresnelPair, fresnel, fresnel_cs
from .harness import (
    BerSweepConfig,
    RadarSweepConfig,
    SweepResult,
    TrialRecord,
    accuracy_metrics,
    run_ber_sweep,
    run_radar_sweep,
    run_radar_trial,
    wilson_halfwidth,
)
from .params import DESK_PARAMS, PAPER_PARAMS, WaveformParams, get_preset
from .radar import (
    BeatPair,
    EstimationResult,
    ReceiverConfig,
    dechirp,
    estimate_target,
    estimate_target_fmcw,
    measure_beat_pair,
)
from .rootmusic import decimate, estimate_tone_rootmusic
from .signal import ComplexSignal, read_signal, write_signal, write_signal_csv
from .waveform import (
    ChirpDirection,
    SymbolShape,
    gen_chirp,
    gen_symbol,
    instantaneous_frequency,
    modulate_bits,
    symbol_pair,
)
