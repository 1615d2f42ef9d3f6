"""Run configuration: YAML file + flag overrides -> validated objects.

The config document is a nested key/value structure; unknown keys are
rejected so typos fail loudly before any run. Flags override file values.
Validation defers to the constructors of the underlying objects, so every
module precondition is checked before a run starts.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .channel import ScenarioDistribution
from .errors import ConfigError, ParameterError
from .params import PRESETS, WaveformParams, get_preset
from .radar import ReceiverConfig

_WAVEFORM_KEYS = {"f0", "delta_f", "t_half", "fs"}
_SCENARIO_KEYS = {
    "range_mean_m", "range_std_m", "range_max_m",
    "velocity_mean_mps", "velocity_std_mps", "velocity_max_mps", "seed",
}
_CHANNEL_KEYS = {"k_factor"}
_RECEIVER_KEYS = {
    "max_range_m", "max_velocity_mps", "decimation_factor",
    "subarray_cap", "trail_trim_frac",
}
_RADAR_SWEEP_KEYS = {"snr_db", "trials"}
_BER_SWEEP_KEYS = {"snr_db", "bits_per_point"}
_TOP_KEYS = {
    "preset", "waveform", "scenario", "channel", "receiver",
    "radar_sweep", "ber_sweep", "seed", "out_dir", "threads",
}


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run: parameters, knobs, grids, seed."""

    params: WaveformParams
    scenario: ScenarioDistribution
    receiver: ReceiverConfig
    k_factor: float = 10.0
    radar_snr_db: tuple[float, ...] = tuple(float(s) for s in range(-10, 16, 2))
    radar_trials: int = 500
    ber_snr_db: tuple[float, ...] = tuple(float(s) for s in range(-4, 16, 2))
    ber_bits_per_point: int = 20_000
    seed: int = 0
    out_dir: str = "runs"
    threads: int = 1
    preset: str | None = "desk"

    def document(self) -> dict:
        """Plain-dict form for the run manifest (YAML-safe types only)."""
        doc = {
            "preset": self.preset,
            "waveform": asdict(self.params),
            "scenario": asdict(self.scenario),
            "channel": {"k_factor": self.k_factor},
            "receiver": asdict(self.receiver),
            "radar_sweep": {"snr_db": list(self.radar_snr_db), "trials": self.radar_trials},
            "ber_sweep": {"snr_db": list(self.ber_snr_db), "bits_per_point": self.ber_bits_per_point},
            "seed": self.seed,
            "out_dir": self.out_dir,
            "threads": self.threads,
        }
        return doc


def _check_keys(section: str, data: dict, allowed: set[str]) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) in {section}: {sorted(unknown)}; allowed: {sorted(allowed)}"
        )


def _snr_list(raw) -> tuple[float, ...]:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigError("snr_db must be a nonempty list of numbers ('inf' allowed)")
    return tuple(float(v) for v in raw)


def load_config(
    path: Path | str | None = None,
    preset: str | None = None,
    seed: int | None = None,
    out_dir: str | None = None,
    threads: int | None = None,
) -> RunConfig:
    """Build a validated RunConfig from an optional YAML file plus overrides."""
    doc: dict = {}
    if path is not None:
        raw = yaml.safe_load(Path(path).read_text())
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
        doc = raw
    try:
        _check_keys("config", doc, _TOP_KEYS)

        preset_name = preset if preset is not None else doc.get("preset", "desk")
        wf = dict(doc.get("waveform") or {})
        _check_keys("waveform", wf, _WAVEFORM_KEYS)
        if wf and preset is None and "preset" not in doc:
            preset_name = None
        base = asdict(get_preset(preset_name)) if preset_name else {}
        params = WaveformParams(**{**base, **wf})

        sc = dict(doc.get("scenario") or {})
        _check_keys("scenario", sc, _SCENARIO_KEYS)
        scenario = ScenarioDistribution(**sc)

        chan = dict(doc.get("channel") or {})
        _check_keys("channel", chan, _CHANNEL_KEYS)
        k_factor = float(chan.get("k_factor", 10.0))
        if k_factor < 0:
            raise ConfigError("channel.k_factor must be >= 0")

        rc = dict(doc.get("receiver") or {})
        _check_keys("receiver", rc, _RECEIVER_KEYS)
        receiver = ReceiverConfig(**rc)

        rs = dict(doc.get("radar_sweep") or {})
        _check_keys("radar_sweep", rs, _RADAR_SWEEP_KEYS)
        bs = dict(doc.get("ber_sweep") or {})
        _check_keys("ber_sweep", bs, _BER_SWEEP_KEYS)

        cfg = RunConfig(
            params=params,
            scenario=scenario,
            receiver=receiver,
            k_factor=k_factor,
            radar_snr_db=_snr_list(rs["snr_db"]) if "snr_db" in rs else RunConfig.radar_snr_db,
            radar_trials=int(rs.get("trials", RunConfig.radar_trials)),
            ber_snr_db=_snr_list(bs["snr_db"]) if "snr_db" in bs else RunConfig.ber_snr_db,
            ber_bits_per_point=int(bs.get("bits_per_point", RunConfig.ber_bits_per_point)),
            seed=int(seed if seed is not None else doc.get("seed", 0)),
            out_dir=str(out_dir if out_dir is not None else doc.get("out_dir", "runs")),
            threads=int(threads if threads is not None else doc.get("threads", 1)),
            preset=preset_name,
        )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc
    if cfg.radar_trials < 1 or cfg.ber_bits_per_point < 1:
        raise ConfigError("trials and bits_per_point must be >= 1")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    return cfg
