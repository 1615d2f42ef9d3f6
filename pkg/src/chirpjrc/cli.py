"""Command-line entry point.

Subcommands: waveform | ambiguity | estimate | demod | radar-sweep |
ber-sweep. Common flags: --config PATH, --preset {paper|desk}, --seed N,
--out DIR, --threads N (env CHIRPJRC_THREADS is the fallback). Every
subcommand writes its artifacts atomically into the output directory next
to a manifest that reproduces the run. Exit codes: 0 success, 2 config or
parameter validation error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .ambiguity import ambiguity_grid, benchmark_axes
from .comms import demodulate_stream, demodulate_symbol, demodulate_symbol_lfm_mf
from .config import RunConfig, load_config
from .errors import ChirpJrcError, ConfigError, ParameterError
from .harness import (
    BerSweepConfig,
    RadarSweepConfig,
    ber_csv,
    radar_csv,
    run_ber_sweep,
    run_radar_sweep,
    write_manifest,
)
from .radar import estimate_target, estimate_target_fmcw
from .signal import ComplexSignal, atomic_write_text, read_signal, write_signal, write_signal_csv
from .waveform import SymbolShape, gen_symbol, modulate_bits

_SHAPES = {"triangle": SymbolShape.TRIANGLE_LFM, "vlfm": SymbolShape.V_LFM}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, default=None, help="YAML run config")
    p.add_argument("--preset", choices=("paper", "desk"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, default=None, help="output directory")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (fallback: CHIRPJRC_THREADS)")


def _resolve(args, default_out: str) -> tuple[RunConfig, Path]:
    threads = args.threads
    if threads is None:
        env = os.environ.get("CHIRPJRC_THREADS")
        threads = int(env) if env else None
    cfg = load_config(
        path=args.config,
        preset=args.preset,
        seed=args.seed,
        out_dir=str(args.out) if args.out is not None else None,
        threads=threads,
    )
    out = Path(args.out) if args.out is not None else Path(cfg.out_dir) / default_out
    out.mkdir(parents=True, exist_ok=True)
    return cfg, out


def _manifest(out: Path, cfg: RunConfig, command: str, extra: dict) -> None:
    write_manifest(out / "manifest.yaml", {"command": command, **cfg.document(), "args": extra})


def _cmd_waveform(args) -> int:
    cfg, out = _resolve(args, "waveform")
    if args.bits is not None:
        bits = [int(c) for c in args.bits]
        sig = modulate_bits(cfg.params, bits)
        tag = {"bits": args.bits}
    else:
        sig = gen_symbol(cfg.params, _SHAPES[args.shape])
        tag = {"shape": args.shape}
    if args.csv:
        path = write_signal_csv(sig, out / "signal.csv")
    else:
        path = write_signal(sig, out / "signal.iq")
    _manifest(out, cfg, "waveform", {**tag, "csv": bool(args.csv), "samples": len(sig)})
    print(f"{path} ({len(sig)} samples at fs={sig.fs:g} Hz)")
    return 0


def _cmd_ambiguity(args) -> int:
    cfg, out = _resolve(args, "ambiguity")
    shape = _SHAPES[args.shape]
    tau_default, fd_default = benchmark_axes(cfg.params, n=args.steps)
    if args.cut == "delay":
        tau_axis, fd_axis = tau_default, np.array([0.0])
    elif args.cut == "doppler":
        tau_axis, fd_axis = np.array([0.0]), fd_default
    else:
        tau_axis, fd_axis = tau_default, fd_default
    grid = ambiguity_grid(cfg.params, shape, tau_axis, fd_axis, method=args.method)
    if args.cut == "delay":
        lines = ["tau_s,mag"] + [
            f"{float(t)!r},{float(m)!r}" for t, m in zip(grid.tau_axis, grid.values[:, 0])
        ]
        path = out / "cut_delay.csv"
    elif args.cut == "doppler":
        lines = ["fd_hz,mag"] + [
            f"{float(f)!r},{float(m)!r}" for f, m in zip(grid.fd_axis, grid.values[0, :])
        ]
        path = out / "cut_doppler.csv"
    else:
        lines = ["tau_s,fd_hz,mag"]
        for i, t in enumerate(grid.tau_axis):
            for j, f in enumerate(grid.fd_axis):
                lines.append(f"{float(t)!r},{float(f)!r},{float(grid.values[i, j])!r}")
        path = out / "grid.csv"
    atomic_write_text(path, "\n".join(lines) + "\n")
    _manifest(out, cfg, "ambiguity", {
        "shape": args.shape, "method": args.method, "cut": args.cut, "steps": args.steps,
    })
    print(path)
    return 0


def _cmd_estimate(args) -> int:
    cfg, out = _resolve(args, "estimate")
    rx = read_signal(args.signal)
    if args.scheme == "fmcw":
        est = estimate_target_fmcw(rx, cfg.params, cfg.receiver)
    else:
        est = estimate_target(rx, _SHAPES[args.shape], cfg.params, cfg.receiver,
                              regime=args.regime)
    row = (
        f"{est.beat.f_up!r},{est.beat.f_down!r},{est.range_m!r},{est.velocity_mps!r}"
    )
    atomic_write_text(out / "estimate.csv",
                      "f_up_hz,f_down_hz,range_m,velocity_mps\n" + row + "\n")
    diag_lines = []
    for seg, d in est.diagnostics.items():
        diag_lines += [
            f"segment: {seg}",
            f"  root_modulus: {d.root_modulus!r}",
            f"  subarray_len: {d.subarray_len}",
            f"  snapshots: {d.snapshots}",
        ]
    atomic_write_text(out / "estimate_diagnostics.txt", "\n".join(diag_lines) + "\n")
    _manifest(out, cfg, "estimate", {
        "signal": str(args.signal), "scheme": args.scheme,
        "shape": args.shape, "regime": args.regime,
    })
    print("f_up_hz,f_down_hz,range_m,velocity_mps")
    print(row)
    return 0


def _cmd_demod(args) -> int:
    cfg, out = _resolve(args, "demod")
    rx = read_signal(args.signal)
    bits = demodulate_stream(rx, args.bits, args.scheme, cfg.params)
    line = "".join(str(int(b)) for b in bits)
    atomic_write_text(out / "bits.txt", line + "\n")
    if args.stats_csv:
        sym_len = len(rx) // args.bits
        rows = ["branch_tri,branch_v,bit"]
        demod = demodulate_symbol if args.scheme == "proposed" else demodulate_symbol_lfm_mf
        for k in range(args.bits):
            chunk = ComplexSignal(
                rx.samples[k * sym_len : (k + 1) * sym_len], rx.fs,
                rx.t_start + k * sym_len / rx.fs,
            )
            st = demod(chunk, cfg.params)
            rows.append(f"{st.branch_tri!r},{st.branch_v!r},{st.decided_bit}")
        atomic_write_text(out / "stats.csv", "\n".join(rows) + "\n")
    _manifest(out, cfg, "demod", {
        "signal": str(args.signal), "scheme": args.scheme, "bits": args.bits,
        "stats_csv": bool(args.stats_csv),
    })
    print(line)
    return 0


def _cmd_radar_sweep(args) -> int:
    cfg, out = _resolve(args, "radar")
    sweep = RadarSweepConfig(
        params=cfg.params,
        snr_db=cfg.radar_snr_db if args.snr is None else tuple(args.snr),
        trials=cfg.radar_trials if args.trials is None else args.trials,
        scenario=cfg.scenario,
        receiver=cfg.receiver,
        master_seed=cfg.seed,
    )
    prop, fmcw, _records = run_radar_sweep(sweep, threads=cfg.threads)
    path = out / "radar.csv"
    atomic_write_text(path, radar_csv([prop, fmcw]))
    _manifest(out, cfg, "radar-sweep", {
        "snr_db": list(sweep.snr_db), "trials": sweep.trials,
    })
    print(path)
    return 0


def _cmd_ber_sweep(args) -> int:
    cfg, out = _resolve(args, "ber")
    sweep = BerSweepConfig(
        params=cfg.params,
        snr_db=cfg.ber_snr_db if args.snr is None else tuple(args.snr),
        bits_per_point=cfg.ber_bits_per_point if args.bits is None else args.bits,
        k_factor=cfg.k_factor,
        master_seed=cfg.seed,
    )
    prop, base = run_ber_sweep(sweep, threads=cfg.threads)
    path = out / "ber.csv"
    atomic_write_text(path, ber_csv([prop, base]))
    _manifest(out, cfg, "ber-sweep", {
        "snr_db": list(sweep.snr_db), "bits_per_point": sweep.bits_per_point,
    })
    print(path)
    return 0


def _snr_value(text: str) -> float:
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chirpjrc",
        description="Triangle-LFM / V-LFM joint radar-communications simulator",
    )
    ap.add_argument("--version", action="version", version=f"chirpjrc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("waveform", help="synthesize and export a symbol or bit stream")
    _add_common(p)
    p.add_argument("--shape", choices=sorted(_SHAPES), default="triangle")
    p.add_argument("--bits", default=None, help="bit string, e.g. 1011 (overrides --shape)")
    p.add_argument("--csv", action="store_true", help="CSV export instead of binary IQ")
    p.set_defaults(func=_cmd_waveform)

    p = sub.add_parser("ambiguity", help="evaluate |chi| grids or cuts")
    _add_common(p)
    p.add_argument("--shape", choices=sorted(_SHAPES), default="triangle")
    p.add_argument("--method", choices=("numeric", "analytic"), default="numeric")
    p.add_argument("--cut", choices=("delay", "doppler", "none"), default="none")
    p.add_argument("--steps", type=int, default=241)
    p.set_defaults(func=_cmd_ambiguity)

    p = sub.add_parser("estimate", help="range/velocity from a recorded symbol")
    _add_common(p)
    p.add_argument("signal", type=Path, help="signal file (waveform export format)")
    p.add_argument("--scheme", choices=("proposed", "fmcw"), default="proposed")
    p.add_argument("--shape", choices=sorted(_SHAPES), default="triangle")
    p.add_argument("--regime", choices=("doppler", "delay"), default="doppler")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("demod", help="demodulate a recorded bit stream")
    _add_common(p)
    p.add_argument("signal", type=Path)
    p.add_argument("--bits", type=int, required=True, help="number of bits in the stream")
    p.add_argument("--scheme", choices=("proposed", "lfm_mf"), default="proposed")
    p.add_argument("--stats-csv", action="store_true")
    p.set_defaults(func=_cmd_demod)

    p = sub.add_parser("radar-sweep", help="paired accuracy-vs-SNR Monte Carlo")
    _add_common(p)
    p.add_argument("--snr", type=_snr_value, nargs="+", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=_cmd_radar_sweep)

    p = sub.add_parser("ber-sweep", help="paired BER-vs-Eb/N0 Monte Carlo")
    _add_common(p)
    p.add_argument("--snr", type=_snr_value, nargs="+", default=None)
    p.add_argument("--bits", type=int, default=None)
    p.set_defaults(func=_cmd_ber_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ChirpJrcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
