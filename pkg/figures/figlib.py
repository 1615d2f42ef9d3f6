"""Figure rendering for the simulator's CSV outputs.

Four figure kinds, one per result family:

  tf_view   : waveform CSV (t,re,im) -> instantaneous-frequency view
  accuracy  : radar sweep CSV -> range and velocity accuracy curves
  ber       : BER sweep CSV -> log-y BER curves
  ambiguity : ambiguity cut or grid CSV -> cut plot / surface image

Input schemas must match the simulator's CSV headers exactly; a missing or
renamed column fails loudly naming the column. Rendering is deterministic:
fixed figure size, fonts and DPI, no timestamps in the image metadata.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGURE_KINDS = ("tf_view", "accuracy", "ber", "ambiguity")

_RC = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.grid": True,
    "grid.alpha": 0.3,
}
_SCHEMAS = {
    "tf_view": ["t", "re", "im"],
    "accuracy": ["snr_db", "scheme", "trials", "mean_pct_r", "mean_pct_v", "fail_count"],
    "ber": ["snr_db", "scheme", "bits", "errors", "ber", "ci95_halfwidth"],
}
_AMBIGUITY_SCHEMAS = (["tau_s", "mag"], ["fd_hz", "mag"], ["tau_s", "fd_hz", "mag"])
_SCHEME_LABELS = {
    "proposed": "triangle/V-LFM (proposed)",
    "fmcw": "FMCW reference",
    "lfm_mf": "LFM pulse, matched filter",
}
_PNG_METADATA = {"Software": "chirpjrc-figures"}


class SchemaError(RuntimeError):
    """Input CSV does not match the expected column schema."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: input CSV path(s), figure kind, output image path."""

    inputs: tuple[str, ...]
    kind: str
    output: str
    title: str = ""
    logy: bool | None = None  # default decided per kind

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; expected one of {FIGURE_KINDS}")
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")


def read_rows(path: str | Path, columns: list[str]) -> dict[str, list[str]]:
    """Read a CSV and enforce the exact expected header."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: no such file")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {columns}") from None
        if header != columns:
            missing = [c for c in columns if c not in header]
            extra = [c for c in header if c not in columns]
            raise SchemaError(
                f"{path}: header mismatch; missing column(s) {missing or 'none'}, "
                f"unexpected {extra or 'none'}; expected exactly {columns}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows under a valid header")
    out = {c: [] for c in columns}
    for row in rows:
        if len(row) != len(columns):
            raise SchemaError(f"{path}: row with {len(row)} fields, expected {len(columns)}")
        for c, v in zip(columns, row):
            out[c].append(v)
    return out


def _save(fig, output: str) -> None:
    out = Path(output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, metadata=_PNG_METADATA)
    plt.close(fig)


def _render_tf_view(spec: FigureSpec) -> list[str]:
    data = read_rows(spec.inputs[0], _SCHEMAS["tf_view"])
    t = [float(v) for v in data["t"]]
    re = [float(v) for v in data["re"]]
    im = [float(v) for v in data["im"]]
    if len(t) < 2:
        raise SchemaError(f"{spec.inputs[0]}: need at least 2 samples for a frequency view")
    dt = t[1] - t[0]
    freq = []
    for k in range(len(t) - 1):
        z1 = complex(re[k + 1], im[k + 1])
        z0 = complex(re[k], im[k])
        freq.append(math.atan2((z1 * z0.conjugate()).imag, (z1 * z0.conjugate()).real)
                    / (2 * math.pi * dt))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot([v * 1e6 for v in t[:-1]], [f / 1e6 for f in freq], lw=0.8)
        ax.set_xlabel("time (us)")
        ax.set_ylabel("instantaneous frequency (MHz)")
        ax.set_title(spec.title or "dual-function waveform, time-frequency view")
        _save(fig, spec.output)
    return [spec.output]


def _group_by_scheme(data: dict[str, list[str]]):
    groups: dict[str, list[int]] = {}
    for i, scheme in enumerate(data["scheme"]):
        groups.setdefault(scheme, []).append(i)
    finite = lambda s: not math.isinf(float(s))  # noqa: E731
    return groups, finite


def _render_accuracy(spec: FigureSpec) -> list[str]:
    data = read_rows(spec.inputs[0], _SCHEMAS["accuracy"])
    groups, finite = _group_by_scheme(data)
    outputs = []
    for column, label, suffix in (
        ("mean_pct_r", "range accuracy (%)", "_range"),
        ("mean_pct_v", "velocity accuracy (%)", "_velocity"),
    ):
        with plt.rc_context(_RC):
            fig, ax = plt.subplots()
            for scheme in sorted(groups):
                idx = [i for i in groups[scheme] if finite(data["snr_db"][i])]
                snr = [float(data["snr_db"][i]) for i in idx]
                val = [float(data[column][i]) for i in idx]
                ax.plot(snr, val, marker="o", ms=3,
                        label=_SCHEME_LABELS.get(scheme, scheme))
            ax.set_xlabel("SNR (dB), chirp-length normalized")
            ax.set_ylabel(label)
            ax.set_title(spec.title or f"radar {label} vs SNR")
            ax.legend()
            base = Path(spec.output)
            out = str(base.with_name(base.stem + suffix + base.suffix))
            _save(fig, out)
            outputs.append(out)
    return outputs


def _render_ber(spec: FigureSpec) -> list[str]:
    data = read_rows(spec.inputs[0], _SCHEMAS["ber"])
    groups, finite = _group_by_scheme(data)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for scheme in sorted(groups):
            idx = [i for i in groups[scheme] if finite(data["snr_db"][i])]
            snr = [float(data["snr_db"][i]) for i in idx]
            ber = [float(data["ber"][i]) for i in idx]
            ax.semilogy(snr, [max(b, 1e-12) for b in ber], marker="o", ms=3,
                        label=_SCHEME_LABELS.get(scheme, scheme))
        ax.set_xlabel("Eb/N0 (dB), chirp-length normalized")
        ax.set_ylabel("bit error rate")
        ax.set_title(spec.title or "BER vs Eb/N0, Rician K=10")
        ax.legend()
        _save(fig, spec.output)
    return [spec.output]


def _render_ambiguity(spec: FigureSpec) -> list[str]:
    path = Path(spec.inputs[0])
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
    if header == ["tau_s", "fd_hz", "mag"]:
        data = read_rows(path, ["tau_s", "fd_hz", "mag"])
        tau = sorted({float(v) for v in data["tau_s"]})
        fd = sorted({float(v) for v in data["fd_hz"]})
        grid = [[0.0] * len(fd) for _ in tau]
        ti = {v: i for i, v in enumerate(tau)}
        fi = {v: i for i, v in enumerate(fd)}
        for ts, fs_, m in zip(data["tau_s"], data["fd_hz"], data["mag"]):
            grid[ti[float(ts)]][fi[float(fs_)]] = float(m)
        with plt.rc_context(_RC):
            fig, ax = plt.subplots()
            mesh = ax.pcolormesh(
                [v * 1e6 for v in tau], [v / 1e3 for v in fd],
                list(map(list, zip(*grid))), shading="auto", cmap="viridis",
            )
            fig.colorbar(mesh, ax=ax, label="|chi| (normalized)")
            ax.set_xlabel("delay (us)")
            ax.set_ylabel("Doppler (kHz)")
            ax.set_title(spec.title or "ambiguity surface")
            _save(fig, spec.output)
        return [spec.output]
    if header in (["tau_s", "mag"], ["fd_hz", "mag"]):
        axis = header[0]
        data = read_rows(path, [axis, "mag"])
        x = [float(v) for v in data[axis]]
        mag = [float(v) for v in data["mag"]]
        scale, unit = (1e6, "delay (us)") if axis == "tau_s" else (1e-3, "Doppler (kHz)")
        with plt.rc_context(_RC):
            fig, ax = plt.subplots()
            ax.plot([v * scale for v in x], mag, lw=0.9)
            ax.set_xlabel(unit)
            ax.set_ylabel("|chi| (normalized)")
            ax.set_title(spec.title or f"ambiguity cut ({'zero-Doppler' if axis == 'tau_s' else 'zero-delay'})")
            _save(fig, spec.output)
        return [spec.output]
    raise SchemaError(
        f"{path}: header {header} is not an ambiguity cut or grid schema "
        f"(expected one of {_AMBIGUITY_SCHEMAS})"
    )


def render(spec: FigureSpec) -> list[str]:
    """Render one figure spec; returns the written image path(s)."""
    return {
        "tf_view": _render_tf_view,
        "accuracy": _render_accuracy,
        "ber": _render_ber,
        "ambiguity": _render_ambiguity,
    }[spec.kind](spec)
