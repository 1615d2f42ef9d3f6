"""Complex baseband sample container and its file formats.

Export formats:
  * binary: interleaved 32-bit little-endian float pairs (I,Q) in ``<name>``,
    with a structured-text sidecar header ``<name>.meta`` holding fs, t_start
    and count;
  * CSV: columns t,re,im (intended for small signals).
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParameterError

_META_SUFFIX = ".meta"
_FORMAT_TAG = "iq-float32-le"


@dataclass(frozen=True)
class ComplexSignal:
    """Uniformly sampled complex baseband sequence.

    samples : complex amplitudes (dimensionless).
    fs      : sample rate (Hz).
    t_start : time of the first sample (s).
    """

    samples: np.ndarray
    fs: float
    t_start: float = 0.0

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterError("samples must be a nonempty 1-D sequence")
        if not (self.fs > 0):
            raise ParameterError(f"fs must be positive, got {self.fs!r}")
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        """len/fs; the span covered by the sample grid."""
        return self.samples.size / self.fs

    @property
    def t(self) -> np.ndarray:
        """Per-sample times t_start + n/fs."""
        return self.t_start + np.arange(self.samples.size) / self.fs

    def energy(self) -> float:
        """Continuous-time energy estimate sum(|x|^2)/fs."""
        return float(np.sum(np.abs(self.samples) ** 2) / self.fs)

    def power(self) -> float:
        """Mean sample power."""
        return float(np.mean(np.abs(self.samples) ** 2))


def atomic_write_bytes(path: Path | str, data: bytes) -> None:
    """Write file contents atomically (temp file + rename in the same dir)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: Path | str, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def write_signal(sig: ComplexSignal, path: Path | str) -> Path:
    """Write interleaved float32 (I,Q) pairs plus the sidecar header."""
    path = Path(path)
    interleaved = np.empty(2 * len(sig), dtype="<f4")
    interleaved[0::2] = sig.samples.real.astype(np.float32)
    interleaved[1::2] = sig.samples.imag.astype(np.float32)
    atomic_write_bytes(path, interleaved.tobytes())
    meta = (
        f"format: {_FORMAT_TAG}\n"
        f"fs: {sig.fs!r}\n"
        f"t_start: {sig.t_start!r}\n"
        f"count: {len(sig)}\n"
    )
    atomic_write_text(str(path) + _META_SUFFIX, meta)
    return path


def read_signal(path: Path | str) -> ComplexSignal:
    """Read a signal written by :func:`write_signal`."""
    path = Path(path)
    meta_path = Path(str(path) + _META_SUFFIX)
    if not meta_path.exists():
        raise ParameterError(f"missing sidecar header {meta_path}")
    meta: dict[str, str] = {}
    for line in meta_path.read_text().splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(":")
        meta[key.strip()] = value.strip()
    if meta.get("format") != _FORMAT_TAG:
        raise ParameterError(f"unsupported signal format {meta.get('format')!r}")
    fs = float(meta["fs"])
    t_start = float(meta["t_start"])
    count = int(meta["count"])
    raw = np.fromfile(path, dtype="<f4")
    if raw.size != 2 * count:
        raise ParameterError(
            f"{path}: expected {2 * count} float32 values, found {raw.size}"
        )
    samples = raw[0::2].astype(np.float64) + 1j * raw[1::2].astype(np.float64)
    return ComplexSignal(samples=samples, fs=fs, t_start=t_start)


def write_signal_csv(sig: ComplexSignal, path: Path | str) -> Path:
    """CSV export with columns t,re,im."""
    path = Path(path)
    lines = ["t,re,im"]
    t = sig.t
    for i in range(len(sig)):
        lines.append(
            f"{float(t[i])!r},{float(sig.samples[i].real)!r},{float(sig.samples[i].imag)!r}"
        )
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def read_signal_csv(path: Path | str, fs: float) -> ComplexSignal:
    data = np.genfromtxt(path, delimiter=",", names=True)
    if data.size == 0:
        raise ParameterError(f"{path}: empty signal CSV")
    samples = np.atleast_1d(data["re"]) + 1j * np.atleast_1d(data["im"])
    t0 = float(np.atleast_1d(data["t"])[0])
    return ComplexSignal(samples=samples, fs=fs, t_start=t0)
