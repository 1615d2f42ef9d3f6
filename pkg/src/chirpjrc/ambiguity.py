"""Delay-Doppler ambiguity function of the triangle-LFM / V-LFM symbol.

chi(tau, f_d) = int x(t) x*(t - tau) e^(j 2 pi f_d t) dt for the unit-energy
symbol envelope on (-T, T) (raw envelope, no band-centering tone: the tone
contributes only a constant phase e^(j pi delta_f tau) and leaves |chi|
unchanged).

Two evaluation routes are provided and kept independent:

* numeric: midpoint discretization of the defining integral on an
  oversampled grid (the integrand of the cross terms sweeps +-2*delta_f, so
  the grid runs at >= 5*delta_f);
* analytic: closed forms per term. Writing s = t - tau, the piecewise
  overlap windows (a(tau), b(tau)) below are exact. The self terms have a
  linear integrand phase, giving sinc closed forms; the up/down cross term
  keeps a quadratic phase at rate 2*mu and evaluates through Fresnel
  integrals with arguments 2 sqrt(mu) (a + s0), 2 sqrt(mu) (b + s0),
  s0 = tau/2 - f_d/(2 mu). The total is

      chi_tri = chi_u11 + chi_u22 + chi_u12(tau, f_d)
                + e^(+j 2 pi f_d tau) chi_u12*(-tau, -f_d),

  using the kernel identity chi_ab(tau, f) = e^(j 2 pi f tau)
  chi_ba*(-tau, -f). All forms are continuous in f_d (including 0).

The V symbol is the conjugate waveform, so |chi_V(tau, f)| =
|chi_tri(tau, -f)| exactly; the analytic route uses that identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ResolutionUndefinedError
from .fresnel import fresnel_cs
from .params import WaveformParams
from .waveform import SymbolShape

_NUMERIC_OVERSAMPLE = 5.0  # integration rate >= 5*delta_f + 2|fd|


@dataclass(frozen=True)
class AmbiguityGrid:
    """|chi| sampled on a delay x Doppler grid, normalized to peak 1.

    values[i, j] = normalized |chi(tau_axis[i], fd_axis[j])|.
    peak_value is the un-normalized peak magnitude.
    """

    tau_axis: np.ndarray
    fd_axis: np.ndarray
    values: np.ndarray
    peak_value: float

    def __post_init__(self):
        for name in ("tau_axis", "fd_axis"):
            ax = np.asarray(getattr(self, name), dtype=np.float64)
            if ax.ndim != 1 or ax.size == 0:
                raise ParameterError(f"{name} must be a nonempty 1-D axis")
            if ax.size > 1 and not np.all(np.diff(ax) > 0):
                raise ParameterError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, ax)
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.tau_axis.size, self.fd_axis.size):
            raise ParameterError("values shape must be (len(tau_axis), len(fd_axis))")
        object.__setattr__(self, "values", vals)


# ---------------------------------------------------------------------------
# numeric route
# ---------------------------------------------------------------------------

def _envelope(t: np.ndarray, params: WaveformParams, shape: SymbolShape) -> np.ndarray:
    """Raw unit-energy symbol envelope evaluated at arbitrary times."""
    inside = (t > -params.t_half) & (t < params.t_half)
    quad = np.where(t < 0.0, 1.0, -1.0) * params.mu * t * t
    phase = np.pi * quad
    if shape is SymbolShape.V_LFM:
        phase = -phase
    amp = 1.0 / np.sqrt(2.0 * params.t_half)
    return np.where(inside, amp * np.exp(1j * phase), 0.0)


def _midpoint_grid(params: WaveformParams, fd_max: float) -> tuple[np.ndarray, float]:
    fs_int = _NUMERIC_OVERSAMPLE * params.delta_f + 2.0 * abs(fd_max)
    n = int(np.ceil(2.0 * params.t_half * fs_int))
    dt = 2.0 * params.t_half / n
    t = -params.t_half + (np.arange(n) + 0.5) * dt
    return t, dt


def chi_numeric(
    params: WaveformParams, shape: SymbolShape, tau: float, fd: float
) -> complex:
    """Direct discretized evaluation of the defining integral at one point."""
    if abs(tau) >= 2.0 * params.t_half:
        return 0.0 + 0.0j  # disjoint supports
    t, dt = _midpoint_grid(params, fd)
    y = _envelope(t, params, shape) * np.conj(_envelope(t - tau, params, shape))
    return complex(np.sum(y * np.exp(2j * np.pi * fd * t)) * dt)


def _numeric_grid_values(
    params: WaveformParams,
    shape: SymbolShape,
    tau_axis: np.ndarray,
    fd_axis: np.ndarray,
) -> np.ndarray:
    t, dt = _midpoint_grid(params, float(np.max(np.abs(fd_axis))))
    x_t = _envelope(t, params, shape)
    kernel = np.exp(2j * np.pi * np.outer(fd_axis, t))  # (n_fd, n_t)
    out = np.empty((tau_axis.size, fd_axis.size), dtype=np.float64)
    for i, tau in enumerate(tau_axis):
        if abs(tau) >= 2.0 * params.t_half:
            out[i, :] = 0.0
            continue
        y = x_t * np.conj(_envelope(t - tau, params, shape))
        out[i, :] = np.abs(kernel @ y) * dt
    return out


# ---------------------------------------------------------------------------
# analytic route
# ---------------------------------------------------------------------------

def _linear_phase_integral(a, b, nu):
    """int_a^b e^(j 2 pi nu s) ds, vectorized, continuous at nu = 0."""
    width = b - a
    return width * np.sinc(nu * width) * np.exp(1j * np.pi * nu * (a + b))


def chi_u11(params: WaveformParams, tau, fd) -> complex | np.ndarray:
    """Self term of the up-chirp half; zero outside |tau| < T."""
    tau = np.asarray(tau, dtype=np.float64)
    fd = np.asarray(fd, dtype=np.float64)
    tt = params.t_half
    a = np.where(tau < 0.0, -tt - tau, -tt)
    b = np.where(tau < 0.0, 0.0, -tau)
    val = (
        np.exp(1j * np.pi * (params.mu * tau**2 + 2.0 * fd * tau))
        * _linear_phase_integral(a, b, params.mu * tau + fd)
        / (2.0 * tt)
    )
    out = np.where(np.abs(tau) < tt, val, 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


def chi_u22(params: WaveformParams, tau, fd) -> complex | np.ndarray:
    """Self term of the down-chirp half; zero outside |tau| < T."""
    tau = np.asarray(tau, dtype=np.float64)
    fd = np.asarray(fd, dtype=np.float64)
    tt = params.t_half
    a = np.where(tau < 0.0, -tau, 0.0)
    b = np.where(tau < 0.0, tt, tt - tau)
    val = (
        np.exp(1j * np.pi * (-params.mu * tau**2 + 2.0 * fd * tau))
        * _linear_phase_integral(a, b, fd - params.mu * tau)
        / (2.0 * tt)
    )
    out = np.where(np.abs(tau) < tt, val, 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


def chi_u12(params: WaveformParams, tau, fd) -> complex | np.ndarray:
    """Cross term (down-chirp half against delayed up-chirp half).

    Nonzero only for 0 < tau < 2T; Fresnel-based closed form.
    """
    tau = np.asarray(tau, dtype=np.float64)
    fd = np.asarray(fd, dtype=np.float64)
    tt = params.t_half
    mu = params.mu
    a = np.where(tau <= tt, -tau, -tt)
    b = np.where(tau <= tt, 0.0, tt - tau)
    s0 = 0.5 * tau - fd / (2.0 * mu)
    x5 = 2.0 * np.sqrt(mu) * (a + s0)
    x6 = 2.0 * np.sqrt(mu) * (b + s0)
    c5, s5 = fresnel_cs(x5)
    c6, s6 = fresnel_cs(x6)
    gauss = ((c6 - c5) - 1j * (s6 - s5)) / (2.0 * np.sqrt(mu))
    theta = 2.0 * np.pi * mu * s0**2 - np.pi * mu * tau**2 + 2.0 * np.pi * fd * tau
    val = np.exp(1j * theta) * gauss / (2.0 * tt)
    out = np.where((tau > 0.0) & (tau < 2.0 * tt), val, 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


def chi_triangle(params: WaveformParams, tau, fd) -> complex | np.ndarray:
    """Closed-form ambiguity of the full triangle symbol (four-term sum)."""
    tau = np.asarray(tau, dtype=np.float64)
    fd = np.asarray(fd, dtype=np.float64)
    cross = chi_u12(params, tau, fd)
    mirror = np.exp(2j * np.pi * fd * tau) * np.conj(chi_u12(params, -tau, -fd))
    out = chi_u11(params, tau, fd) + chi_u22(params, tau, fd) + cross + mirror
    out = np.where(np.abs(tau) < 2.0 * params.t_half, out, 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


def _analytic_grid_values(
    params: WaveformParams,
    shape: SymbolShape,
    tau_axis: np.ndarray,
    fd_axis: np.ndarray,
) -> np.ndarray:
    tau = tau_axis[:, None]
    fd = fd_axis[None, :]
    if shape is SymbolShape.V_LFM:
        # conjugate waveform mirrors Doppler: |chi_V(tau, f)| = |chi_tri(tau, -f)|
        return np.abs(chi_triangle(params, tau, -fd))
    return np.abs(chi_triangle(params, tau, fd))


# ---------------------------------------------------------------------------
# grids and cuts
# ---------------------------------------------------------------------------

def benchmark_axes(params: WaveformParams, n: int = 241) -> tuple[np.ndarray, np.ndarray]:
    """Delay/Doppler axes covering the main lobe and first sidelobes."""
    tt = params.t_half
    tau_axis = np.linspace(-1.8 * tt, 1.8 * tt, n)
    fd_axis = np.linspace(-4.0 / tt, 4.0 / tt, n)
    return tau_axis, fd_axis


def ambiguity_grid(
    params: WaveformParams,
    shape: SymbolShape,
    tau_axis,
    fd_axis,
    method: str = "numeric",
) -> AmbiguityGrid:
    """Evaluate |chi| on a grid and normalize the peak to 1."""
    tau_axis = np.asarray(tau_axis, dtype=np.float64)
    fd_axis = np.asarray(fd_axis, dtype=np.float64)
    if tau_axis.size == 0 or fd_axis.size == 0:
        raise ParameterError("grid axes must be nonempty")
    if method == "numeric":
        vals = _numeric_grid_values(params, shape, tau_axis, fd_axis)
    elif method == "analytic":
        vals = _analytic_grid_values(params, shape, tau_axis, fd_axis)
    else:
        raise ParameterError(f"method must be 'numeric' or 'analytic', got {method!r}")
    peak = float(np.max(vals))
    if peak <= 0.0:
        raise ParameterError("grid contains no signal support")
    return AmbiguityGrid(
        tau_axis=tau_axis, fd_axis=fd_axis, values=vals / peak, peak_value=peak
    )


def _halfpower_crossing(axis, cut, peak_idx, direction, threshold):
    """Interpolated axis position where the cut falls below threshold."""
    i = peak_idx
    while 0 <= i + direction < cut.size:
        j = i + direction
        if cut[j] < threshold:
            # linear interpolation between samples i and j
            frac = (cut[i] - threshold) / (cut[i] - cut[j])
            return axis[i] + frac * (axis[j] - axis[i])
        i = j
    raise ResolutionUndefinedError(
        "main lobe does not fall below the -3 dB level inside the grid"
    )


def resolution_from_cut(grid: AmbiguityGrid, axis: str) -> float:
    """-3 dB full width of the main lobe along 'delay' or 'doppler'."""
    if axis not in ("delay", "doppler"):
        raise ParameterError(f"axis must be 'delay' or 'doppler', got {axis!r}")
    i_pk, j_pk = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    if axis == "delay":
        cut = grid.values[:, j_pk]
        ax = grid.tau_axis
        pk = i_pk
    else:
        cut = grid.values[i_pk, :]
        ax = grid.fd_axis
        pk = j_pk
    peak = cut[pk]
    if peak < grid.values.max() - 1e-12:
        raise ResolutionUndefinedError("requested cut does not pass through the peak")
    thr = peak / np.sqrt(2.0)
    left = _halfpower_crossing(ax, cut, pk, -1, thr)
    right = _halfpower_crossing(ax, cut, pk, +1, thr)
    return float(right - left)
