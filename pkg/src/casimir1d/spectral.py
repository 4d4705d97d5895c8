"""Real-frequency diagnostics: Airy function, force spectral density, resonances.

The Airy function g(w) = (1 - |r1 r2|^2) / |1 - r1 r2 e^{2 i w tau}|^2 is the
ratio of intracavity to external vacuum energy density per mode: above one at
resonance (repulsive contribution), below one in between (attractive).  The
signed spectral density w (1 - g) / (2 pi) oscillates and its integral
converges only through mirror transparency at high frequency, so this module
is diagnostic only; the quantitative force lives on the imaginary axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import AccuracyError, CasimirError, UnsupportedAxisError
from .force import theta_static
from .quadrature import adaptive_panels
from .scattering import LayeredMirror

__all__ = [
    "SpectralSample",
    "ResonancePeak",
    "airy",
    "loop_function",
    "find_resonances",
    "theta_dispersion",
    "spectrum",
]

_DIVERGENCE_EPS = 1e-14


def _roundtrip(cavity, omega):
    return cavity.reflection_product_real(omega) * np.exp(2j * omega * cavity.tau)


def airy(cavity, omega):
    """g(omega) >= 0; above unity near cavity resonances.

    Raises on the divergent perfect-mirror resonance |1 - r1 r2 e^{2 i w tau}| -> 0
    with |r1 r2| = 1.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be > 0")
    rt = _roundtrip(cavity, omega)
    denom = np.abs(1.0 - rt) ** 2
    mod2 = np.abs(cavity.reflection_product_real(omega)) ** 2
    if np.any((denom < _DIVERGENCE_EPS**2) & (np.abs(mod2 - 1.0) < 1e-12)):
        raise CasimirError("divergent resonance: perfectly reflecting cavity at exact resonance")
    g = (1.0 - mod2) / denom
    return float(g) if omega.ndim == 0 else g


def loop_function(cavity, omega):
    """Roundtrip loop function f = r1 r2 e^{2 i w tau} / (1 - r1 r2 e^{2 i w tau})."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("omega must be > 0")
    rt = _roundtrip(cavity, omega)
    if np.any(np.abs(1.0 - rt) < _DIVERGENCE_EPS):
        raise CasimirError("divergent resonance: roundtrip gain reaches unity")
    f = rt / (1.0 - rt)
    return complex(f) if omega.ndim == 0 else f


@dataclass(frozen=True)
class ResonancePeak:
    omega_peak: float
    g_peak: float
    fwhm: float  # nan when the half-maximum is not reached within the bracket
    finesse: float  # free spectral range / fwhm


def find_resonances(cavity, omega_min, omega_max, resolution=None):
    """Locate maxima of g on [omega_min, omega_max] by scanning plus parabolic refinement.

    Peaks are found by scanning, not by assuming 2 w tau = 2 pi n: the sign of
    r1 r2 shifts them by half a free spectral range.  ``resolution`` (grid
    step) must be finer than 1/20 of the free spectral range pi/tau; defaults
    to 1/40 of it.
    """
    fsr = math.pi / cavity.tau
    if resolution is None:
        resolution = fsr / 40.0
    if not 0 < omega_min < omega_max:
        raise ValueError("need 0 < omega_min < omega_max")
    if resolution > fsr / 20.0:
        raise ValueError("resolution must be finer than the free spectral range divided by 20")
    n = int(math.ceil((omega_max - omega_min) / resolution)) + 1
    grid = np.linspace(omega_min, omega_max, n)
    g = airy(cavity, grid)
    peaks = []
    for i in range(1, len(grid) - 1):
        if g[i] > g[i - 1] and g[i] >= g[i + 1]:
            res = minimize_scalar(
                lambda w: -airy(cavity, w),
                bracket=None,
                bounds=(grid[i - 1], grid[i + 1]),
                method="bounded",
                options={"xatol": 1e-12 * max(1.0, grid[i])},
            )
            w_peak = float(res.x)
            g_peak = airy(cavity, w_peak)
            fwhm = _fwhm(cavity, w_peak, g_peak, fsr)
            peaks.append(ResonancePeak(w_peak, g_peak, fwhm, fsr / fwhm if fwhm > 0 else math.nan))
    return peaks


def _fwhm(cavity, w_peak, g_peak, fsr):
    half = 0.5 * g_peak

    def fun(w):
        return airy(cavity, w) - half

    lo = hi = math.nan
    for sign in (-1.0, 1.0):
        a, b = w_peak, w_peak + sign * 0.5 * fsr
        if min(a, b) <= 0:
            return math.nan
        try:
            if fun(a) > 0 > fun(b):
                root = brentq(fun, *sorted((a, b)), xtol=1e-13)
                if sign < 0:
                    lo = root
                else:
                    hi = root
        except ValueError:
            return math.nan
    return hi - lo if math.isfinite(lo) and math.isfinite(hi) else math.nan


def theta_dispersion(stack, n_periods=1000, rel_tol=1e-9):
    """Bandwidth form of theta: (2/pi) * integral_0^inf (-Re r(w)) / w^2 dw.

    The oscillatory tail is truncated after ``n_periods`` reference periods
    pi/xi (xi = largest optical thickness among the slabs) and closed with a
    period-averaged remainder: the mean of -Re r over trailing periods times
    the exact integral of 1/w^2.  Matches the static layer sum within about a
    percent for lossless stacks of a few layers.
    """
    if not isinstance(stack, LayeredMirror):
        raise ValueError("theta_dispersion is defined for layered dielectric stacks")
    if not stack.supports_real_axis():
        raise UnsupportedAxisError("stack models do not support the real frequency axis")
    xi_max = 0.0
    for slab in stack.slabs:
        n0 = math.sqrt(float(np.real(slab.model.eval_imag(0.0))))
        xi_max = max(xi_max, n0 * slab.thickness_time)
    if xi_max == 0.0:
        return 0.0  # vacuum stack reflects nothing

    def integrand(w):
        w = np.asarray(w, dtype=float)
        r = stack.amplitudes_real(w).r
        return -np.real(r) / (w * w)

    period = math.pi / xi_max
    omega_cut = n_periods * period
    # head: the first few periods carry the 1/w^2 weight and need adaptivity
    head_end = 32.0 * period
    value, err = adaptive_panels(integrand, 1e-12, head_end, rel_tol, 0.0, 2000)
    # body: period-by-period fixed panels, integrand smooth within each period
    edges = np.linspace(head_end, omega_cut, n_periods - 32 + 1)
    value += _gauss_chunks(integrand, edges)
    # tail: mean of -Re r over the last periods, times integral of 1/w^2
    tail_mean = _gauss_chunks(
        lambda w: -np.real(stack.amplitudes_real(w).r), np.linspace(omega_cut - 16 * period, omega_cut, 17)
    ) / (16 * period)
    value += tail_mean / omega_cut
    theta = (2.0 / math.pi) * value
    if not math.isfinite(theta):
        raise AccuracyError("dispersion integral did not converge", best_estimate=theta)
    return theta


_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(12)


def _gauss_chunks(f, edges):
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = (mid[:, None] + half[:, None] * _GAUSS_X[None, :]).ravel()
    y = np.asarray(f(x)).reshape(len(lo), len(_GAUSS_X))
    return float(np.sum(half * (y @ _GAUSS_W)))


@dataclass(frozen=True)
class SpectralSample:
    """One grid point of Eq.-of-motion diagnostics: Airy value, loop function,
    and the signed force density w (1 - g) / (2 pi) (natural units)."""

    omega: float
    g: float
    loop_f: complex
    density: float
    error: str | None = None


def spectrum(cavity, omega_grid):
    """Tabulate airy/loop/density over a positive increasing grid.

    Per-point failures are recorded on the sample; the sweep continues.
    """
    omega_grid = [float(w) for w in omega_grid]
    if any(w <= 0 for w in omega_grid) or any(b <= a for a, b in zip(omega_grid, omega_grid[1:])):
        raise ValueError("omega grid must be strictly increasing and > 0")
    factor = cavity.units.force_per_frequency_factor
    samples = []
    for w in omega_grid:
        try:
            g = airy(cavity, w)
            f = loop_function(cavity, w)
            density = factor * w * (1.0 - g) / (2.0 * math.pi)
            samples.append(SpectralSample(w, g, f, density))
        except CasimirError as exc:
            samples.append(
                SpectralSample(w, math.nan, complex(math.nan, math.nan), math.nan, str(exc))
            )
    return samples
