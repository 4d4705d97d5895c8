"""Dielectric response models evaluated on the imaginary and real frequency axes.

All frequencies are dimensionless, measured in units of 1/tau0 for a
user-declared reference time tau0 (hbar = c = 1 internally).  On the
imaginary axis (omega = i*p, p real >= 0) a causal passive dielectric has a
real permittivity >= 1 that decreases to 1 as p -> infinity; every model
here is built to respect that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import UnsupportedAxisError

__all__ = [
    "ConstantPermittivity",
    "LorentzPermittivity",
    "TabulatedPermittivity",
    "ValidationReport",
    "validate_model",
    "VALIDATION_GRID",
]

# log grid used by validate_model, in units of 1/tau0
VALIDATION_GRID = np.logspace(-6.0, 6.0, 121)


def _check_p(p):
    """Accept real p >= 0 or complex p with Re p >= 0 (right half-plane)."""
    p = np.asarray(p)
    if not np.iscomplexobj(p):
        p = p.astype(float)
    if np.any(np.real(p) < 0):
        raise ValueError("imaginary-axis frequency p must have Re p >= 0")
    return p


@dataclass(frozen=True)
class ConstantPermittivity:
    """Frequency-independent permittivity (lossless on both axes)."""

    eps: float

    def eval_imag(self, p):
        p = _check_p(p)
        return self.eps * np.ones(p.shape) if p.ndim else float(self.eps)

    def eval_real(self, omega):
        omega = np.asarray(omega, dtype=float)
        if np.any(omega <= 0):
            raise ValueError("real-axis frequency omega must be > 0")
        out = self.eps * np.ones_like(omega, dtype=complex)
        return out if omega.ndim else complex(out)

    def supports_real_axis(self):
        return True

    def domain_imag(self):
        return (0.0, math.inf)


@dataclass(frozen=True)
class LorentzPermittivity:
    """Sum of Lorentz oscillators: eps(i p) = 1 + sum_k O_k^2 / (w_k^2 + g_k p + p^2).

    Each oscillator is (strength, resonance, damping) with resonance > 0 and
    damping >= 0, so eps(i p) is real, >= 1, non-increasing, and -> 1 at
    large p.  On the real axis eps(w) = 1 + sum_k O_k^2 / (w_k^2 - w^2 - i g_k w),
    whose imaginary part is >= 0 (absorption) for w > 0.
    """

    oscillators: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        osc = tuple((float(s), float(w), float(g)) for s, w, g in self.oscillators)
        for s, w, g in osc:
            if not (math.isfinite(s) and math.isfinite(w) and math.isfinite(g)):
                raise ValueError("oscillator parameters must be finite")
            if w <= 0:
                raise ValueError("oscillator resonance must be > 0 (a zero resonance diverges at p = 0)")
            if g < 0:
                raise ValueError("oscillator damping must be >= 0")
        object.__setattr__(self, "oscillators", osc)

    def eval_imag(self, p):
        p = _check_p(p)
        out = np.ones(p.shape, dtype=p.dtype if np.iscomplexobj(p) else float)
        for s, w, g in self.oscillators:
            out = out + s * s / (w * w + g * p + p * p)
        if p.ndim:
            return out
        return complex(out) if np.iscomplexobj(p) else float(out)

    def eval_real(self, omega):
        omega = np.asarray(omega, dtype=float)
        if np.any(omega <= 0):
            raise ValueError("real-axis frequency omega must be > 0")
        out = np.ones_like(omega, dtype=complex)
        for s, w, g in self.oscillators:
            out = out + s * s / (w * w - omega * omega - 1j * g * omega)
        return out if omega.ndim else complex(out)

    def supports_real_axis(self):
        return True

    def domain_imag(self):
        return (0.0, math.inf)


@dataclass(frozen=True)
class TabulatedPermittivity:
    """Permittivity sampled on the imaginary axis, interpolated monotone-cubic in log p.

    Beyond the last sample the value decays to one as 1 + A/p^2 with A matched
    at the last point (Lorentz asymptotics); set ``tail_decay=False`` to make
    such queries an error instead.  Queries below the first sample are a
    domain error (the table does not determine eps there); a p = 0 sample is
    joined linearly to the first positive sample.  This model lives on the
    imaginary axis only.
    """

    samples: tuple[tuple[float, float], ...]
    tail_decay: bool = True
    _interp: PchipInterpolator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple((float(p), float(e)) for p, e in self.samples)
        if len(pts) < 2:
            raise ValueError("at least two samples required")
        ps = np.array([p for p, _ in pts])
        if np.any(ps < 0) or np.any(np.diff(ps) <= 0):
            raise ValueError("sample frequencies must be >= 0 and strictly increasing")
        if not np.all(np.isfinite([v for pt in pts for v in pt])):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", pts)
        pos = [(p, e) for p, e in pts if p > 0]
        if len(pos) >= 2:
            xs = np.log([p for p, _ in pos])
            ys = np.array([e for _, e in pos])
            object.__setattr__(self, "_interp", PchipInterpolator(xs, ys, extrapolate=False))

    @property
    def _p_first(self):
        return self.samples[0][0]

    @property
    def _p_last(self):
        return self.samples[-1][0]

    def eval_imag(self, p):
        p = _check_p(p)
        if np.iscomplexobj(p):
            raise ValueError("tabulated models are defined for real p only")
        scalar = p.ndim == 0
        p = np.atleast_1d(p)
        if np.any(p < self._p_first):
            raise ValueError(f"p below tabulated range (first sample at p = {self._p_first:g})")
        if not self.tail_decay and np.any(p > self._p_last):
            raise ValueError(
                f"p beyond tabulated range (last sample at p = {self._p_last:g}) and tail decay disabled"
            )
        out = np.empty_like(p)
        p0, e0 = self.samples[0]
        p1, e1 = self.samples[1]
        lo = p < p1 if p0 == 0.0 else np.zeros_like(p, dtype=bool)
        if np.any(lo):
            # linear join from a p = 0 sample to the first positive one
            out[lo] = e0 + (e1 - e0) * (p[lo] - p0) / (p1 - p0)
        hi = p > self._p_last
        if np.any(hi):
            e_last = self.samples[-1][1]
            amp = (e_last - 1.0) * self._p_last**2
            out[hi] = 1.0 + amp / p[hi] ** 2
        mid = ~(lo | hi)
        if np.any(mid):
            if self._interp is None:
                out[mid] = np.interp(p[mid], [q for q, _ in self.samples], [e for _, e in self.samples])
            else:
                out[mid] = self._interp(np.log(np.maximum(p[mid], self._p_first if self._p_first > 0 else p1)))
        out = np.maximum(out, 1.0)
        return float(out[0]) if scalar else out

    def eval_real(self, omega):
        raise UnsupportedAxisError("tabulated imaginary-axis models cannot be continued to the real axis")

    def supports_real_axis(self):
        return False

    def domain_imag(self):
        return (self._p_first, math.inf if self.tail_decay else self._p_last)


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failures: tuple[str, ...]
    first_violation: tuple[float, float] | None  # (p, eps) of the first bad sample

    def __bool__(self):
        return self.passed


def validate_model(model) -> ValidationReport:
    """Scan a model on a log p-grid and report violations of the dielectric bounds.

    Checks: eps(i p) >= 1 everywhere; non-increasing in p (constant and
    Lorentz families); decay toward 1 at the top of the grid for Lorentz
    models.  Constant models are exempt from the decay requirement.
    """
    failures = []
    first = None
    lo, hi = model.domain_imag()
    grid = VALIDATION_GRID[(VALIDATION_GRID >= lo) & (VALIDATION_GRID <= hi)]
    if lo == 0.0:
        grid = np.concatenate([[0.0], grid])
    try:
        vals = model.eval_imag(grid)
    except ValueError as exc:
        return ValidationReport(False, (f"evaluation failed: {exc}",), None)
    vals = np.atleast_1d(vals)
    bad = vals < 1.0
    if np.any(bad):
        i = int(np.argmax(bad))
        first = (float(grid[i]), float(vals[i]))
        failures.append(f"eps < 1 at p = {grid[i]:g} (eps = {vals[i]:g})")
    if isinstance(model, (ConstantPermittivity, LorentzPermittivity)):
        rising = np.diff(vals) > 1e-12 * np.abs(vals[:-1])
        if np.any(rising):
            i = int(np.argmax(rising)) + 1
            if first is None:
                first = (float(grid[i]), float(vals[i]))
            failures.append(f"eps increasing at p = {grid[i]:g}")
    if isinstance(model, LorentzPermittivity) and len(grid):
        # each term is bounded by (strength/p)^2, so this can only fail for corrupt state
        bound = sum(s * s for s, _, _ in model.oscillators) / grid[-1] ** 2
        if vals[-1] - 1.0 > 10.0 * bound + 1e-12:
            if first is None:
                first = (float(grid[-1]), float(vals[-1]))
            failures.append(f"no decay toward 1 at p = {grid[-1]:g}")
    return ValidationReport(not failures, tuple(failures), first)
