"""Casimir force between two mirror stacks in a 1D scalar-field cavity.

The quantitative route is the imaginary-frequency (Wick-rotated) integral

    F = (hbar / pi c) * integral_0^inf  p R(p) / (e^{2 p tau} - R(p)) dp,

with R(p) the roundtrip reflection product of the two mirrors and tau the
one-way time of flight.  Substituting u = 2 p tau makes the exponential scale
unit and the integrand is evaluated as u R e^{-u} / (1 - R e^{-u}) so that
nothing overflows.  A positive force is attraction.

Everything is computed with hbar = c = 1 and frequencies in units of 1/tau0
for a user-declared reference time tau0; SI conversion happens only when a
result is assembled.  For passive mirrors |F| never exceeds the
perfect-mirror value pi hbar / (24 c tau^2); for dielectric stacks the force
is attractive and decreases with tau.  These bounds are surfaced as flags on
every result.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CasimirError, UnstableCavityError
from .quadrature import QuadratureSpec, adaptive_panels
from .scattering import LayeredMirror, check_passivity, default_passivity_grid

__all__ = [
    "HBAR_SI",
    "C_SI",
    "UnitSystem",
    "CavityConfig",
    "ForceResult",
    "NarrowBandEstimate",
    "SweepEntry",
    "SweepResult",
    "perfect_force",
    "force_imag",
    "force_gradient",
    "theta_static",
    "narrowband_force",
    "fresnel_scale",
    "sweep_force",
]

HBAR_SI = 1.054571817e-34  # J s (CODATA 2018)
C_SI = 299792458.0  # m/s

_STABILITY_SLACK = 1e-10


@dataclass(frozen=True)
class UnitSystem:
    """Reference time tau0 plus the output unit selector.

    In natural output, forces are in units of hbar/(c tau0^2) and times in
    tau0.  In SI output tau0_seconds fixes the scale and forces come out in
    newtons.
    """

    tau0_seconds: float = 1.0
    output: str = "natural"

    def __post_init__(self):
        if self.output not in ("natural", "si"):
            raise ValueError("output must be 'natural' or 'si'")
        if not self.tau0_seconds > 0:
            raise ValueError("tau0_seconds must be > 0")

    @property
    def force_factor(self):
        if self.output == "natural":
            return 1.0
        return HBAR_SI / (C_SI * self.tau0_seconds**2)

    @property
    def force_per_frequency_factor(self):
        return self.force_factor * (1.0 if self.output == "natural" else self.tau0_seconds)


@dataclass(frozen=True)
class CavityConfig:
    """Two mirror stacks facing each other across a one-way flight time tau.

    The roundtrip product uses the inner faces: the right-face reflection of
    mirror1 and the left-face reflection of mirror2.  Construction verifies
    both mirrors against the passivity bound on the default grid; pass
    ``validate=False`` (e.g. inside sweeps over tau with fixed mirrors) to
    skip the re-check.
    """

    mirror1: object
    mirror2: object
    tau: float
    units: UnitSystem = field(default_factory=UnitSystem)
    validate: bool = True

    def __post_init__(self):
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError("tau must be finite and > 0")
        if self.validate:
            for name, mirror in (("mirror1", self.mirror1), ("mirror2", self.mirror2)):
                report = check_passivity(mirror)
                if not report.passed:
                    raise UnstableCavityError(
                        f"{name} fails passivity: min eigenvalue of 1 - S S^dagger is "
                        f"{report.min_eigenvalue:.3e} at p = {report.worst_point}"
                    )

    def with_tau(self, tau, validate=False):
        return CavityConfig(self.mirror1, self.mirror2, tau, self.units, validate)

    def reflection_product(self, p):
        """R(p) = r_bar_1(i p) * r_2(i p), real for real p."""
        s1 = self.mirror1.amplitudes_imag(p)
        s2 = self.mirror2.amplitudes_imag(p)
        return s1.r_bar * s2.r

    def reflection_product_real(self, omega):
        """r_bar_1(omega) * r_2(omega) on the real axis (complex)."""
        s1 = self.mirror1.amplitudes_real(omega)
        s2 = self.mirror2.amplitudes_real(omega)
        return s1.r_bar * s2.r

    def _stability_grid(self):
        lo1, hi1 = self.mirror1.domain_imag()
        lo2, hi2 = self.mirror2.domain_imag()
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        grid = np.logspace(-6.0, 4.0, 101) / self.tau
        grid = grid[(grid >= lo) & (grid <= hi)]
        if lo == 0.0:
            grid = np.concatenate([[0.0], grid])
        return grid

    def sup_reflection_product(self):
        """sup_p |R(p)| estimated on a log grid (R -> 0 as p -> inf for dielectrics)."""
        return float(np.max(np.abs(self.reflection_product(self._stability_grid()))))


@dataclass(frozen=True)
class ForceResult:
    """Force plus the perfect-mirror reference, both in the cavity's output units.

    ``within_perfect_bound`` is |force| <= force_perfect + 10 * error_estimate
    and ``attractive`` is force >= 0; tripping either for a passive cavity
    signals an implementation bug, not user error.
    """

    force: float
    error_estimate: float
    force_perfect: float
    ratio: float
    within_perfect_bound: bool
    attractive: bool
    units: str = "natural"


def perfect_force(tau):
    """Perfect-mirror force pi/(24 tau^2) in natural units (1/tau^2 scaling)."""
    if not tau > 0:
        raise ValueError("tau must be > 0")
    return math.pi / (24.0 * tau * tau)


def _require_stable(cavity):
    sup = cavity.sup_reflection_product()
    if sup > 1.0 + _STABILITY_SLACK:
        raise UnstableCavityError(
            f"|r1 r2| reaches {sup:.6g} > 1 on the imaginary axis; the force integral diverges"
        )
    return min(sup, 1.0)


def force_imag(cavity, spec=None):
    """Evaluate the imaginary-frequency force integral for a cavity.

    Parameters
    ----------
    cavity : CavityConfig
    spec : QuadratureSpec, optional
        Tolerances, panel limit and the u-cut U_max.

    Returns
    -------
    ForceResult
        The error estimate adds the analytic tail bound
        (1 + U_max) e^{-U_max} / (1 - sup|R| e^{-U_max}) to the panel error.

    Raises
    ------
    UnstableCavityError
        If sup |R| > 1 on the imaginary axis.
    AccuracyError
        If the quadrature cannot reach the requested tolerance.
    """
    if spec is None:
        spec = QuadratureSpec()
    sup = _require_stable(cavity)
    tau = cavity.tau

    def integrand(u):
        rp = cavity.reflection_product(u / (2.0 * tau))
        emu = np.exp(-u)
        denom = (1.0 - rp) - rp * np.expm1(-u)
        return u * rp * emu / denom

    value, err = adaptive_panels(
        integrand, 0.0, spec.u_max, spec.rel_tol, spec.abs_tol, spec.max_subdivisions
    )
    e_cut = math.exp(-spec.u_max)
    tail = (1.0 + spec.u_max) * e_cut / (1.0 - sup * e_cut)
    scale = cavity.units.force_factor / (4.0 * math.pi * tau * tau)
    force = value * scale
    error = (err + tail) * scale
    f_perfect = perfect_force(tau) * cavity.units.force_factor
    return ForceResult(
        force=force,
        error_estimate=error,
        force_perfect=f_perfect,
        ratio=force / f_perfect,
        within_perfect_bound=abs(force) <= f_perfect + 10.0 * error,
        attractive=force >= 0.0,
        units=cavity.units.output,
    )


def force_gradient(cavity, spec=None):
    """dF/dtau by differentiation under the integral sign.

    dF/dtau = -(2 hbar / pi c) * integral p^2 R e^{2 p tau} / (e^{2 p tau} - R)^2 dp,
    evaluated as -(1 / 4 pi tau^3) * integral u^2 R e^{-u} / (1 - R e^{-u})^2 du.
    Non-positive for dielectric stacks (R >= 0).
    """
    if spec is None:
        spec = QuadratureSpec()
    sup = _require_stable(cavity)
    tau = cavity.tau

    def integrand(u):
        rp = cavity.reflection_product(u / (2.0 * tau))
        emu = np.exp(-u)
        denom = (1.0 - rp) - rp * np.expm1(-u)
        return u * u * rp * emu / (denom * denom)

    value, _ = adaptive_panels(
        integrand, 0.0, spec.u_max, spec.rel_tol, spec.abs_tol, spec.max_subdivisions
    )
    scale = -cavity.units.force_factor / (4.0 * math.pi * tau**3)
    return value * scale


def theta_static(stack):
    """Low-frequency reflection coefficient theta = sum_A (eps_A(i 0) - 1)/2 * l_A/c.

    theta is minus the p = 0 derivative of the stack's r(i p): an optical
    depth measured as a time, additive over layers.  Requires a layered stack
    whose models are finite at p = 0.
    """
    if not isinstance(stack, LayeredMirror):
        raise ValueError("theta_static is defined for layered dielectric stacks")
    total = 0.0
    for slab in stack.slabs:
        lo, _ = slab.model.domain_imag()
        if lo > 0.0:
            raise CasimirError("model undefined at p = 0 (diverging low-frequency response)")
        eps0 = slab.model.eval_imag(0.0)
        total += 0.5 * (eps0 - 1.0) * slab.thickness_time
    return total


@dataclass(frozen=True)
class NarrowBandEstimate:
    """Both closed forms of the narrow-band force; algebraically consistent
    through 3/(8 pi) = (pi/24) * (9/pi^2)."""

    force: float
    ratio: float


def narrowband_force(theta1, theta2, tau):
    """Narrow-band force 3 theta1 theta2 / (8 pi tau^4) and its ratio to the
    perfect-mirror force, 9 theta1 theta2 / (pi^2 tau^2).  Natural units.

    Valid for theta_j << tau; warns beyond theta_j/tau = 0.1.
    """
    if not tau > 0:
        raise ValueError("tau must be > 0")
    if theta1 < 0 or theta2 < 0:
        raise ValueError("theta must be >= 0")
    if max(theta1, theta2) > 0.1 * tau:
        warnings.warn(
            "narrow-band approximation used outside its validity range (theta/tau > 0.1)",
            stacklevel=2,
        )
    force = 3.0 * theta1 * theta2 / (8.0 * math.pi * tau**4)
    ratio = 9.0 * theta1 * theta2 / (math.pi**2 * tau**2)
    return NarrowBandEstimate(force=force, ratio=ratio)


def fresnel_scale(force_2d, fresnel_number):
    """Qualitative 4D estimate: the 1D force times the number of coupled
    transverse modes (the Fresnel number)."""
    if fresnel_number < 0:
        raise ValueError("fresnel_number must be >= 0")
    return force_2d * fresnel_number


@dataclass(frozen=True)
class SweepEntry:
    tau: float
    result: ForceResult | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    entries: tuple[SweepEntry, ...]
    monotone_nonincreasing: bool

    def forces(self):
        return [e.result.force for e in self.entries if e.result is not None]


def sweep_force(cavity, tau_grid, spec=None):
    """force_imag over a strictly increasing tau grid, one entry per point.

    Per-point failures are recorded without aborting the sweep.  The
    monotonicity verdict reports whether the successful forces are
    non-increasing in tau within their combined error estimates (a theorem
    for dielectric stack pairs).
    """
    tau_grid = [float(t) for t in tau_grid]
    if any(t <= 0 for t in tau_grid) or any(b <= a for a, b in zip(tau_grid, tau_grid[1:])):
        raise ValueError("tau grid must be strictly increasing and > 0")
    entries = []
    for tau in tau_grid:
        try:
            entries.append(SweepEntry(tau, force_imag(cavity.with_tau(tau), spec)))
        except Exception as exc:  # per-point errors propagate in the entry
            entries.append(SweepEntry(tau, None, f"{type(exc).__name__}: {exc}"))
    ok = [e.result for e in entries if e.result is not None]
    monotone = all(
        b.force <= a.force + a.error_estimate + b.error_estimate for a, b in zip(ok, ok[1:])
    )
    return SweepResult(tuple(entries), monotone)
