"""Two-port mirror descriptions: slab amplitudes, stack composition, impedance, passivity.

A mirror is a reciprocal two-port characterized by reflection amplitudes r
(left face), r_bar (right face) and a single transmission amplitude t.  The
three equivalent representations are the scattering matrix S = [[r, t],
[t, r_bar]], the transfer matrix T = (1/t)[[t^2 - r*r_bar, r], [-r_bar, 1]]
(multiplicative under stacking, det T = 1 for reciprocal mirrors), and the
impedance matrix Z with S = (Z - 1)(Z + 1)^-1.

On the imaginary frequency axis (omega = i*p) all amplitudes are real; a
passive mirror has |r|, |r_bar|, |t| <= 1 there, and a dielectric stack has
r <= 0 and 0 < t <= 1.  Stacks are composed with the scattering-form cascade
formulas rather than T-matrix products: T entries grow like 1/t and overflow
for opaque stacks, so the T route is kept only as a verification oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularCompositionError, UnsupportedAxisError

__all__ = [
    "AXIS_IMAG",
    "AXIS_REAL",
    "TwoPortScattering",
    "TransferMatrix",
    "ImpedanceMatrix",
    "Slab",
    "MirrorStack",
    "LayeredMirror",
    "PerfectMirror",
    "ConstantMirror",
    "MagneticMirror",
    "NarrowBandMirror",
    "identity_scattering",
    "slab_amplitudes_imag",
    "slab_amplitudes_real",
    "compose",
    "stack_amplitudes",
    "transfer_from_scattering",
    "scattering_from_transfer",
    "impedance_from_scattering",
    "check_passivity",
    "PassivityReport",
    "default_passivity_grid",
]

AXIS_IMAG = "imag"
AXIS_REAL = "real"

_SINGULAR_DENOM = 1e-14
# below this, 1/t overflows past any representable float
_MIN_TRANSMISSION = 1e-280


@dataclass(frozen=True)
class TwoPortScattering:
    """Reciprocal two-port amplitudes at a single frequency (or an array of them)."""

    r: object
    r_bar: object
    t: object
    axis: str
    freq: object

    @property
    def s_matrix(self):
        return np.array([[self.r, self.t], [self.t, self.r_bar]])


@dataclass(frozen=True)
class TransferMatrix:
    m: np.ndarray
    axis: str
    freq: object

    @property
    def det(self):
        return self.m[0, 0] * self.m[1, 1] - self.m[0, 1] * self.m[1, 0]


@dataclass(frozen=True)
class ImpedanceMatrix:
    m: np.ndarray

    def hermitian_part_eigenvalues(self):
        return np.linalg.eigvalsh(self.m + self.m.conj().T)


def _scalar_or_array(x):
    a = np.asarray(x)
    return a if a.ndim else a.item()


def identity_scattering(axis, freq):
    """Transparent two-port: r = r_bar = 0, t = 1."""
    return TwoPortScattering(0.0, 0.0, 1.0, axis, _scalar_or_array(freq))


def _same_point(a, b):
    fa, fb = np.asarray(a.freq), np.asarray(b.freq)
    return a.axis == b.axis and fa.shape == fb.shape and np.allclose(fa, fb, rtol=1e-12, atol=0.0)


# ---------------------------------------------------------------------------
# slabs

@dataclass(frozen=True)
class Slab:
    """One homogeneous dielectric layer: a response model plus l/c in time units.

    Zero thickness is accepted and acts as the identity two-port.
    """

    model: object
    thickness_time: float

    def __post_init__(self):
        if not (self.thickness_time >= 0 and math.isfinite(self.thickness_time)):
            raise ValueError("thickness_time must be finite and >= 0")


def _fabry_perot(rho, phase_factor):
    """Shared single-slab algebra: e2 = exp(-2 p xi) or exp(2 i w xi)."""
    e2 = phase_factor * phase_factor
    denom = 1.0 - rho * rho * e2
    r = -rho * (1.0 - e2) / denom
    t = (1.0 - rho * rho) * phase_factor / denom
    return r, t


def slab_amplitudes_imag(slab, p):
    """Fabry-Perot slab amplitudes at omega = i*p (p >= 0, scalar or array).

    r = r_bar = -rho (1 - e^{-2 p xi}) / (1 - rho^2 e^{-2 p xi}) and
    t = (1 - rho^2) e^{-p xi} / (1 - rho^2 e^{-2 p xi}) with
    rho = (sqrt(eps) - 1)/(sqrt(eps) + 1) and xi = sqrt(eps) * l/c, all from
    eps(i p).  Values are real with r <= 0 and 0 < t <= 1.
    """
    p = np.asarray(p)
    if np.any(np.real(p) < 0):
        raise ValueError("imaginary-axis frequency p must have Re p >= 0")
    eps = slab.model.eval_imag(p)
    n = np.emath.sqrt(eps)
    rho = (n - 1.0) / (n + 1.0)
    xi = n * slab.thickness_time
    r, t = _fabry_perot(rho, np.exp(-p * xi))
    if p.ndim == 0 and not np.iscomplexobj(np.asarray(r)):
        r, t = float(r), float(t)
    return TwoPortScattering(r, r, t, AXIS_IMAG, _scalar_or_array(p))


def slab_amplitudes_real(slab, omega):
    """Slab amplitudes on the real axis: the same algebra with e^{-2 p xi} -> e^{2 i w xi}.

    Lossless models give |r|^2 + |t|^2 = 1.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("real-axis frequency omega must be > 0")
    if not slab.model.supports_real_axis():
        raise UnsupportedAxisError("slab model does not support the real frequency axis")
    eps = slab.model.eval_real(omega)
    n = np.emath.sqrt(eps)
    rho = (n - 1.0) / (n + 1.0)
    xi = n * slab.thickness_time
    r, t = _fabry_perot(rho, np.exp(1j * omega * xi))
    if omega.ndim == 0:
        r, t = complex(r), complex(t)
    return TwoPortScattering(r, r, t, AXIS_REAL, _scalar_or_array(omega))


# ---------------------------------------------------------------------------
# composition

def compose(a, b):
    """Cascade two two-ports (a on the left, b on the right) at the same frequency.

    t_ab   = t_a t_b / (1 - r_bar_a r_b)
    r_ab   = r_a + r_b t_a^2 / (1 - r_bar_a r_b)
    rb_ab  = r_bar_b + r_bar_a t_b^2 / (1 - r_bar_a r_b)

    Equivalent to the T-matrix product but immune to 1/t overflow.
    """
    if not _same_point(a, b):
        raise ValueError("cannot compose two-ports on different axes or frequencies")
    denom = 1.0 - a.r_bar * b.r
    if np.any(np.abs(denom) < _SINGULAR_DENOM):
        raise SingularCompositionError("resonant composition: |1 - r_bar_a * r_b| < 1e-14")
    t = a.t * b.t / denom
    r = a.r + b.r * a.t * a.t / denom
    r_bar = b.r_bar + a.r_bar * b.t * b.t / denom
    return TwoPortScattering(r, r_bar, t, a.axis, a.freq)


def transfer_from_scattering(s):
    """T = (1/t) [[t^2 - r r_bar, r], [-r_bar, 1]]; requires scalar amplitudes."""
    if np.any(np.abs(s.t) < _MIN_TRANSMISSION):
        raise SingularCompositionError("transmission too small for a transfer matrix")
    m = np.array([[s.t * s.t - s.r * s.r_bar, s.r], [-s.r_bar, 1.0]]) / s.t
    return TransferMatrix(m, s.axis, s.freq)


def scattering_from_transfer(T):
    """Inverse of transfer_from_scattering: t = 1/T22, r = T12/T22, r_bar = -T21/T22."""
    t22 = T.m[1, 1]
    if np.abs(t22) < _SINGULAR_DENOM:
        raise SingularCompositionError("T[1,1] = 0: singular transfer matrix")
    return TwoPortScattering(T.m[0, 1] / t22, -T.m[1, 0] / t22, 1.0 / t22, T.axis, T.freq)


def impedance_from_scattering(s):
    """Z = (1 + S)(1 - S)^-1; raises if S has a unit eigenvalue."""
    S = s.s_matrix.astype(complex)
    one = np.eye(2)
    if abs(np.linalg.det(one - S)) < _SINGULAR_DENOM:
        raise SingularCompositionError("1 - S is singular: no impedance representation")
    return ImpedanceMatrix((one + S) @ np.linalg.inv(one - S))


# ---------------------------------------------------------------------------
# mirror stacks

class MirrorStack:
    """Base interface: amplitudes on either axis plus axis-support queries."""

    def amplitudes_imag(self, p):
        raise NotImplementedError

    def amplitudes_real(self, omega):
        raise UnsupportedAxisError(f"{type(self).__name__} has no real-axis amplitudes")

    def supports_real_axis(self):
        return False

    def domain_imag(self):
        return (0.0, math.inf)


@dataclass(frozen=True)
class LayeredMirror(MirrorStack):
    """Ordered left-to-right pile of dielectric slabs, composed by cascading."""

    slabs: tuple[Slab, ...]

    def __post_init__(self):
        object.__setattr__(self, "slabs", tuple(self.slabs))

    def amplitudes_imag(self, p):
        acc = identity_scattering(AXIS_IMAG, p)
        for slab in self.slabs:
            acc = compose(acc, slab_amplitudes_imag(slab, p))
        return acc

    def amplitudes_real(self, omega):
        acc = identity_scattering(AXIS_REAL, omega)
        for slab in self.slabs:
            acc = compose(acc, slab_amplitudes_real(slab, omega))
        return acc

    def supports_real_axis(self):
        return all(s.model.supports_real_axis() for s in self.slabs)

    def domain_imag(self):
        lo, hi = 0.0, math.inf
        for s in self.slabs:
            a, b = s.model.domain_imag()
            lo, hi = max(lo, a), min(hi, b)
        return (lo, hi)


@dataclass(frozen=True)
class PerfectMirror(MirrorStack):
    """Ideal reflector: r = r_bar = -1, t = 0 at every frequency."""

    def amplitudes_imag(self, p):
        one = np.ones(np.shape(p)) if np.ndim(p) else 1.0
        return TwoPortScattering(-one, -one, 0.0 * one, AXIS_IMAG, _scalar_or_array(p))

    def amplitudes_real(self, omega):
        one = np.ones(np.shape(omega)) if np.ndim(omega) else 1.0
        return TwoPortScattering(-one, -one, 0.0 * one, AXIS_REAL, _scalar_or_array(omega))

    def supports_real_axis(self):
        return True


@dataclass(frozen=True)
class ConstantMirror(MirrorStack):
    """Frequency-independent reflectivity eta with zero transmission.

    |eta| <= 1 is enforced at construction; ``unchecked=True`` skips the bound
    so that check_passivity can be pointed at a gain model.
    """

    eta: float
    unchecked: bool = False

    def __post_init__(self):
        if not self.unchecked and abs(self.eta) > 1.0:
            raise ValueError("constant reflectivity requires |eta| <= 1")

    def amplitudes_imag(self, p):
        one = np.ones(np.shape(p)) if np.ndim(p) else 1.0
        return TwoPortScattering(self.eta * one, self.eta * one, 0.0 * one, AXIS_IMAG, _scalar_or_array(p))

    def amplitudes_real(self, omega):
        one = np.ones(np.shape(omega)) if np.ndim(omega) else 1.0
        return TwoPortScattering(self.eta * one, self.eta * one, 0.0 * one, AXIS_REAL, _scalar_or_array(omega))

    def supports_real_axis(self):
        return True


@dataclass(frozen=True)
class MagneticMirror(MirrorStack):
    """Sign-flipped reflections of a dielectric base stack (illustrative model).

    Pairing it with its dielectric base makes the roundtrip product negative,
    which is the standard route to a repulsive force.
    """

    base: LayeredMirror

    def _flip(self, s):
        return TwoPortScattering(-s.r, -s.r_bar, s.t, s.axis, s.freq)

    def amplitudes_imag(self, p):
        return self._flip(self.base.amplitudes_imag(p))

    def amplitudes_real(self, omega):
        return self._flip(self.base.amplitudes_real(omega))

    def supports_real_axis(self):
        return self.base.supports_real_axis()

    def domain_imag(self):
        return self.base.domain_imag()


@dataclass(frozen=True)
class NarrowBandMirror(MirrorStack):
    """Toy mirror with r(i p) = -theta * min(p, cutoff), t = 0.

    The default cutoff 1/theta clamps |r| at 1; a custom cutoff must keep
    theta * cutoff <= 1.  Defined on the imaginary axis (real p) only.
    """

    theta: float
    cutoff: float | None = None

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError("theta must be >= 0")
        cut = self.cutoff
        if cut is None:
            cut = math.inf if self.theta == 0 else 1.0 / self.theta
        if cut <= 0:
            raise ValueError("cutoff must be > 0")
        if self.theta * cut > 1.0 + 1e-12:
            raise ValueError("theta * cutoff must be <= 1 to keep |r| <= 1")
        object.__setattr__(self, "cutoff", cut)

    def amplitudes_imag(self, p):
        p = np.asarray(p, dtype=float)
        if np.any(p < 0):
            raise ValueError("imaginary-axis frequency p must be >= 0")
        r = -self.theta * np.minimum(p, self.cutoff)
        if p.ndim == 0:
            r = float(r)
        return TwoPortScattering(r, r, 0.0 * r, AXIS_IMAG, _scalar_or_array(p))


def stack_amplitudes(stack, p=None, omega=None):
    """Amplitudes of a full mirror stack at omega = i*p (``p=``) or real omega (``omega=``)."""
    if (p is None) == (omega is None):
        raise ValueError("provide exactly one of p= or omega=")
    return stack.amplitudes_imag(p) if omega is None else stack.amplitudes_real(omega)


# ---------------------------------------------------------------------------
# passivity

def default_passivity_grid(stack=None):
    """Real-p log grid spanning the stack's imaginary-axis domain (plus p = 0)."""
    grid = np.logspace(-6.0, 4.0, 51)
    lo, hi = (0.0, math.inf) if stack is None else stack.domain_imag()
    grid = grid[(grid >= lo) & (grid <= hi)]
    if lo == 0.0:
        grid = np.concatenate([[0.0], grid])
    return grid


@dataclass(frozen=True)
class PassivityReport:
    passed: bool
    min_eigenvalue: float
    worst_point: complex
    max_abs_reflection: float
    violations: tuple[tuple[complex, float], ...]

    def __bool__(self):
        return self.passed


def check_passivity(stack, grid=None, tol=1e-10):
    """Evaluate the eigenvalues of 1 - S S^dagger over a grid of p with Re p >= 0.

    Passes iff the smallest eigenvalue is >= -tol at every point.  Also
    reports the largest reflection modulus seen, the quantity that controls
    cavity stability when two such mirrors face each other.
    """
    if grid is None:
        grid = default_passivity_grid(stack)
    grid = np.asarray(grid)
    if np.any(np.real(grid) < 0):
        raise ValueError("passivity grid must lie in the closed right half-plane Re p >= 0")
    min_eig = math.inf
    worst = None
    max_refl = 0.0
    violations = []
    for point in grid:
        pt = complex(point) if np.iscomplexobj(grid) else float(np.real(point))
        s = stack.amplitudes_imag(pt)
        S = s.s_matrix.astype(complex)
        eigs = np.linalg.eigvalsh(np.eye(2) - S @ S.conj().T)
        low = float(eigs[0])
        max_refl = max(max_refl, float(abs(s.r)), float(abs(s.r_bar)))
        if low < min_eig:
            min_eig, worst = low, pt
        if low < -tol:
            violations.append((pt, low))
    return PassivityReport(
        passed=not violations,
        min_eigenvalue=min_eig,
        worst_point=worst,
        max_abs_reflection=max_refl,
        violations=tuple(violations[:10]),
    )
