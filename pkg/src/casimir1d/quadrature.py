"""Adaptive panel quadrature with an embedded 7/15-point Gauss pair.

The force integrands are smooth and exponentially damped but can carry sharp
features near the origin (optically thick mirrors), so panels are seeded
geometrically toward the left endpoint and refined where the embedded-pair
error estimate is largest.  The integrand callback must accept a numpy array
of abscissae; every refinement round evaluates all new panels in one batched
call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError

__all__ = ["QuadratureSpec", "adaptive_panels"]

_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)
_NODES = np.concatenate([_X15, _X7])  # 22 nodes per panel, [-1, 1]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the imaginary-frequency force integrals.

    ``u_max`` truncates the substituted integral over u = 2*p*tau; the
    discarded tail is bounded analytically and added to the error estimate.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 0.0
    max_subdivisions: int = 400
    u_max: float = 60.0

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_subdivisions < 8 or self.u_max <= 0:
            raise ValueError("max_subdivisions must be >= 8 and u_max > 0")


def _evaluate_panels(f, lo, hi):
    """Return (value, error) per panel from one batched integrand call."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    y = np.asarray(f(x), dtype=float).reshape(len(lo), len(_NODES))
    if not np.all(np.isfinite(y)):
        raise AccuracyError("integrand returned a non-finite value")
    vals = half * (y[:, :15] @ _W15)
    coarse = half * (y[:, 15:] @ _W7)
    return vals, np.abs(vals - coarse)


def adaptive_panels(f, a, b, rel_tol, abs_tol=0.0, max_panels=400, seed_panels=8):
    """Integrate ``f`` over [a, b]; returns (value, error_estimate).

    Panels are seeded geometrically toward ``a`` (dyadic subdivision of the
    left half), then the panels with the largest embedded-pair errors are
    split until the summed error meets max(abs_tol, rel_tol*|integral|).
    Raises AccuracyError (carrying the best estimate) if ``max_panels`` is
    reached first.
    """
    if not b > a:
        raise ValueError("integration bounds must satisfy b > a")
    edges = [a + (b - a) * 2.0 ** (-k) for k in range(seed_panels, 0, -1)]
    edges = np.array([a] + edges + [b])
    lo, hi = edges[:-1], edges[1:]
    vals, errs = _evaluate_panels(f, lo, hi)
    lo, hi, vals, errs = list(lo), list(hi), list(vals), list(errs)

    while True:
        total = sum(vals)
        total_err = sum(errs)
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol:
            return total, total_err
        if len(lo) >= max_panels:
            raise AccuracyError(
                f"quadrature did not converge with {len(lo)} panels "
                f"(error {total_err:.3e} > tolerance {tol:.3e})",
                best_estimate=total,
                error_estimate=total_err,
            )
        # split every panel holding more than its equidistributed share
        share = tol / (2.0 * len(lo))
        split = [i for i, e in enumerate(errs) if e > share]
        split.sort(key=lambda i: errs[i], reverse=True)
        split = split[: max(1, max_panels - len(lo))]
        new_lo, new_hi = [], []
        for i in split:
            m = 0.5 * (lo[i] + hi[i])
            new_lo += [lo[i], m]
            new_hi += [m, hi[i]]
        child_vals, child_errs = _evaluate_panels(f, new_lo, new_hi)
        for i in sorted(split, reverse=True):
            del lo[i], hi[i], vals[i], errs[i]
        lo += new_lo
        hi += new_hi
        vals += list(child_vals)
        errs += list(child_errs)
