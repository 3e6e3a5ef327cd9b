"""Closed-form zero-energy ground state and its probability bookkeeping.

For b = beta*r0^2 > 1 the supercharge annihilates exactly one normalizable
state, an m = 0 s-wave living in the (phi, +) sector:

    phi(r) = A exp(-beta r^2 / 2)   (r <= r0)
    phi(r) = B r^(-b)               (r >= r0)

Continuity (value and derivative give the same condition) fixes
B = A exp(-b/2) r0^b, and unit norm under the planar measure 2 pi r dr fixes

    |A|^2 = beta (b-1) / (pi [ (b-1)(1 - e^-b) + b e^-b ]),

which is the e^(b/2)-free rewriting of the sinh form and avoids overflow at
large b. The ratio of exterior to interior probability

    R_b = b e^-b / ( (b-1)(1 - e^-b) )

diverges as b -> 1+ (the state flattens out of the cylinder) and decays with b.

Window probabilities use closed-form antiderivatives, including the exact
power-law tail to infinity; adaptive quadrature is a cross-check only.
GroundState is immutable; all queries are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, UnbrokenSusyViolation
from .model import (
    Component,
    CylinderConfig,
    SectorLabel,
    Spin,
    SusyReport,
    check_unbroken_susy,
)

_GROUND_SECTOR = SectorLabel(Component.PHI, Spin.PLUS)


def _a_sq_closed_form(beta: float, b: float) -> float:
    return beta * (b - 1.0) / (math.pi * ((b - 1.0) * (1.0 - math.exp(-b)) + b * math.exp(-b)))


def _ratio_closed_form(b: float) -> float:
    return b * math.exp(-b) / ((b - 1.0) * (1.0 - math.exp(-b)))


@dataclass(frozen=True)
class GroundState:
    """Normalized zero-mode. a_sq = |A|^2, b_const = B (both taken real positive)."""

    cfg: CylinderConfig
    a_sq: float
    b_const: float
    sector: SectorLabel = _GROUND_SECTOR

    @property
    def a_const(self) -> float:
        return math.sqrt(self.a_sq)

    @property
    def b(self) -> float:
        return self.cfg.b

    def amplitude(self, r):
        """phi(r); accepts scalars or arrays."""
        arr = np.asarray(r, dtype=float)
        if np.any(arr < 0.0):
            raise DomainError("radius must be non-negative")
        beta, r0, bb = self.cfg.beta, self.cfg.r0, self.cfg.b
        inner = self.a_const * np.exp(-beta * arr ** 2 / 2.0)
        # clamp the power-law base at r0: the interior branch masks those entries
        outer = self.b_const * np.power(np.maximum(arr, r0), -bb)
        out = np.where(arr <= r0, inner, outer)
        return float(out) if np.isscalar(r) or arr.ndim == 0 else out

    def amplitude_deriv(self, r):
        """phi'(r), analytic on each branch."""
        arr = np.asarray(r, dtype=float)
        if np.any(arr < 0.0):
            raise DomainError("radius must be non-negative")
        beta, r0, bb = self.cfg.beta, self.cfg.r0, self.cfg.b
        inner = -beta * arr * self.a_const * np.exp(-beta * arr ** 2 / 2.0)
        outer = -bb * self.b_const * np.power(np.maximum(arr, r0), -bb - 1.0)
        out = np.where(arr <= r0, inner, outer)
        return float(out) if np.isscalar(r) or arr.ndim == 0 else out


def build_ground_state(cfg: CylinderConfig) -> GroundState:
    """Construct the normalized zero-mode; refuses configurations with b <= 1."""
    report = check_unbroken_susy(cfg)
    if not report.satisfied:
        raise UnbrokenSusyViolation(report)
    beta, b, r0 = cfg.beta, cfg.b, cfg.r0
    a_sq = _a_sq_closed_form(beta, b)
    b_const = math.sqrt(a_sq) * math.exp(-b / 2.0) * r0 ** b
    return GroundState(cfg=cfg, a_sq=a_sq, b_const=b_const)


def density(gs: GroundState, r):
    """Probability density |phi(r)|^2; continuous and C^1 at r0, non-increasing."""
    amp = gs.amplitude(r)
    return amp * amp if np.isscalar(amp) else np.square(amp)


def probability_window(gs: GroundState, r1: float, r2: float) -> float:
    """W[r1, r2] = 2 pi int_{r1}^{r2} |phi|^2 r dr via closed-form antiderivatives.

    r2 may be math.inf; the exterior tail integrates exactly to
    R^(2-2b)/(2b-2). r1 > r2 is a domain error.
    """
    if r1 < 0.0 or r1 > r2:
        raise DomainError(f"need 0 <= r1 <= r2, got r1={r1}, r2={r2}")
    beta, r0, b = gs.cfg.beta, gs.cfg.r0, gs.cfg.b

    def interior(lo: float, hi: float) -> float:
        # 2 pi A^2 int r e^{-beta r^2} dr
        return gs.a_sq * math.pi / beta * (math.exp(-beta * lo ** 2) - math.exp(-beta * hi ** 2))

    def exterior(lo: float, hi: float) -> float:
        # 2 pi B^2 int r^{1-2b} dr, exact to infinity for b > 1
        bsq = gs.b_const ** 2
        lo_term = lo ** (2.0 - 2.0 * b)
        hi_term = 0.0 if math.isinf(hi) else hi ** (2.0 - 2.0 * b)
        return math.pi * bsq * (lo_term - hi_term) / (b - 1.0)

    lo, hi = r1, r2
    total = 0.0
    if lo < r0:
        total += interior(lo, min(hi, r0))
    if hi > r0:
        total += exterior(max(lo, r0), hi)
    return total


def quadrature_norm(gs: GroundState) -> float:
    """Total probability by adaptive quadrature, split at the r0 kink.

    Independent cross-check of the closed-form normalization; the integrand is
    piecewise smooth so each half is handled at abs tolerance 1e-12.
    """
    f = lambda r: 2.0 * math.pi * r * float(density(gs, r))
    inside, _ = quad(f, 0.0, gs.cfg.r0, epsabs=1e-12, epsrel=1e-13, limit=200)
    outside, _ = quad(f, gs.cfg.r0, math.inf, epsabs=1e-12, epsrel=1e-13, limit=200)
    return inside + outside


def ratio_outside_inside(gs: GroundState) -> float:
    """R_b = W[r0, inf) / W[0, r0]; diverges as b -> 1+, strictly decreasing."""
    return _ratio_closed_form(gs.cfg.b)


@dataclass(frozen=True)
class Figure1Table:
    """Density profiles on a common r/r0 grid, one column per b value."""

    r_over_r0: np.ndarray
    b_values: tuple
    densities: np.ndarray  # shape (len(b_values), len(r_over_r0))


def figure1_profile(b_values, r_over_r0=None) -> Figure1Table:
    """Normalized density profiles |phi|^2 vs r/r0 for each b.

    Every profile carries unit total probability under the 2 pi r dr measure.
    Any b <= 1 is rejected, naming the offending value.
    """
    if r_over_r0 is None:
        r_over_r0 = np.linspace(0.0, 5.0, 501)
    r_over_r0 = np.asarray(r_over_r0, dtype=float)
    rows = []
    for b in b_values:
        if float(b) <= 1.0:
            raise UnbrokenSusyViolation(SusyReport(satisfied=False, b=float(b), margin=float(b) - 1.0))
        cfg = CylinderConfig.from_b(float(b))
        gs = build_ground_state(cfg)
        rows.append(density(gs, r_over_r0 * cfg.r0))
    return Figure1Table(
        r_over_r0=r_over_r0,
        b_values=tuple(float(b) for b in b_values),
        densities=np.vstack(rows),
    )
