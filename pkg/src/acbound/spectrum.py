"""Bound-level search by log-derivative matching at the cylinder surface.

Each sector (phi/chi, spin +/-) and angular momentum m defines a radial
problem. Inside the cylinder the regular solution is

    phi_<(r) = 1F1(a; |m|+1; beta r^2) r^|m| exp(-beta r^2/2),
    a = (|m|+1)/2 - eps_m/(4 beta),    eps_m = eps - shift,
    shift = s_g * 2 beta (1 + s_m m),

with s_g = -1 (phi) / +1 (chi) and s_m = +1 / -1 the spin sign. (The printed
closed form in the source literature carries 2*beta*r^2 as the 1F1 argument;
substituting back into the radial equation shows the argument must be
beta*r^2, and that is what is implemented — see the ODE residual tests.)
Outside, the eps < 0 solution decaying at infinity is K_l(sqrt(-eps) r) with
l = |m + s_g s_m b|; for eps > 0 the oscillatory (J, Y) pair is returned for
classification only, since those states are non-normalizable.

A level exists exactly where the dimensionless log-derivative mismatch

    F(eps) = r0 [phi'_</phi_<](r0) - r0 [phi'_>/phi_>](r0)

vanishes. F is sampled on an energy grid, sign changes are bracketed
(excluding log-derivative poles, flagged by a vanishing interior value) and
refined by bisection. An empty result is a physically valid outcome: the
supersymmetry algebra makes the Hamiltonian positive semidefinite, so whether
any eps < 0 root exists is treated as an empirical question, and the scans
come back empty — the zero mode is the only bound state, recovered here as
the eps -> 0- limit of F for m = 0.

All structures are immutable and the search is pure; per-(sector, m) scans
are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import specfun
from .errors import DegenerateBranchError, DomainError, UnbrokenSusyViolation
from .model import ALL_SECTORS, CylinderConfig, SectorLabel, check_unbroken_susy

EPS_EDGE_GUARD = 1e-8  # stay this far below eps = 0 (threshold region)
BISECT_F_TOL = 1e-10
BISECT_WIDTH_TOL = 1e-12
POLE_VALUE_RATIO = 1e-12  # interior value this small (vs derivative scale) flags a pole
EDGE_FRACTION = 0.05  # a root this close to eps_min triggers window widening


@dataclass(frozen=True)
class RadialProblem:
    """One decoupled radial eigenproblem: configuration, sector and m."""

    cfg: CylinderConfig
    sector: SectorLabel
    m: int

    @property
    def beta(self) -> float:
        return self.cfg.beta

    @property
    def b(self) -> float:
        return self.cfg.b

    @property
    def interior_shift(self) -> float:
        """Constant term s_g * 2 beta (1 + s_m m) of the interior potential."""
        return self.sector.grad_sign * 2.0 * self.beta * (1.0 + self.sector.spin_sign * self.m)

    def eps_m(self, eps: float) -> float:
        """Interior oscillator energy: eps minus the sector shift."""
        return eps - self.interior_shift

    def hyp_params(self, eps: float) -> tuple[float, float]:
        """(a, c) of the interior 1F1(a; c; beta r^2)."""
        am = abs(self.m)
        a = (am + 1.0) / 2.0 - self.eps_m(eps) / (4.0 * self.beta)
        return a, am + 1.0

    @property
    def l_ext(self) -> float:
        """Exterior Bessel order |m + s_g s_m b|.

        The exterior centrifugal coefficient is m(m -+ 2b) + b^2 = (m -+ b)^2,
        so only the absolute combination enters.
        """
        return abs(self.m + self.sector.grad_sign * self.sector.spin_sign * self.b)


def interior_solution(p: RadialProblem, eps: float, r: float) -> tuple[float, float]:
    """Regular interior solution and derivative at r <= r0, with C = 1.

    Negative m uses r^|m| for regularity while the (1 +/- m) shift keeps the
    signed m.
    """
    if r < 0.0 or r > p.cfg.r0 * (1.0 + 1e-12):
        raise DomainError(f"interior evaluation needs 0 <= r <= r0, got r={r}")
    am = abs(p.m)
    a, c = p.hyp_params(eps)
    beta = p.beta
    if r == 0.0:
        value = 1.0 if am == 0 else 0.0
        deriv = 1.0 if am == 1 else 0.0
        return value, deriv
    xi = beta * r * r
    f = specfun.hyp1f1(a, c, xi).value
    df_dr = specfun.hyp1f1_deriv(a, c, xi).value * 2.0 * beta * r
    env = r ** am * math.exp(-xi / 2.0)
    value = f * env
    deriv = (df_dr + f * (am / r - beta * r)) * env
    return value, deriv


@dataclass(frozen=True)
class ExteriorSolution:
    """Exterior solution at one radius.

    kind = 'bound': (value, derivative) is D*K_l with D = 1.
    kind = 'scattering': (value, derivative) is the J_l pair and
    (second_value, second_derivative) the Y_l pair; classification only.
    """

    kind: str
    value: float
    derivative: float
    second_value: float | None = None
    second_derivative: float | None = None


def exterior_solution(p: RadialProblem, eps: float, r: float) -> ExteriorSolution:
    """Exterior solution at r >= r0; eps = 0 belongs to the ground-state module."""
    if r < p.cfg.r0 * (1.0 - 1e-12):
        raise DomainError(f"exterior evaluation needs r >= r0, got r={r}")
    if eps == 0.0:
        raise DegenerateBranchError(
            "eps = 0 is the zero-mode branch; use the ground-state module for it"
        )
    l = p.l_ext
    if eps < 0.0:
        kappa = math.sqrt(-eps)
        z = kappa * r
        return ExteriorSolution(
            kind="bound",
            value=specfun.bessel_k(l, z).value,
            derivative=specfun.bessel_k_deriv(l, z).value * kappa,
        )
    k = math.sqrt(eps)
    z = k * r
    return ExteriorSolution(
        kind="scattering",
        value=specfun.bessel_j(l, z).value,
        derivative=specfun.bessel_j_deriv(l, z).value * k,
        second_value=specfun.bessel_y(l, z).value,
        second_derivative=specfun.bessel_y_deriv(l, z).value * k,
    )


def _matching_point(p: RadialProblem, eps: float) -> tuple[float, bool]:
    """(F(eps), pole_flag). A node of the interior solution at r0 poles the
    log-derivative; such points are flagged, never treated as roots."""
    r0 = p.cfg.r0
    iv, idv = interior_solution(p, eps, r0)
    ext = exterior_solution(p, eps, r0)
    pole = abs(iv) < POLE_VALUE_RATIO * (abs(idv) * r0 + abs(iv))
    if pole or iv == 0.0:
        return math.inf, True
    return r0 * idv / iv - r0 * ext.derivative / ext.value, False


def matching_mismatch(p: RadialProblem, eps: float) -> float:
    """Dimensionless log-derivative mismatch F(eps) at r0; zero at a level."""
    if eps >= 0.0:
        raise DomainError(f"matching is defined for eps < 0, got {eps}")
    f, pole = _matching_point(p, eps)
    return math.nan if pole else f


@dataclass(frozen=True)
class MatchingProfile:
    """Sampled mismatch over a strictly increasing eps < 0 grid."""

    problem: RadialProblem
    eps_grid: np.ndarray
    mismatch: np.ndarray
    pole_flags: np.ndarray
    brackets: tuple

    def __post_init__(self) -> None:
        if np.any(np.diff(self.eps_grid) <= 0.0):
            raise DomainError("eps grid must be strictly increasing")
        if np.any(self.eps_grid >= 0.0):
            raise DomainError("eps grid must be strictly negative")


def scan_mismatch(p: RadialProblem, eps_min: float, n_grid: int) -> MatchingProfile:
    """Sample F on [eps_min, -EPS_EDGE_GUARD] and record sign-change brackets."""
    if eps_min >= 0.0:
        raise DomainError(f"eps_min must be negative, got {eps_min}")
    if n_grid < 16:
        raise DomainError(f"n_grid must be at least 16, got {n_grid}")
    grid = np.linspace(eps_min, -EPS_EDGE_GUARD, n_grid)
    values = np.empty(n_grid)
    poles = np.zeros(n_grid, dtype=bool)
    for i, e in enumerate(grid):
        f, pole = _matching_point(p, float(e))
        values[i] = f
        poles[i] = pole
    brackets = []
    for i in range(n_grid - 1):
        if poles[i] or poles[i + 1]:
            continue  # a pole masquerades as a sign change; skip it
        if values[i] == 0.0:
            brackets.append((float(grid[i]), float(grid[i])))
        elif values[i] * values[i + 1] < 0.0:
            brackets.append((float(grid[i]), float(grid[i + 1])))
    return MatchingProfile(
        problem=p,
        eps_grid=grid,
        mismatch=values,
        pole_flags=poles,
        brackets=tuple(brackets),
    )


@dataclass(frozen=True)
class BoundState:
    """One quantized level, normalized to unit planar probability."""

    problem: RadialProblem
    eps: float
    interior_coeff: float
    exterior_coeff: float
    residual: float
    norm: float = 1.0

    def wavefunction(self, r: float) -> float:
        """Normalized radial amplitude at any r >= 0."""
        if r <= self.problem.cfg.r0:
            return self.interior_coeff * interior_solution(self.problem, self.eps, r)[0]
        return self.exterior_coeff * exterior_solution(self.problem, self.eps, r).value

    @property
    def e_over_m(self) -> float:
        """E/M from eps = E^2 - M^2; NaN if eps drags E^2 negative."""
        ratio_sq = 1.0 + self.eps / self.problem.cfg.mass ** 2
        return math.sqrt(ratio_sq) if ratio_sq >= 0.0 else math.nan


def _bisect_root(p: RadialProblem, lo: float, hi: float) -> tuple[float, float]:
    flo, _ = _matching_point(p, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid, pole = _matching_point(p, mid)
        if not pole and abs(fmid) <= BISECT_F_TOL:
            return mid, fmid
        if hi - lo <= BISECT_WIDTH_TOL:
            return mid, fmid
        if pole:
            # nudge the midpoint off the pole by shrinking from the lo side
            mid = lo + 0.45 * (hi - lo)
            fmid, pole = _matching_point(p, mid)
            if pole:
                return mid, math.inf
        if flo * fmid <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    mid = 0.5 * (lo + hi)
    return mid, _matching_point(p, mid)[0]


def _normalize(p: RadialProblem, eps: float) -> tuple[float, float]:
    """Continuity-matched (C, D) scaled to unit 2 pi r dr norm."""
    r0 = p.cfg.r0
    iv, _ = interior_solution(p, eps, r0)
    ev = exterior_solution(p, eps, r0).value
    d_over_c = iv / ev

    inside, _ = quad(
        lambda r: 2.0 * math.pi * r * interior_solution(p, eps, r)[0] ** 2,
        0.0, r0, epsabs=1e-12, epsrel=1e-13, limit=200,
    )
    outside, _ = quad(
        lambda r: 2.0 * math.pi * r * (d_over_c * exterior_solution(p, eps, r).value) ** 2,
        r0, math.inf, epsabs=1e-12, epsrel=1e-13, limit=200,
    )
    c = 1.0 / math.sqrt(inside + outside)
    return c, c * d_over_c


class BoundStateScan(list):
    """find_bound_states result: a list of BoundState with scan metadata."""

    def __init__(self, states, profile: MatchingProfile, warnings=()):
        super().__init__(states)
        self.profile = profile
        self.warnings = list(warnings)


def default_eps_min(p: RadialProblem) -> float:
    """Search depth -(b^2 + 4b)/r0^2: interior well depth scale plus margin."""
    b = p.b
    return -(b * b + 4.0 * b) / p.cfg.r0 ** 2


def find_bound_states(p: RadialProblem, eps_min: float | None = None, n_grid: int = 64) -> BoundStateScan:
    """All eps < 0 levels of one radial problem, sorted by eps.

    Samples F on [eps_min, -1e-8], brackets sign changes that are not
    log-derivative poles, bisects each to |F| <= 1e-10 or width <= 1e-12 and
    normalizes the resulting states. No brackets is a valid empty result. The
    window widens (factor 2, up to 3 times) whenever the deepest root sits in
    the lowest 5% of the window; if it still does, a boundary warning is
    attached to the result.
    """
    report = check_unbroken_susy(p.cfg)
    if not report.satisfied:
        raise UnbrokenSusyViolation(report)
    if eps_min is None:
        eps_min = default_eps_min(p)
    warnings: list[str] = []
    profile = scan_mismatch(p, eps_min, n_grid)
    for _ in range(3):
        roots_near_edge = [
            lo for lo, _ in profile.brackets if lo <= eps_min + EDGE_FRACTION * abs(eps_min)
        ]
        if not roots_near_edge:
            break
        eps_min *= 2.0
        profile = scan_mismatch(p, eps_min, n_grid)
    else:
        warnings.append(
            f"deepest bracket within {EDGE_FRACTION:.0%} of the search edge eps_min={eps_min:g}"
        )

    states = []
    for lo, hi in profile.brackets:
        eps_root, f_res = _bisect_root(p, lo, hi)
        if not math.isfinite(f_res):
            continue  # pole survived bracketing; not a root
        c, d = _normalize(p, eps_root)
        states.append(
            BoundState(
                problem=p,
                eps=eps_root,
                interior_coeff=c,
                exterior_coeff=d,
                residual=abs(f_res),
            )
        )
    states.sort(key=lambda s: s.eps)
    return BoundStateScan(states, profile, warnings)


@dataclass(frozen=True)
class SpectrumRow:
    sector: str
    m: int
    level: int
    eps: float
    e_over_m: float
    residual: float


@dataclass
class SpectrumTable:
    """Deterministically ordered scan over sectors and angular momenta."""

    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)


def scan_spectrum(
    cfg: CylinderConfig,
    m_range: tuple[int, int],
    sectors=None,
    eps_min: float | None = None,
    n_grid: int = 64,
) -> SpectrumTable:
    """Tabulate find_bound_states over sectors x m, deterministic ordering."""
    report = check_unbroken_susy(cfg)
    if not report.satisfied:
        raise UnbrokenSusyViolation(report)
    if sectors is None:
        sectors = ALL_SECTORS
    m_lo, m_hi = m_range
    if m_lo > m_hi:
        raise DomainError(f"empty m range: {m_range}")
    table = SpectrumTable(
        parameters={
            "b": cfg.b,
            "m_min": m_lo,
            "m_max": m_hi,
            "sectors": [str(s) for s in sectors],
            "eps_min": eps_min,
            "n_grid": n_grid,
        }
    )
    for sector in sectors:
        for m in range(m_lo, m_hi + 1):
            p = RadialProblem(cfg=cfg, sector=sector, m=m)
            scan = find_bound_states(p, eps_min=eps_min, n_grid=n_grid)
            for warning in scan.warnings:
                table.warnings.append(f"{sector} m={m}: {warning}")
            for level, st in enumerate(scan):
                table.rows.append(
                    SpectrumRow(
                        sector=str(sector),
                        m=m,
                        level=level,
                        eps=st.eps,
                        e_over_m=st.e_over_m,
                        residual=st.residual,
                    )
                )
    return table
