"""Physical configuration of the charged-cylinder trap for a polarized neutral particle.

An infinite cylinder of radius r0 carries uniform charge density rho. A spin-1/2
particle with no charge but an anomalous magnetic moment kappa_n, polarized along
the cylinder axis, moves in the transverse plane. The radial electric field

    E(r) = rho*r/2           (r <= r0)
    E(r) = rho*r0^2/(2r)     (r >= r0)

couples to the moment through eta = e*kappa_n/(2*M) and the whole planar problem
collapses, after rescaling, onto the single dimensionless combination

    b = beta*r0^2,   beta = rho*eta/2.

A normalizable zero-energy ground state exists iff b > 1; this module owns that
constraint check, the field profile and the minimum-line-charge estimate in SI
units. Everything here is pure and immutable; safe to share across threads.

Units: internal computations use natural units (hbar = c = 1). SI appears only
at the `lambda_min_si` boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConfigurationError, DomainError

# Physical constants (CODATA 2018); overridable per call in lambda_min_si.
NEUTRON_MASS_KG = 1.67492749804e-27
ELEMENTARY_CHARGE_C = 1.602176634e-19  # exact by SI definition
SPEED_OF_LIGHT_M_S = 299792458.0  # exact
# Magnitude of the neutron magnetic moment in nuclear magnetons. For a neutral
# particle the moment is entirely anomalous. CODATA: mu_n/mu_N = -1.91304273;
# the traditional rounded value 1.913 is kept as the default.
KAPPA_NEUTRON = 1.913

# Reference figure for the minimum line charge quoted in the literature for the
# neutron (C/cm). The conversion path behind it is not published; see
# lambda_min_si for the independently derived value and the discrepancy factor.
LAMBDA_MIN_REFERENCE_C_PER_CM = 20.62e-3


class Component(str, Enum):
    """Upper (phi) or lower (chi) two-spinor block of the stationary state."""

    PHI = "phi"
    CHI = "chi"


class Spin(str, Enum):
    """Spin projection selecting the sign of the angular coupling term."""

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class SectorLabel:
    """One of the four decoupled radial problems.

    The component fixes the sign with which the field-gradient term enters the
    second-order equation (-eta for phi, +eta for chi); the spin selects the
    sign of m in the (1 +/- m) shift. The map is total: every (component, spin)
    pair has well-defined signs.
    """

    component: Component
    spin: Spin

    @property
    def grad_sign(self) -> float:
        """Sign multiplying eta*(div E + angular term): -1 for phi, +1 for chi."""
        return -1.0 if self.component is Component.PHI else +1.0

    @property
    def spin_sign(self) -> float:
        """Sign of m in the (1 +/- m) interior shift: +1 for plus, -1 for minus."""
        return +1.0 if self.spin is Spin.PLUS else -1.0

    @classmethod
    def parse(cls, text: str) -> "SectorLabel":
        """Parse 'phi+', 'phi-', 'chi+', 'chi-' (also accepts 'phi,plus' style)."""
        t = text.strip().lower().replace(",", "").replace("plus", "+").replace("minus", "-")
        if len(t) < 2 or t[-1] not in "+-":
            raise ConfigurationError(f"unrecognized sector label: {text!r}")
        comp, sign = t[:-1], t[-1]
        if comp not in ("phi", "chi"):
            raise ConfigurationError(f"unrecognized sector component: {text!r}")
        return cls(Component(comp), Spin.PLUS if sign == "+" else Spin.MINUS)

    def __str__(self) -> str:
        return f"{self.component.value}{'+' if self.spin is Spin.PLUS else '-'}"


ALL_SECTORS = (
    SectorLabel(Component.PHI, Spin.PLUS),
    SectorLabel(Component.PHI, Spin.MINUS),
    SectorLabel(Component.CHI, Spin.PLUS),
    SectorLabel(Component.CHI, Spin.MINUS),
)


@dataclass(frozen=True)
class CylinderConfig:
    """Charged-cylinder configuration in natural units.

    rho     : charge per unit volume (1/length^3 after absorbing the charge unit)
    r0      : cylinder radius (length)
    kappa_n : anomalous magnetic moment (dimensionless)
    mass    : particle mass (1/length)
    charge  : elementary charge in the chosen natural-unit convention

    The derived couplings are properties, never stored: eta = charge*kappa_n/(2*mass),
    beta = rho*eta/2, b = beta*r0^2 and lambda_lin = rho*pi*r0^2. beta > 0 is
    required; the attractive zero-mode sector presumes it, and silently flipping
    sectors on a sign change would be worse than refusing.
    """

    rho: float
    r0: float
    kappa_n: float
    mass: float
    charge: float = 1.0

    def __post_init__(self) -> None:
        if not (self.r0 > 0.0):
            raise ConfigurationError(f"r0 must be positive, got {self.r0}")
        if not (self.mass > 0.0):
            raise ConfigurationError(f"mass must be positive, got {self.mass}")
        if not (self.beta > 0.0):
            raise ConfigurationError(
                f"beta = rho*eta/2 must be positive, got {self.beta:.6g} "
                "(rho, kappa_n and charge must combine to an attractive coupling)"
            )

    @property
    def eta(self) -> float:
        return self.charge * self.kappa_n / (2.0 * self.mass)

    @property
    def beta(self) -> float:
        return self.rho * self.eta / 2.0

    @property
    def b(self) -> float:
        return self.beta * self.r0 ** 2

    @property
    def lambda_lin(self) -> float:
        return self.rho * math.pi * self.r0 ** 2

    @classmethod
    def from_b(cls, b: float, r0: float = 1.0) -> "CylinderConfig":
        """Dimensionless constructor: fixes eta = 1 so that beta = b/r0^2."""
        return cls(rho=2.0 * b / r0 ** 2, r0=r0, kappa_n=2.0, mass=1.0, charge=1.0)


def evaluate_field(cfg: CylinderConfig, r: float) -> float:
    """Radial electric field magnitude at radius r.

    rho*r/2 inside the cylinder, rho*r0^2/(2r) outside; continuous at r0.
    """
    if r < 0.0:
        raise DomainError(f"radius must be non-negative, got {r}")
    if r <= cfg.r0:
        return cfg.rho * r / 2.0
    return cfg.rho * cfg.r0 ** 2 / (2.0 * r)


def field_divergence(cfg: CylinderConfig, r: float) -> float:
    """div E at radius r: the charge density inside the cylinder, zero outside."""
    if r < 0.0:
        raise DomainError(f"radius must be non-negative, got {r}")
    return cfg.rho if r <= cfg.r0 else 0.0


@dataclass(frozen=True)
class SusyReport:
    """Result of the zero-mode existence check (a report, not an exception)."""

    satisfied: bool
    b: float
    margin: float


def check_unbroken_susy(cfg: CylinderConfig) -> SusyReport:
    """Check b = beta*r0^2 > 1.

    The boundary b = 1 is excluded: the exterior normalization integral of
    r^(-2b+1) diverges there.
    """
    b = cfg.b
    return SusyReport(satisfied=b > 1.0, b=b, margin=b - 1.0)


@dataclass(frozen=True)
class LambdaMinResult:
    """Minimum line charge for a normalizable ground state, with provenance.

    value_c_per_cm is the independently converted figure; the literature quotes
    ``paper_reference_c_per_cm`` for the neutron without stating its unit path,
    and the two disagree by ``discrepancy_factor`` (close to 3 for the neutron).
    Both are reported; neither is forced onto the other.
    """

    value_c_per_cm: float
    value_esu_per_cm: float
    paper_reference_c_per_cm: float
    discrepancy_factor: float
    conversion_path: str
    mass_kg: float
    kappa: float


def lambda_min_si(mass_kg: float = NEUTRON_MASS_KG, kappa: float = KAPPA_NEUTRON) -> LambdaMinResult:
    """Minimum |lambda| = 4*pi*M*c^2/|e*kappa| converted to C/cm.

    Conversion path (recorded in the result): the formula is evaluated in
    Gaussian units, where energy/charge carries esu/cm directly
    [erg/esu = g^(1/2) cm^(1/2) s^(-1) = esu/cm], then converted to coulomb
    per centimetre with 1 C = c_cgs/10 esu.
    """
    if mass_kg <= 0.0:
        raise DomainError(f"mass must be positive, got {mass_kg}")
    if kappa == 0.0:
        raise DomainError("kappa must be non-zero: the coupling vanishes with it")
    c_cgs = SPEED_OF_LIGHT_M_S * 100.0  # cm/s
    rest_energy_erg = mass_kg * SPEED_OF_LIGHT_M_S ** 2 * 1.0e7  # J -> erg
    charge_esu = ELEMENTARY_CHARGE_C * c_cgs / 10.0  # C -> statC
    lam_esu_per_cm = 4.0 * math.pi * rest_energy_erg / (charge_esu * abs(kappa))
    lam_c_per_cm = lam_esu_per_cm / (c_cgs / 10.0)  # statC/cm -> C/cm
    path = (
        "4*pi*M*c^2/|e*kappa| in Gaussian units: M*c^2 [J -> erg, x1e7], "
        "e [C -> esu, x c_cgs/10], giving esu/cm; then C/cm = esu/cm / (c_cgs/10)"
    )
    return LambdaMinResult(
        value_c_per_cm=lam_c_per_cm,
        value_esu_per_cm=lam_esu_per_cm,
        paper_reference_c_per_cm=LAMBDA_MIN_REFERENCE_C_PER_CM,
        discrepancy_factor=LAMBDA_MIN_REFERENCE_C_PER_CM / lam_c_per_cm,
        conversion_path=path,
        mass_kg=mass_kg,
        kappa=kappa,
    )
