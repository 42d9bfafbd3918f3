"""
Core Model
==========
Particles, couplings, channels, unit conversions and free two-body kinematics.

Everything inside the engine is expressed in natural units (hbar = c = 1) with
energies measured in a reference mass scale chosen by the caller, usually the
lighter constituent. Conversions to MeV, MHz and meV happen on output.
"""

import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Dict, Any

from functions.errors import DomainError


FINE_STRUCTURE = 0.0072973525698
HBAR_C_MEV_FM = 197.3269804
MEV_PER_U = 931.49410242
PLANCK_MEV_S = 4.135667696e-21


class SpinKind(str, Enum):
    SCALAR = "scalar"
    FERMION = "fermion"


class SystemKind(str, Enum):
    SCALAR_SCALAR = "SS"
    SCALAR_FERMION = "SF"
    FERMION_FERMION = "FF"


class Parity(str, Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class ParticleSpec:
    """One constituent: mass in the working units, spin and anomalous-moment factor."""
    mass: float
    spin: SpinKind = SpinKind.FERMION
    kappa: float = 1.0
    name: str = ""

    def __post_init__(self):
        if not self.mass > 0 or not math.isfinite(self.mass):
            raise DomainError(f"Particle mass must be positive, got {self.mass}", self.mass)
        if not math.isfinite(self.kappa):
            raise DomainError(f"Anomalous-moment factor must be finite, got {self.kappa}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class InteractionSpec:
    """Vector Coulomb strength alpha, scalar string tension sigma, Breit coupling g.

    The Breit coupling only enters first-order shifts, never the radial solve.
    """
    alpha: float = 0.0
    sigma: float = 0.0
    g: float = 0.0

    def __post_init__(self):
        if self.alpha < 0 or not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be a finite non-negative number, got {self.alpha}")
        if self.sigma < 0 or not math.isfinite(self.sigma):
            raise DomainError(f"sigma must be a finite non-negative number, got {self.sigma}")
        if not math.isfinite(self.g):
            raise DomainError(f"Breit coupling must be finite, got {self.g}")

    @property
    def is_cornell(self) -> bool:
        return self.sigma > 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ChannelSpec:
    """Which radial problem to solve.

    j is the orbital l for SS, a half-integer total angular momentum for SF and an
    integer total angular momentum for FF. Parity is ignored for SS.
    """
    kind: SystemKind
    j: float
    parity: Parity = Parity.I

    def __post_init__(self):
        twice = 2 * self.j
        if self.j < 0 or abs(twice - round(twice)) > 1e-12:
            raise DomainError(f"Angular momentum must be a non-negative half-integer, got {self.j}")
        if self.kind == SystemKind.SCALAR_FERMION:
            if round(twice) % 2 != 1:
                raise DomainError(f"Scalar-fermion channels need half-integer j, got {self.j}")
        elif round(twice) % 2 != 0:
            raise DomainError(f"{self.kind.value} channels need integer j, got {self.j}")

    @property
    def label(self) -> str:
        if self.kind == SystemKind.SCALAR_SCALAR:
            return f"SS l={int(self.j)}"
        j_text = f"{int(round(2 * self.j))}/2" if self.kind == SystemKind.SCALAR_FERMION else str(int(self.j))
        return f"{self.kind.value} j={j_text} {self.parity.value}"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "j": self.j, "parity": self.parity.value}


@dataclass(frozen=True)
class KinematicState:
    """Classical two-body state in the zero-momentum frame."""
    lambda_: float
    L: float
    q0: float

    @classmethod
    def from_invariant_mass(cls, lambda_: float, L: float, m1: float, m2: float) -> "KinematicState":
        return cls(lambda_=lambda_, L=L, q0=relative_energy_q0(lambda_, m1, m2))


def _check_masses(*masses: float) -> None:
    for m in masses:
        if not m > 0:
            raise DomainError(f"Masses must be positive, got {m}", m)


def reduced_mass(m1: float, m2: float) -> float:
    _check_masses(m1, m2)
    return m1 * m2 / (m1 + m2)


def free_total_energy(q: float, m1: float, m2: float) -> float:
    """Invariant mass of two free particles with relative momentum q."""
    if q < 0:
        raise DomainError(f"Momentum magnitude must be non-negative, got {q}", q)
    if m1 < 0 or m2 < 0:
        raise DomainError("Masses must be non-negative")
    return math.hypot(q, m1) + math.hypot(q, m2)


def relative_energy_q0(lambda_: float, m1: float, m2: float) -> float:
    if lambda_ == 0:
        raise DomainError("Invariant mass must be non-zero", lambda_)
    return (m1 - m2) * (m1 + m2) / (2.0 * lambda_)


def binding_energy(lambda_: float, m1: float, m2: float) -> float:
    return lambda_ - m1 - m2


def invariant_mass(binding: float, m1: float, m2: float) -> float:
    return m1 + m2 + binding


def bohr_scale(m1: float, m2: float, alpha: float) -> float:
    """Bohr-like radius 1/(m_R alpha); infinite without Coulomb attraction."""
    if alpha <= 0:
        return math.inf
    return 1.0 / (reduced_mass(m1, m2) * alpha)


def confinement_scale(m1: float, m2: float, sigma: float) -> float:
    """Length scale (2 m_R sigma)^(-1/3) of a linear confining well."""
    if sigma <= 0:
        return math.inf
    return (2.0 * reduced_mass(m1, m2) * sigma) ** (-1.0 / 3.0)


def natural_length_scale(m1: float, m2: float, alpha: float, sigma: float) -> float:
    """The smaller of the Coulomb and confinement scales."""
    scale = min(bohr_scale(m1, m2, alpha), confinement_scale(m1, m2, sigma))
    if not math.isfinite(scale):
        return 1.0 / reduced_mass(m1, m2)
    return scale


# === UNIT CONVERSIONS ===

def mev_from_u(mass_u: float) -> float:
    return mass_u * MEV_PER_U


def u_from_mev(mass_mev: float) -> float:
    return mass_mev / MEV_PER_U


def natural_from_mev(value_mev: float, scale_mev: float) -> float:
    return value_mev / scale_mev


def mev_from_natural(value: float, scale_mev: float) -> float:
    return value * scale_mev


def sigma_mev2_from_gev_per_fm(sigma_gev_fm: float) -> float:
    """String tension GeV/fm -> MeV^2 (multiply by 1000 and by hbar*c)."""
    return sigma_gev_fm * 1000.0 * HBAR_C_MEV_FM


def frequency_mhz_from_mev(energy_mev: float) -> float:
    return energy_mev / PLANCK_MEV_S / 1.0e6


def mev_from_frequency_mhz(frequency_mhz: float) -> float:
    return frequency_mhz * 1.0e6 * PLANCK_MEV_S
