"""
Analytic Oracles
================
Closed-form spectra used as ground truth for the numerical engine:
Schroedinger, Klein-Gordon and Dirac Coulomb levels, the free two-body
spectrum and the confluent-Heun parameter map of the scalar-scalar equation.

Level formulas of the form m[-1 + (1 + x)^(-1/2)] lose digits in double
precision when x ~ 1e-5, so they are evaluated with mpmath.
"""

from dataclasses import dataclass, asdict
from typing import Dict, Any, List, Tuple

import mpmath

from functions.errors import DomainError


CONFIG = {
    "precision_digits": 40,
}

SOURCES = ("Schr", "KG", "Dirac", "Free")


@dataclass
class OracleLevel:
    """Binding energy of one closed-form level (rest masses excluded)."""
    n: int
    angular: float
    energy: float
    source: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def schrodinger_level(n: int, m_r: float, alpha: float) -> float:
    if n < 1:
        raise DomainError(f"Principal quantum number must be >= 1, got {n}", n)
    return -m_r * alpha * alpha / (2.0 * n * n)


def _coulomb_level(n_eff_offset: float, half_width: float, m: float, alpha: float) -> float:
    """m[-1 + (1 + alpha^2 (offset + sqrt(half_width^2 - alpha^2))^-2)^(-1/2)]."""
    with mpmath.workdps(CONFIG["precision_digits"]):
        a = mpmath.mpf(alpha)
        root = mpmath.sqrt(mpmath.mpf(half_width) ** 2 - a * a)
        denominator = mpmath.mpf(n_eff_offset) + root
        x = (a / denominator) ** 2
        root_x = mpmath.sqrt(1 + x)
        value = -x / (root_x * (1 + root_x))
        return float(mpmath.mpf(m) * value)


def klein_gordon_level(n: int, ell: int, m: float, alpha: float) -> float:
    """Klein-Gordon Coulomb level with mass m (binding energy)."""
    if n < 1 or ell < 0 or ell > n - 1:
        raise DomainError(f"Need 0 <= l <= n-1, got n={n}, l={ell}")
    if (ell + 0.5) ** 2 <= alpha * alpha:
        raise DomainError(f"alpha={alpha} >= l+1/2: the level dives", alpha)
    return _coulomb_level(n - ell - 0.5, ell + 0.5, m, alpha)


def dirac_level(n: int, j: float, m: float, alpha: float) -> float:
    """Dirac-Sommerfeld level with mass m (binding energy)."""
    if n < 1 or j < 0.5 or j > n - 0.5:
        raise DomainError(f"Need 1/2 <= j <= n-1/2, got n={n}, j={j}")
    if (j + 0.5) ** 2 <= alpha * alpha:
        raise DomainError(f"alpha={alpha} >= j+1/2: the level dives", alpha)
    return _coulomb_level(n - j - 0.5, j + 0.5, m, alpha)


def dirac_kappa_level(n_radial: int, kappa: int, m: float, alpha: float) -> float:
    """Dirac level addressed by radial quantum number and kappa."""
    if kappa == 0 or n_radial < 0:
        raise DomainError(f"Invalid Dirac quantum numbers n_r={n_radial}, kappa={kappa}")
    if kappa > 0 and n_radial == 0:
        raise DomainError("kappa > 0 has no nodeless level")
    return dirac_level(n_radial + abs(kappa), abs(kappa) - 0.5, m, alpha)


def free_spectrum(q: float, m1: float, m2: float) -> Tuple[float, float, float, float]:
    """The four sign combinations, ordered as (M, -M, mu, -mu) at q = 0."""
    if q < 0:
        raise DomainError(f"Momentum magnitude must be non-negative, got {q}", q)
    e1 = float(mpmath.sqrt(mpmath.mpf(q) ** 2 + mpmath.mpf(m1) ** 2))
    e2 = float(mpmath.sqrt(mpmath.mpf(q) ** 2 + mpmath.mpf(m2) ** 2))
    return e1 + e2, -(e1 + e2), e1 - e2, e2 - e1


def heun_parameters(lambda_: float, m1: float, m2: float, alpha: float,
                    j: float) -> Tuple[float, float, float, float, float]:
    """(eta, beta, gamma, delta, zeta) of the confluent Heun solution."""
    with mpmath.workdps(CONFIG["precision_digits"]):
        lam = mpmath.mpf(lambda_)
        a = mpmath.mpf(alpha)
        big = (mpmath.mpf(m1) + m2) ** 2
        small = (mpmath.mpf(m1) - m2) ** 2
        diff_sq = (mpmath.mpf(m1) ** 2 - mpmath.mpf(m2) ** 2) ** 2
        radicand_eta = (big - lam ** 2) * (lam ** 2 - small)
        if radicand_eta < 0:
            raise DomainError(f"lambda={lambda_} is outside the bound window; eta is complex",
                              lambda_)
        radicand_beta = mpmath.mpf(1) / 4 + 4 * mpmath.mpf(j) * (j + 1) - a ** 2
        radicand_gamma = lam ** 4 - 4 * a ** 2 * diff_sq
        if radicand_beta < 0 or radicand_gamma < 0:
            raise DomainError("Coupling too strong: beta or gamma is complex", alpha)
        eta = (a / lam ** 2) * mpmath.sqrt(radicand_eta)
        beta = mpmath.sqrt(radicand_beta)
        gamma = mpmath.sqrt(radicand_gamma) / (2 * lam ** 2)
        delta = -(a ** 2) * (lam ** 4 - diff_sq) / (2 * lam ** 4)
        zeta = mpmath.mpf(1) / 8 + a ** 2 / 2
        return float(eta), float(beta), float(gamma), float(delta), float(zeta)


def coulomb_binding_bracket(n: int, m_r: float, alpha: float,
                            width: float = 0.25) -> Tuple[float, float]:
    """Binding-energy window around the n-th Schroedinger level.

    The window is +-width of the level spacing to neighbouring shells, which
    keeps relativistic shifts (relative size alpha^2) inside it.
    """
    centre = schrodinger_level(n, m_r, alpha)
    below = schrodinger_level(n - 1, m_r, alpha) if n > 1 else 4.0 * centre
    above = schrodinger_level(n + 1, m_r, alpha)
    return centre - width * (centre - below), centre + width * (above - centre)


def oracle_levels(source: str, n_max: int, m: float, alpha: float) -> List[OracleLevel]:
    """Every level up to principal number n_max from one oracle family."""
    if source not in SOURCES[:3]:
        raise DomainError(f"Unknown oracle source '{source}'")
    levels = []
    for n in range(1, n_max + 1):
        if source == "Schr":
            levels.append(OracleLevel(n, 0, schrodinger_level(n, m, alpha), source))
        elif source == "KG":
            for ell in range(n):
                levels.append(OracleLevel(n, ell, klein_gordon_level(n, ell, m, alpha), source))
        else:
            for twice_j in range(1, 2 * n, 2):
                j = twice_j / 2.0
                levels.append(OracleLevel(n, j, dirac_level(n, j, m, alpha), source))
    return levels
