"""
Classical Orbits
================
Reduced classical dynamics of two particles with a vector Coulomb potential.

With u = lambda + alpha/r the sum of the two kinetic energies, the radial
momentum follows from q^2 = [u^2 - (m1+m2)^2][u^2 - (m1-m2)^2] / (4u^2) and
q_r^2 = q^2 - L^2/r^2. The trajectory obeys

    d theta / du = (2L/alpha) u / sqrt(Q4(u))
    Q4(u) = u^4 - (2L/alpha)^2 u^2 (lambda - u)^2 - 2(m1^2 + m2^2) u^2 + (m1^2 - m2^2)^2

Internally everything is written in w = alpha / r = u - lambda, so that the
nonrelativistic regime does not lose digits to cancellation.
"""

import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, Any, List, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from functions.errors import DomainError


CONFIG = {
    "quad_epsabs": 1e-13,
    "quad_epsrel": 1e-12,
    "quad_limit": 200,
    "root_polish_steps": 3,
    "samples": 64,
}


class OrbitRegime(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    FALL = "fall"


@dataclass
class OrbitSample:
    """theta sampled along a trajectory, parameterised by u or by r."""
    parameter: str
    points: np.ndarray
    theta: np.ndarray
    regime: OrbitRegime
    turning_radii: Tuple[float, ...] = ()
    warnings: List[str] = field(default_factory=list)

    def radii(self, lambda_: float, alpha: float) -> np.ndarray:
        if self.parameter == "r":
            return self.points
        return alpha / (self.points - lambda_)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["points"] = self.points.tolist()
        data["theta"] = self.theta.tolist()
        data["regime"] = self.regime.value
        return data


def _check(m1: float, m2: float, alpha: float) -> None:
    if m1 <= 0 or m2 <= 0:
        raise DomainError("Masses must be positive")
    if alpha < 0:
        raise DomainError(f"alpha must be non-negative, got {alpha}", alpha)


def momentum_squared(u: float, m1: float, m2: float) -> float:
    """q^2 of two particles with kinetic energy sum u."""
    return (u * u - (m1 + m2) ** 2) * (u * u - (m1 - m2) ** 2) / (4.0 * u * u)


def radial_momentum(r: float, lambda_: float, L: float, m1: float, m2: float, alpha: float) -> float:
    """q_r at radius r; DomainError in the classically forbidden region."""
    if r <= 0:
        raise DomainError(f"Radius must be positive, got {r}", r)
    _check(m1, m2, alpha)
    u = lambda_ + alpha / r
    radicand = momentum_squared(u, m1, m2) - L * L / (r * r)
    if radicand < 0:
        raise DomainError(f"Classically forbidden at r={r}: q_r^2 = {radicand}", radicand)
    return math.sqrt(radicand)


def hamiltonian_residual(r: float, q_r: float, L: float, lambda_: float, alpha: float,
                         m1: float, m2: float) -> float:
    """sqrt(q^2 + m1^2) + sqrt(q^2 + m2^2) - alpha/r - lambda, relative to lambda."""
    q_sq = q_r * q_r + L * L / (r * r)
    energy = math.sqrt(q_sq + m1 * m1) + math.sqrt(q_sq + m2 * m2) - alpha / r
    return (energy - lambda_) / lambda_


def effective_energy(r: float, L: float, alpha: float, m1: float, m2: float) -> float:
    """Total energy of a circular motion at radius r (q_r = 0)."""
    q_sq = (L / r) ** 2
    return math.sqrt(q_sq + m1 * m1) + math.sqrt(q_sq + m2 * m2) - alpha / r


def circular_orbit(L: float, alpha: float, m1: float, m2: float) -> Tuple[float, float]:
    """(radius, lambda) of the circular orbit with angular momentum L."""
    _check(m1, m2, alpha)
    if not L > alpha / 2 or alpha == 0:
        raise DomainError("A circular orbit needs alpha > 0 and L > alpha/2")
    guess = L * L * (m1 + m2) / (m1 * m2 * alpha)
    result = minimize_scalar(lambda x: effective_energy(math.exp(x), L, alpha, m1, m2),
                             bracket=(math.log(guess) - 1.0, math.log(guess) + 1.0),
                             tol=1e-12)
    radius = math.exp(result.x)
    return radius, effective_energy(radius, L, alpha, m1, m2)


def quartic(lambda_: float, L: float, alpha: float, m1: float, m2: float) -> Polynomial:
    """Q4 as a polynomial in w = u - lambda."""
    if alpha <= 0:
        raise DomainError("The trajectory quartic needs alpha > 0")
    k = 2.0 * L / alpha
    w = Polynomial([0.0, 1.0])
    u = Polynomial([lambda_, 1.0])
    u2 = u * u
    return u2 * u2 - k * k * u2 * w * w - 2.0 * (m1 * m1 + m2 * m2) * u2 + (m1 * m1 - m2 * m2) ** 2


def _polished_roots(poly: Polynomial) -> np.ndarray:
    roots = poly.roots()
    deriv = poly.deriv()
    for _ in range(CONFIG["root_polish_steps"]):
        slope = deriv(roots)
        safe = np.abs(slope) > 0
        roots = np.where(safe, roots - poly(roots) / np.where(safe, slope, 1.0), roots)
    return roots


def turning_points(lambda_: float, L: float, alpha: float, m1: float, m2: float) -> Tuple[float, float]:
    """(w_min, w_max) bounding a radial oscillation; r = alpha / w."""
    _check(m1, m2, alpha)
    poly = quartic(lambda_, L, alpha, m1, m2)
    roots = _polished_roots(poly)
    real = np.sort(roots[np.abs(roots.imag) <= 1e-9 * (1 + np.abs(roots.real))].real)
    positive = real[real > 0]
    for low, high in zip(positive[:-1], positive[1:]):
        if poly(0.5 * (low + high)) > 0:
            if high - low <= 1e-12 * high:
                raise DomainError("Turning points collide: the orbit is circular or degenerate")
            return float(low), float(high)
    raise DomainError("No bounded radial motion for these parameters")


def classify_regime(lambda_: float, L: float, alpha: float, m1: float, m2: float) -> OrbitRegime:
    """L below, at or above alpha/2 decides fall or parabolic; otherwise the energy sign."""
    _check(m1, m2, alpha)
    if alpha > 0:
        edge = alpha / 2
        if math.isclose(L, edge, rel_tol=1e-12, abs_tol=0.0):
            return OrbitRegime.PARABOLIC
        if L < edge:
            return OrbitRegime.FALL
    threshold = m1 + m2
    if math.isclose(lambda_, threshold, rel_tol=1e-14):
        return OrbitRegime.PARABOLIC
    return OrbitRegime.ELLIPTIC if lambda_ < threshold else OrbitRegime.HYPERBOLIC


def _branch_integrand(poly_roots: np.ndarray, lead: float, branch: int, k: float, lambda_: float):
    """2 k u / sqrt(Q4 / |w - w_branch|), the integrand after w = w_branch +- s^2."""
    others = np.delete(poly_roots, branch)

    def integrand(s: float, w: float) -> float:
        rest = lead * np.prod(w - others)
        return 2.0 * k * (lambda_ + w) / math.sqrt(abs(rest.real))

    return integrand


def _swept_angle(lambda_: float, L: float, alpha: float, m1: float, m2: float,
                 w_from: float, w_to: float) -> float:
    """theta swept between w_from and w_to inside [w_min, w_max]."""
    poly = quartic(lambda_, L, alpha, m1, m2)
    roots = _polished_roots(poly)
    w_min, w_max = turning_points(lambda_, L, alpha, m1, m2)
    lower = int(np.argmin(np.abs(roots - w_min)))
    upper = int(np.argmin(np.abs(roots - w_max)))
    lead = poly.coef[-1]
    k = 2.0 * L / alpha
    middle = 0.5 * (w_min + w_max)
    options = dict(epsabs=CONFIG["quad_epsabs"], epsrel=CONFIG["quad_epsrel"], limit=CONFIG["quad_limit"])

    def from_bottom(w: float) -> float:
        f = _branch_integrand(roots, lead, lower, k, lambda_)
        value, _ = quad(lambda s: f(s, w_min + s * s), 0.0, math.sqrt(max(w - w_min, 0.0)), **options)
        return value

    def to_top(w: float) -> float:
        f = _branch_integrand(roots, lead, upper, k, lambda_)
        value, _ = quad(lambda s: f(s, w_max - s * s), 0.0, math.sqrt(max(w_max - w, 0.0)), **options)
        return value

    def cumulative(w: float) -> float:
        if w <= middle:
            return from_bottom(w)
        return from_bottom(middle) + to_top(middle) - to_top(w)

    return cumulative(w_to) - cumulative(w_from)


def integrate_trajectory(lambda_: float, L: float, alpha: float, m1: float, m2: float,
                         u_range: Optional[Tuple[float, float]] = None,
                         samples: Optional[int] = None) -> OrbitSample:
    """theta(u) measured from the first end of u_range (default: periapsis to apoapsis)."""
    _check(m1, m2, alpha)
    if alpha == 0:
        raise DomainError("With alpha = 0 u is constant; use integrate_trajectory_r")
    regime = classify_regime(lambda_, L, alpha, m1, m2)
    w_min, w_max = turning_points(lambda_, L, alpha, m1, m2)
    if u_range is None:
        u_range = (lambda_ + w_max, lambda_ + w_min)
    w_a, w_b = u_range[0] - lambda_, u_range[1] - lambda_
    tolerance = 1e-12 * w_max
    for w in (w_a, w_b):
        if w < w_min - tolerance or w > w_max + tolerance:
            raise DomainError(f"u={w + lambda_} lies outside the allowed band")
    w_a, w_b = min(max(w_a, w_min), w_max), min(max(w_b, w_min), w_max)
    grid = np.linspace(w_a, w_b, samples or CONFIG["samples"])
    theta = np.array([abs(_swept_angle(lambda_, L, alpha, m1, m2, w_a, w)) for w in grid])
    return OrbitSample(parameter="u", points=lambda_ + grid, theta=theta, regime=regime,
                       turning_radii=(alpha / w_max, alpha / w_min))


def integrate_trajectory_r(lambda_: float, L: float, alpha: float, m1: float, m2: float,
                           r_range: Tuple[float, float], samples: Optional[int] = None) -> OrbitSample:
    """theta(r) = int L / (r^2 q_r) dr from the inner end of r_range, which must be a turning point
    or lie in the allowed region."""
    _check(m1, m2, alpha)
    r_in, r_out = r_range
    if not 0 < r_in < r_out:
        raise DomainError(f"Need 0 < r_in < r_out, got {r_range}")
    regime = classify_regime(lambda_, L, alpha, m1, m2)

    def q_r_squared(r: float) -> float:
        return momentum_squared(lambda_ + alpha / r, m1, m2) - L * L / (r * r)

    options = dict(epsabs=CONFIG["quad_epsabs"], epsrel=CONFIG["quad_epsrel"], limit=CONFIG["quad_limit"])

    def integrand(s: float) -> float:
        r = r_in + s * s
        if s == 0.0:
            slope = (q_r_squared(r_in * (1 + 1e-7)) - q_r_squared(r_in)) / (r_in * 1e-7)
            return 2.0 * L / (r_in * r_in * math.sqrt(abs(slope)))
        return 2.0 * s * L / (r * r * math.sqrt(max(q_r_squared(r), 0.0)))

    grid = np.linspace(r_in, r_out, samples or CONFIG["samples"])
    theta = np.array([quad(integrand, 0.0, math.sqrt(r - r_in), **options)[0] for r in grid])
    return OrbitSample(parameter="r", points=grid, theta=theta, regime=regime)


def periapsis_advance(lambda_: float, L: float, alpha: float, m1: float, m2: float) -> float:
    """Angle swept over one radial period minus 2 pi."""
    w_min, w_max = turning_points(lambda_, L, alpha, m1, m2)
    half = _swept_angle(lambda_, L, alpha, m1, m2, w_min, w_max)
    return 2.0 * abs(half) - 2.0 * math.pi


def rescaled_orbit_parameters(c: float, m1: float, m2: float, alpha: float, L: float,
                              energy: float) -> Dict[str, float]:
    """Masses times c^2, alpha / c, L unchanged; lambda = (m1 + m2) c^2 + energy.

    As c grows the orbit (in the radius c r) tends to the Kepler ellipse of the
    reduced mass with binding energy ``energy``.
    """
    if c <= 0:
        raise DomainError(f"Speed-of-light multiplier must be positive, got {c}", c)
    return {
        "m1": m1 * c * c,
        "m2": m2 * c * c,
        "alpha": alpha / c,
        "L": L,
        "lambda_": (m1 + m2) * c * c + energy,
    }
