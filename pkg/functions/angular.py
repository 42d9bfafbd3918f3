"""
Angular Functions
=================
Clebsch-Gordan coefficients, spherical harmonics, spherical spinors, spherical
singlet/triplet vectors, spherical Bessel functions and sphere quadrature.

Vector-valued angular functions are returned in the spherical spin basis, with
components ordered by spin projection (+1/2, -1/2) for spinors and
(+1, 0, -1) for triplets. Harmonics follow the Condon-Shortley convention.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy import special
from sympy import Rational
from sympy.physics.quantum.cg import CG

from functions.errors import DomainError


ArrayLike = Union[float, np.ndarray]

# Quadrature defaults: Gauss-Legendre in cos(theta) x uniform in phi
CONFIG = {
    "n_theta": 64,
    "n_phi": 128,
}


class TripletKind(str, Enum):
    B = "b"   # orbital l = j
    C = "c"   # orbital l = j - 1
    D = "d"   # orbital l = j + 1


@dataclass
class AngularVector:
    """Components of a spinor (2) or triplet (3), sampled on any angular grid."""
    components: np.ndarray

    @property
    def size(self) -> int:
        return self.components.shape[0]

    def density(self) -> np.ndarray:
        return np.sum(np.abs(self.components) ** 2, axis=0)


@dataclass
class SphereQuadrature:
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.size


def _twice(value: float, name: str) -> int:
    doubled = 2 * value
    rounded = int(round(doubled))
    if abs(doubled - rounded) > 1e-9:
        raise DomainError(f"{name} must be an integer or half-integer, got {value}")
    return rounded


@lru_cache(maxsize=4096)
def _cg_doubled(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> float:
    value = CG(Rational(j1, 2), Rational(m1, 2), Rational(j2, 2), Rational(m2, 2),
               Rational(J, 2), Rational(M, 2)).doit()
    return float(value)


def clebsch_gordan(j1: float, m1: float, j2: float, m2: float, J: float, M: float) -> float:
    """<j1 m1 j2 m2 | J M>, zero whenever a selection rule fails."""
    t = [_twice(v, n) for v, n in ((j1, "j1"), (m1, "m1"), (j2, "j2"), (m2, "m2"), (J, "J"), (M, "M"))]
    tj1, tm1, tj2, tm2, tJ, tM = t
    if min(tj1, tj2, tJ) < 0:
        raise DomainError("Angular momenta must be non-negative")
    if tm1 + tm2 != tM:
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return 0.0
    if (tj1 - tm1) % 2 or (tj2 - tm2) % 2 or (tJ - tM) % 2:
        return 0.0
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 + tJ) % 2:
        return 0.0
    return _cg_doubled(tj1, tm1, tj2, tm2, tJ, tM)


def spherical_harmonic(ell: int, m: int, theta: ArrayLike, phi: ArrayLike) -> np.ndarray:
    """Y_l^m(theta, phi) with theta the polar angle."""
    if ell < 0:
        raise DomainError(f"Harmonic degree must be non-negative, got {ell}")
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    if abs(m) > ell:
        return np.zeros(theta.shape, dtype=complex)
    return special.sph_harm_y(ell, m, theta, phi)


def spherical_spinor(j: float, ell: int, m: float, theta: ArrayLike, phi: ArrayLike) -> AngularVector:
    """Omega_{j l m}: spin-1/2 coupled to Y_l, components (+1/2, -1/2)."""
    if abs(abs(j - ell) - 0.5) > 1e-12 or ell < 0:
        raise DomainError(f"Spinor needs l = j +- 1/2, got j={j}, l={ell}")
    if abs(m) > j + 1e-12:
        raise DomainError(f"|m| must not exceed j, got j={j}, m={m}")
    components = []
    for ms in (0.5, -0.5):
        ml = int(round(m - ms))
        weight = clebsch_gordan(ell, ml, 0.5, ms, j, m)
        components.append(weight * spherical_harmonic(ell, ml, theta, phi))
    return AngularVector(np.array(components))


def triplet_orbital(kind: TripletKind, j: int) -> int:
    return {TripletKind.B: j, TripletKind.C: j - 1, TripletKind.D: j + 1}[TripletKind(kind)]


def spherical_triplet(kind: TripletKind, j: int, m: int,
                      theta: ArrayLike, phi: ArrayLike) -> AngularVector:
    """Spin-1 coupled to Y_l with l = j (B), j - 1 (C) or j + 1 (D).

    The first B component is the Condon-Shortley value
    -sqrt((j+m)(j-m+1)/(2j(j+1))), which keeps every component real.
    """
    kind = TripletKind(kind)
    if j < 0 or abs(m) > j:
        raise DomainError(f"Invalid triplet quantum numbers j={j}, m={m}")
    if kind in (TripletKind.B, TripletKind.C) and j < 1:
        raise DomainError(f"Triplet {kind.value} needs j >= 1, got j={j}")
    ell = triplet_orbital(kind, j)
    components = []
    for ms in (1, 0, -1):
        weight = clebsch_gordan(ell, m - ms, 1, ms, j, m)
        components.append(weight * spherical_harmonic(ell, m - ms, theta, phi))
    return AngularVector(np.array(components))


def spin_weights(j: int) -> Tuple[float, float]:
    """(s0, s1) = (sqrt(j/(2j+1)), sqrt((j+1)/(2j+1)))."""
    return np.sqrt(j / (2.0 * j + 1.0)), np.sqrt((j + 1.0) / (2.0 * j + 1.0))


def spherical_components(vector: np.ndarray) -> np.ndarray:
    """Cartesian (x, y, z) on axis 0 -> spherical components (+1, 0, -1)."""
    x, y, z = vector
    return np.array([-(x - 1j * y) / np.sqrt(2.0), z + 0j, (x + 1j * y) / np.sqrt(2.0)])


def radial_unit_harmonic(j: int, m: int, theta: ArrayLike, phi: ArrayLike) -> AngularVector:
    """r_hat * Y_{jm} in the spherical spin basis."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    return AngularVector(spherical_components(n) * spherical_harmonic(j, m, theta, phi))


def spherical_bessel(ell: int, x: ArrayLike) -> np.ndarray:
    """j_l(x) with the correct limits at x = 0."""
    if ell < 0:
        raise DomainError(f"Bessel order must be non-negative, got {ell}")
    return special.spherical_jn(ell, x)


def spherical_bessel_derivative(ell: int, x: ArrayLike) -> np.ndarray:
    return special.spherical_jn(ell, x, derivative=True)


def sphere_quadrature(n_theta: int = None, n_phi: int = None) -> SphereQuadrature:
    """Tensor Gauss-Legendre (cos theta) x trapezoid (phi) rule on the unit sphere."""
    n_theta = n_theta or CONFIG["n_theta"]
    n_phi = n_phi or CONFIG["n_phi"]
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    theta_grid, phi_grid = np.meshgrid(np.arccos(x), phi, indexing="ij")
    weights = np.outer(w, np.full(n_phi, 2.0 * np.pi / n_phi))
    return SphereQuadrature(theta_grid.ravel(), phi_grid.ravel(), weights.ravel())


def sphere_inner(f: AngularVector, g: AngularVector, quadrature: SphereQuadrature) -> complex:
    """Integral over the sphere of sum_i conj(f_i) g_i, both sampled on the rule's nodes."""
    integrand = np.sum(np.conj(f.components) * g.components, axis=0)
    return complex(np.sum(quadrature.weights * integrand))
