"""
Breit Perturbation
==================
First-order shift of a two-fermion level by the Breit term

    V_B = (g / 2r) [alpha_1 . alpha_2 + (alpha_1 . n)(alpha_2 . n)]

The shift is computed two ways: a closed-form radial integral, and a direct
route that assembles the 16-component state on a sphere quadrature and
takes the expectation value of the 16x16 operator. The second route also
reports the imaginary residue of the angular matrix, which must vanish, and
is checked against the first.
"""

import math
from dataclasses import dataclass, field, asdict
from typing import Dict, Any, List, Optional

import numpy as np
from scipy.integrate import simpson

from functions.angular import (
    SphereQuadrature, TripletKind, clebsch_gordan, spherical_harmonic, spherical_triplet,
    sphere_quadrature, spin_weights,
)
from functions.core_model import Parity
from functions.errors import AccuracyError, DomainError
from functions.eigenfunctions import FF_RADIALS

CONFIG = {
    # both relative to the sum of the absolute terms of the angular contraction
    "residue_tolerance": 1e-8,
    "closed_form_tolerance": 1e-6,
}

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

# Dirac-basis alpha_k = [[0, sigma_k], [sigma_k, 0]]
DIRAC_ALPHA = np.array([np.block([[np.zeros((2, 2)), s], [s, np.zeros((2, 2))]]) for s in PAULI])

# Multiplet order (M, -M, -mu, mu) -> (lower1, lower2) of the Dirac blocks
BLOCKS = ((0, 0), (1, 1), (1, 0), (0, 1))


@dataclass
class LevelWithShift:
    """An unperturbed level and its first-order Breit correction."""
    label: str
    energy: float
    shift: float
    imaginary_residue: float = 0.0

    @property
    def total(self) -> float:
        return self.energy + self.shift

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["total"] = self.total
        return data


@dataclass
class State16:
    """Radial functions and quantum numbers of a sixteen-component state."""
    r: np.ndarray
    radials: Dict[str, np.ndarray]
    j: int
    parity: Parity
    m: int = 0
    warnings: List[str] = field(default_factory=list)

    def radial_integral(self, a: str, b: str, power: int) -> float:
        return float(simpson(self.radials[a] * self.radials[b] * self.r ** power, x=self.r))


def assemble_state16(r: np.ndarray, radials: Dict[str, np.ndarray], j: int,
                     parity: Parity, m: int = 0) -> State16:
    missing = [k for k in FF_RADIALS if k not in radials]
    if missing:
        raise DomainError(f"Missing radial functions: {missing}")
    if j < 0 or abs(m) > j:
        raise DomainError(f"Invalid state quantum numbers j={j}, m={m}")
    return State16(r=r, radials=radials, j=j, parity=Parity(parity), m=m)


def _spin_pair_states() -> np.ndarray:
    """Rows: singlet, triplet +1, 0, -1 in the product basis (up up, up down, down up, down down)."""
    states = np.zeros((4, 4))
    spins = (0.5, -0.5)
    for row, (S, M) in enumerate(((0, 0), (1, 1), (1, 0), (1, -1))):
        for s1 in range(2):
            for s2 in range(2):
                states[row, 2 * s1 + s2] = clebsch_gordan(0.5, spins[s1], 0.5, spins[s2], S, M)
    return states


def _block_vector(singlet: np.ndarray, triplet: np.ndarray, block: int) -> np.ndarray:
    """16-component vector with one multiplet filled; inputs sampled on nodes."""
    pairs = _spin_pair_states()
    spin_part = singlet[None, :] * pairs[0][:, None]
    for q in range(3):
        spin_part = spin_part + triplet[q][None, :] * pairs[q + 1][:, None]
    lower1, lower2 = BLOCKS[block]
    out = np.zeros((16, singlet.size), dtype=complex)
    for s1 in range(2):
        for s2 in range(2):
            index = 4 * (2 * lower1 + s1) + (2 * lower2 + s2)
            out[index] = spin_part[2 * s1 + s2]
    return out


def angular_vectors(j: int, m: int, parity: Parity,
                    quadrature: SphereQuadrature) -> Dict[str, np.ndarray]:
    """16-component angular factor of each radial function, sampled on the quadrature."""
    theta, phi = quadrature.theta, quadrature.phi
    zero = np.zeros(theta.size, dtype=complex)
    zero_triplet = np.zeros((3, theta.size), dtype=complex)
    harmonic = spherical_harmonic(j, m, theta, phi)

    def triplet(kind: TripletKind) -> np.ndarray:
        if j < 1 and kind != TripletKind.D:
            return zero_triplet
        return spherical_triplet(kind, j, m, theta, phi).components

    omega_b, omega_c, omega_d = triplet(TripletKind.B), triplet(TripletKind.C), triplet(TripletKind.D)
    # parity II swaps the (M, -M) and (-mu, mu) halves
    blocks = (0, 1, 2, 3) if Parity(parity) == Parity.I else (2, 3, 0, 1)
    ab_upper, ab_lower, cd_upper, cd_lower = blocks
    return {
        "a0": _block_vector(harmonic, zero_triplet, ab_upper),
        "a1": _block_vector(harmonic, zero_triplet, ab_lower),
        "b0": _block_vector(zero, omega_b, ab_upper),
        "b1": _block_vector(zero, omega_b, ab_lower),
        "c0": 1j * _block_vector(zero, omega_c, cd_upper),
        "c1": 1j * _block_vector(zero, omega_c, cd_lower),
        "d0": 1j * _block_vector(zero, omega_d, cd_upper),
        "d1": 1j * _block_vector(zero, omega_d, cd_lower),
    }


def breit_operator_sample(direction: np.ndarray) -> np.ndarray:
    """The 16x16 matrix alpha_1 . alpha_2 + (alpha_1 . n)(alpha_2 . n) at unit vector n."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    dot = sum(np.kron(DIRAC_ALPHA[k], DIRAC_ALPHA[k]) for k in range(3))
    a1n = np.tensordot(n, DIRAC_ALPHA, axes=1)
    return dot + np.kron(a1n, a1n)


def breit_angular_matrix(j: int, parity: Parity, m: int = 0,
                         quadrature: Optional[SphereQuadrature] = None) -> np.ndarray:
    """C_kl = int dOmega A_k^dagger V A_l over the eight radial slots (order FF_RADIALS)."""
    quadrature = quadrature or sphere_quadrature()
    vectors = angular_vectors(j, m, parity, quadrature)
    stacked = np.array([vectors[k] for k in FF_RADIALS])
    st, ct = np.sin(quadrature.theta), np.cos(quadrature.theta)
    n = np.array([st * np.cos(quadrature.phi), st * np.sin(quadrature.phi), ct])

    same = sum(np.kron(DIRAC_ALPHA[k], DIRAC_ALPHA[k]) for k in range(3))
    cross = np.array([[np.kron(DIRAC_ALPHA[k], DIRAC_ALPHA[l]) for l in range(3)] for k in range(3)])
    applied = (np.einsum("ab,sbq->saq", same, stacked)
               + np.einsum("kq,lq,klab,sbq->saq", n, n, cross, stacked, optimize=True))
    return np.einsum("q,kaq,laq->kl", quadrature.weights, np.conj(stacked), applied)


def gram_matrix(j: int, parity: Parity, m: int = 0,
                quadrature: Optional[SphereQuadrature] = None) -> np.ndarray:
    """Overlaps of the angular factors; the identity on the slots that exist for j."""
    quadrature = quadrature or sphere_quadrature()
    vectors = angular_vectors(j, m, parity, quadrature)
    stacked = np.array([vectors[k] for k in FF_RADIALS])
    return np.einsum("q,kaq,laq->kl", quadrature.weights, np.conj(stacked), stacked)


def breit_shift(state: State16, g: float,
                quadrature: Optional[SphereQuadrature] = None) -> LevelWithShift:
    """Shift by the direct angular route; energy is left at zero for the caller to fill.

    Raises AccuracyError when the contraction keeps an imaginary part or
    disagrees with the closed-form radial integral.
    """
    matrix = breit_angular_matrix(state.j, state.parity, state.m, quadrature)
    radial = np.array([[state.radial_integral(a, b, 1) for b in FF_RADIALS] for a in FF_RADIALS])
    terms = 0.5 * g * matrix * radial
    value = np.sum(terms)
    scale = float(np.sum(np.abs(terms)))
    residue = float(abs(value.imag))
    if residue > CONFIG["residue_tolerance"] * scale:
        raise AccuracyError(
            f"Breit contraction keeps an imaginary part {residue:.3e} (scale {scale:.3e})")
    reference = breit_shift_closed_form(state, g)
    if abs(value.real - reference) > CONFIG["closed_form_tolerance"] * scale:
        raise AccuracyError(
            f"Breit shift {value.real:.12e} disagrees with the radial formula {reference:.12e}")
    return LevelWithShift(label="", energy=0.0, shift=float(value.real), imaginary_residue=residue)


def _slot(state: State16, key: str) -> np.ndarray:
    # b and c carry no angular factor at j = 0
    if state.j == 0 and key[0] in "bc":
        return np.zeros_like(state.r)
    return state.radials[key]


def breit_shift_closed_form(state: State16, g: float) -> float:
    """g int r [-4 a0 a1 + 2 b0 b1 + 2 v0 v1] dr with v = -s1 c - s0 d."""
    s0, s1 = spin_weights(state.j)
    v0 = -s1 * _slot(state, "c0") - s0 * _slot(state, "d0")
    v1 = -s1 * _slot(state, "c1") - s0 * _slot(state, "d1")
    integrand = (-4 * _slot(state, "a0") * _slot(state, "a1")
                 + 2 * _slot(state, "b0") * _slot(state, "b1") + 2 * v0 * v1)
    return float(g * simpson(integrand * state.r, x=state.r))


def hyperfine_splitting(upper: LevelWithShift, lower: LevelWithShift) -> float:
    """upper.total - lower.total, summed part by part."""
    return (upper.energy - lower.energy) + (upper.shift - lower.shift)


def state_norm(state: State16) -> float:
    return math.sqrt(sum(state.radial_integral(k, k, 2) for k in FF_RADIALS))
