"""
Radial Systems
==============
First-order radial systems y'(r) + A(r, E) y(r) = 0 for every channel:

- SS: the scalar-scalar second-order equation rewritten in (u, r u')
- SF: the reduced scalar-fermion pair (f, g)
- FF: the two-fermion 4x4 system in (a+, b-, u+, v-), 2x2 for j = 0
- limits: Dirac, Klein-Gordon and Schroedinger equations of one particle

The spectral parameter is the binding energy E; the invariant mass is
lambda = threshold + E. Every coefficient is written in terms of
b(r) = E + alpha/r so that lambda(r) - M never suffers cancellation.
Evaluators accept complex r, which the series start needs.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Tuple, Optional, List

import numpy as np

from functions.core_model import (
    ParticleSpec, InteractionSpec, ChannelSpec, SystemKind, SpinKind, Parity,
    reduced_mass, natural_length_scale,
)
from functions.errors import DomainError
from functions.angular import spin_weights


Evaluator = Callable[[complex, float], np.ndarray]


class LimitKind(str, Enum):
    DIRAC = "dirac"
    KLEIN_GORDON = "klein-gordon"
    SCHROEDINGER = "schroedinger"


@dataclass(frozen=True)
class RadialSystem:
    """A channel's radial boundary-value problem.

    ``norm_components`` lists the components entering the flat L2 norm; for
    the (u, r u') formulations only u is a wave-function component.
    """
    channel: ChannelSpec
    particles: Tuple[ParticleSpec, ParticleSpec]
    interaction: InteractionSpec
    dimension: int
    evaluator: Evaluator = field(repr=False)
    component_names: Tuple[str, ...]
    norm_components: Tuple[int, ...]
    threshold: float
    variant: str = "two-body"
    has_lambda_pole: bool = True
    length_scale: float = 1.0
    kappa: Optional[int] = None
    orbital: Optional[int] = None
    parent_indices: Optional[Tuple[int, ...]] = None

    def matrix(self, r, energy: float) -> np.ndarray:
        return self.evaluator(r, energy)

    def invariant_mass(self, energy: float) -> float:
        return self.threshold + energy

    def lambda_profile(self, r, energy: float):
        return self.threshold + energy + self.interaction.alpha / r

    def mass_profile(self, r):
        m1, m2 = (p.mass for p in self.particles)
        return m1 + m2 + self.interaction.sigma * r

    def singular_radius(self, energy: float) -> float:
        """Distance from the origin to the nearest other singularity of A."""
        alpha = self.interaction.alpha
        lam = self.invariant_mass(energy)
        if not self.has_lambda_pole or alpha <= 0 or lam <= 0:
            return math.inf
        return alpha / lam

    @property
    def masses(self) -> Tuple[float, float]:
        return self.particles[0].mass, self.particles[1].mass

    @property
    def is_free(self) -> bool:
        return self.interaction.alpha == 0 and self.interaction.sigma == 0


# === COEFFICIENT FORMULAS ===

def pair_coefficients(r, lam_r, mass_sum, mass_diff, j: int):
    """E, F, G of the two-fermion system from the plain printed formulas.

    Parity I uses (mass_sum, mass_diff) = (M + sigma r, mu); parity II follows by
    the substitution (-mu, -(M + sigma r)).
    """
    J = j * (j + 1)
    e_coef = math.sqrt(J) * mass_diff / (r * lam_r)
    f_coef = (lam_r ** 2 - mass_diff ** 2) / (2 * lam_r)
    g_coef = (lam_r ** 2 - mass_sum ** 2) / (2 * lam_r) - 2 * J / (r * r * lam_r)
    return e_coef, f_coef, g_coef


def scalar_fermion_pair(r, lam_r, m_fermion, m_scalar, j: float, alpha: float) -> np.ndarray:
    """Plain printed scalar-fermion matrix; parity II is m_fermion -> -m_fermion."""
    shift = alpha / (2 * r * r * lam_r)
    return np.array([
        [-(j - 0.5) / r - shift, -(lam_r / 2 + m_fermion + (m_fermion ** 2 - m_scalar ** 2) / (2 * lam_r))],
        [lam_r / 2 - m_fermion + (m_fermion ** 2 - m_scalar ** 2) / (2 * lam_r), (j + 1.5) / r - shift],
    ])


def _second_order_matrix(r, p_coef, q_coef) -> np.ndarray:
    """u'' + p u' + q u = 0 as a system in (u, w = r u')."""
    zero = 0 * r
    return np.array([[zero, -1 / r], [r * q_coef, p_coef - 1 / r]])


def _scalar_scalar(m1, m2, alpha, ell) -> Evaluator:
    M = m1 + m2
    centrifugal = ell * (ell + 1)

    def evaluate(r, energy):
        b = energy + alpha / r
        lam_r = M + b
        eta_sq = b * (2 * M + b) * (2 * m2 + b) * (2 * m1 + b) / (4 * lam_r * lam_r)
        p_coef = 2 / r - alpha / (2 * r * r * lam_r)
        q_coef = eta_sq - centrifugal / (r * r)
        return _second_order_matrix(r, p_coef, q_coef)

    return evaluate


def _scalar_fermion(m_f, m_s, alpha, j, parity) -> Evaluator:
    M = m_f + m_s

    def evaluate(r, energy):
        b = energy + alpha / r
        lam_r = M + b
        shift = alpha / (2 * r * r * lam_r)
        upper = (2 * m_f + b) * (2 * M + b) / (2 * lam_r)
        lower = b * (2 * m_s + b) / (2 * lam_r)
        if parity == Parity.II:
            upper, lower = lower, upper
        return np.array([
            [-(j - 0.5) / r - shift, -upper],
            [lower, (j + 1.5) / r - shift],
        ])

    return evaluate


def _fermion_fermion(m1, m2, alpha, sigma, j, parity) -> Evaluator:
    M = m1 + m2
    mu = m1 - m2
    J = j * (j + 1)
    root_J = math.sqrt(J)

    def evaluate(r, energy):
        b = energy + alpha / r
        lam_r = M + b
        mass_r = M + sigma * r
        gap = b - sigma * r
        mass_split = (2 * m2 + b) * (2 * m1 + b) / (2 * lam_r)
        mass_gap = gap * (2 * M + b + sigma * r) / (2 * lam_r)
        barrier = 2 * J / (r * r * lam_r)
        if parity == Parity.I:
            e_coef = root_J * mu / (r * lam_r)
            f_coef = mass_split
            g_coef = mass_gap - barrier
        else:
            e_coef = -root_J * mass_r / (r * lam_r)
            f_coef = mass_gap
            g_coef = mass_split - barrier
        if j == 0:
            return np.array([[0 * r, -f_coef], [g_coef, 2 / r]])
        zero = 0 * r
        return np.array([
            [zero, e_coef, -f_coef, zero],
            [e_coef, 1 / r, zero, f_coef],
            [g_coef, zero, 2 / r, e_coef],
            [zero, -g_coef, e_coef, 1 / r],
        ])

    return evaluate


def _dirac(m, alpha, sigma, kappa) -> Evaluator:
    def evaluate(r, energy):
        b = energy + alpha / r
        return np.array([
            [(1 + kappa) / r, -(2 * m + b)],
            [b - sigma * r, (1 - kappa) / r],
        ])

    return evaluate


def _klein_gordon(m, alpha, ell) -> Evaluator:
    centrifugal = ell * (ell + 1)

    def evaluate(r, energy):
        b = energy + alpha / r
        return _second_order_matrix(r, 2 / r, b * (2 * m + b) - centrifugal / (r * r))

    return evaluate


def _schroedinger(m, alpha, sigma, ell) -> Evaluator:
    centrifugal = ell * (ell + 1)

    def evaluate(r, energy):
        q_coef = 2 * m * (energy + alpha / r - sigma * r) - centrifugal / (r * r)
        return _second_order_matrix(r, 2 / r, q_coef)

    return evaluate


# === BUILDERS ===

def _fermion_and_scalar(p1: ParticleSpec, p2: ParticleSpec) -> Tuple[ParticleSpec, ParticleSpec]:
    if p1.spin == SpinKind.FERMION and p2.spin == SpinKind.SCALAR:
        return p1, p2
    if p2.spin == SpinKind.FERMION and p1.spin == SpinKind.SCALAR:
        return p2, p1
    raise DomainError("Scalar-fermion channel needs one scalar and one fermion")


def build_system(channel: ChannelSpec, p1: ParticleSpec, p2: ParticleSpec,
                 inter: InteractionSpec) -> RadialSystem:
    """Radial system of a two-body channel."""
    m1, m2 = p1.mass, p2.mass
    scale = natural_length_scale(m1, m2, inter.alpha, inter.sigma)
    common = dict(channel=channel, particles=(p1, p2), interaction=inter,
                  threshold=m1 + m2, length_scale=scale)

    if channel.kind == SystemKind.SCALAR_SCALAR:
        if p1.spin != SpinKind.SCALAR or p2.spin != SpinKind.SCALAR:
            raise DomainError("Scalar-scalar channel needs two scalars")
        if inter.sigma > 0:
            raise DomainError("The scalar-scalar channel is defined for Coulomb coupling only")
        ell = int(channel.j)
        return RadialSystem(dimension=2, evaluator=_scalar_scalar(m1, m2, inter.alpha, ell),
                            component_names=("u", "r_du"), norm_components=(0,),
                            orbital=ell, **common)

    if channel.kind == SystemKind.SCALAR_FERMION:
        fermion, scalar = _fermion_and_scalar(p1, p2)
        if inter.sigma > 0:
            raise DomainError("The scalar-fermion channel is defined for Coulomb coupling only")
        evaluator = _scalar_fermion(fermion.mass, scalar.mass, inter.alpha, channel.j, channel.parity)
        ell = int(round(channel.j - 0.5)) if channel.parity == Parity.I else int(round(channel.j + 0.5))
        return RadialSystem(dimension=2, evaluator=evaluator, component_names=("f", "g"),
                            norm_components=(0, 1), orbital=ell, **common)

    if p1.spin != SpinKind.FERMION or p2.spin != SpinKind.FERMION:
        raise DomainError("Fermion-fermion channel needs two fermions")
    j = int(channel.j)
    evaluator = _fermion_fermion(m1, m2, inter.alpha, inter.sigma, j, channel.parity)
    names = ("a_plus", "u_plus") if j == 0 else ("a_plus", "b_minus", "u_plus", "v_minus")
    return RadialSystem(dimension=len(names), evaluator=evaluator, component_names=names,
                        norm_components=tuple(range(len(names))), **common)


def allowed_kappas(channel: ChannelSpec) -> List[int]:
    """Dirac kappa values reached by a channel in its one-heavy-particle limit."""
    if channel.kind == SystemKind.SCALAR_FERMION:
        half = int(round(channel.j + 0.5))
        return [-half] if channel.parity == Parity.I else [half]
    if channel.kind == SystemKind.FERMION_FERMION:
        j = int(channel.j)
        kappas = [-(j + 1), j] if channel.parity == Parity.I else [-j, j + 1]
        return [k for k in kappas if k != 0]
    raise DomainError("Scalar-scalar channels have no Dirac limit")


def default_orbital(channel: ChannelSpec) -> int:
    """Orbital l of the lowest series of a channel, used by the scalar limits."""
    if channel.kind == SystemKind.SCALAR_SCALAR:
        return int(channel.j)
    if channel.kind == SystemKind.SCALAR_FERMION:
        return int(round(channel.j - 0.5)) if channel.parity == Parity.I else int(round(channel.j + 0.5))
    j = int(channel.j)
    if channel.parity == Parity.I:
        return j
    return j + 1 if j == 0 else j - 1


def limit_system(kind: LimitKind, channel: ChannelSpec, p1: ParticleSpec, p2: ParticleSpec,
                 inter: InteractionSpec, mass: Optional[float] = None,
                 kappa: Optional[int] = None, ell: Optional[int] = None) -> RadialSystem:
    """One-particle limit of a channel, used only as an oracle target.

    Dirac and Klein-Gordon default to the light particle's mass (the fermion for
    Dirac in SF, the scalar for Klein-Gordon in SF); Schroedinger defaults to the
    reduced mass. ``mass`` overrides the default.
    """
    kind = LimitKind(kind)
    m1, m2 = p1.mass, p2.mass
    common = dict(channel=channel, particles=(p1, p2), interaction=inter,
                  has_lambda_pole=False, variant=kind.value)

    if kind == LimitKind.DIRAC:
        if channel.kind == SystemKind.SCALAR_SCALAR:
            raise DomainError("Scalar-scalar channels have no Dirac limit")
        if channel.kind == SystemKind.SCALAR_FERMION:
            m = mass or _fermion_and_scalar(p1, p2)[0].mass
        else:
            m = mass or min(m1, m2)
        options = allowed_kappas(channel)
        kappa = options[0] if kappa is None else kappa
        if kappa not in options:
            raise DomainError(f"kappa={kappa} is not reached by {channel.label}; options {options}")
        return RadialSystem(dimension=2, evaluator=_dirac(m, inter.alpha, inter.sigma, kappa),
                            component_names=("f", "g"), norm_components=(0, 1), threshold=m,
                            length_scale=_one_body_scale(m, inter), kappa=kappa, **common)

    ell = default_orbital(channel) if ell is None else ell
    if kind == LimitKind.KLEIN_GORDON:
        if channel.kind == SystemKind.FERMION_FERMION:
            raise DomainError("Fermion-fermion channels have no Klein-Gordon limit")
        if inter.sigma > 0:
            raise DomainError("The Klein-Gordon limit is defined for Coulomb coupling only")
        if channel.kind == SystemKind.SCALAR_FERMION:
            m = mass or _fermion_and_scalar(p1, p2)[1].mass
        else:
            m = mass or min(m1, m2)
        return RadialSystem(dimension=2, evaluator=_klein_gordon(m, inter.alpha, ell),
                            component_names=("u", "r_du"), norm_components=(0,), threshold=m,
                            length_scale=_one_body_scale(m, inter), orbital=ell, **common)

    m = mass or reduced_mass(m1, m2)
    return RadialSystem(dimension=2, evaluator=_schroedinger(m, inter.alpha, inter.sigma, ell),
                        component_names=("u", "r_du"), norm_components=(0,), threshold=m,
                        length_scale=_one_body_scale(m, inter), orbital=ell, **common)


def _one_body_scale(m: float, inter: InteractionSpec) -> float:
    coulomb = 1.0 / (m * inter.alpha) if inter.alpha > 0 else math.inf
    linear = (2.0 * m * inter.sigma) ** (-1.0 / 3.0) if inter.sigma > 0 else math.inf
    scale = min(coulomb, linear)
    return scale if math.isfinite(scale) else 1.0 / m


# === ORIGIN ANALYSIS ===

def closed_form_exponents(system: RadialSystem) -> np.ndarray:
    """Indicial exponents at r = 0 worked out by hand, sorted descending."""
    alpha = system.interaction.alpha
    if system.variant == LimitKind.DIRAC.value:
        root = math.sqrt(system.kappa ** 2 - alpha ** 2)
        return np.array([-1 + root, -1 - root])
    if system.variant == LimitKind.KLEIN_GORDON.value:
        root = math.sqrt((system.orbital + 0.5) ** 2 - alpha ** 2)
        return np.array([-0.5 + root, -0.5 - root])
    if system.variant == LimitKind.SCHROEDINGER.value:
        return np.array([float(system.orbital), -1.0 - system.orbital])

    kind = system.channel.kind
    if kind == SystemKind.SCALAR_SCALAR:
        ell = system.orbital
        if alpha == 0:
            return np.array([float(ell), -1.0 - ell])
        root = math.sqrt((ell + 0.5) ** 2 - 3.0 / 16.0 - alpha ** 2 / 4)
        return np.array([-0.25 + root, -0.25 - root])
    if kind == SystemKind.SCALAR_FERMION:
        root = math.sqrt((system.channel.j + 0.5) ** 2 - alpha ** 2 / 4)
        return np.array([-0.5 + root, -0.5 - root])
    if alpha == 0:
        raise DomainError("Without Coulomb coupling the two-fermion origin is not a regular singular point")
    J = int(system.channel.j) * (int(system.channel.j) + 1)
    outer = math.sqrt(1 + J - alpha ** 2 / 4)
    if J == 0:
        return np.array([-1 + outer, -1 - outer])
    inner = math.sqrt(J - alpha ** 2 / 4)
    return np.sort(np.array([-1 + outer, -1 + inner, -1 - inner, -1 - outer]))[::-1]


# === HEAVY-PARTICLE LIMIT AND MIXING ===

def heavy_limit_matrix(channel: ChannelSpec, m_light: float, inter: InteractionSpec,
                       r: float, energy: float) -> np.ndarray:
    """Two-fermion coefficient matrix in the limit m1 -> infinity.

    ``energy`` is the binding energy of the light particle.
    """
    j = int(channel.j)
    lam_light = m_light + energy + inter.alpha / r
    upper = lam_light + m_light
    lower = lam_light - m_light - inter.sigma * r
    e_coef = math.sqrt(j * (j + 1)) / r
    if channel.parity == Parity.I:
        f_coef, g_coef = upper, lower
    else:
        e_coef, f_coef, g_coef = -e_coef, lower, upper
    return np.array([
        [0.0, e_coef, -f_coef, 0.0],
        [e_coef, 1 / r, 0.0, f_coef],
        [g_coef, 0.0, 2 / r, e_coef],
        [0.0, -g_coef, e_coef, 1 / r],
    ])


def mixing_matrix(j: int, parity: Parity) -> np.ndarray:
    """Orthogonal T with y = T z; T^T A T decouples (z1, z4) from (z2, z3)
    in the heavy-particle limit."""
    s0, s1 = spin_weights(j)
    if Parity(parity) == Parity.I:
        return np.array([
            [0.0, 0.0, s0, s1],
            [0.0, 0.0, s1, -s0],
            [s1, -s0, 0.0, 0.0],
            [s0, s1, 0.0, 0.0],
        ])
    return np.array([
        [0.0, 0.0, s0, s1],
        [0.0, 0.0, -s1, s0],
        [s1, s0, 0.0, 0.0],
        [-s0, s1, 0.0, 0.0],
    ])


def dirac_pairs(j: int, parity: Parity) -> List[Tuple[int, Tuple[int, int]]]:
    """(kappa, (upper, lower) indices into z) of the decoupled Dirac pairs."""
    if Parity(parity) == Parity.I:
        return [(-(j + 1), (3, 0)), (j, (2, 1))]
    return [(j + 1, (0, 3)), (-j, (1, 2))]
