"""
Free Solutions
==============
Closed-form regular solutions of the two-body radial systems with
alpha = sigma = 0, written with spherical Bessel functions. They are used to
check the radial systems and the angular machinery at positive kinetic
energy.
"""

import math
from dataclasses import dataclass

import numpy as np

from functions.angular import spherical_bessel, spherical_bessel_derivative
from functions.core_model import SystemKind, SpinKind, Parity
from functions.errors import DomainError
from functions.radial_systems import RadialSystem


def relative_momentum(lambda_: float, m1: float, m2: float) -> float:
    """k with k^2 = (lambda^2 - M^2)(lambda^2 - mu^2) / (4 lambda^2)."""
    big = (m1 + m2) ** 2
    small = (m1 - m2) ** 2
    lam_sq = lambda_ * lambda_
    if lam_sq <= big:
        raise DomainError(f"lambda={lambda_} is below the free threshold {m1 + m2}", lambda_)
    return math.sqrt((lam_sq - big) * (lam_sq - small)) / (2.0 * abs(lambda_))


@dataclass(frozen=True)
class FreeBasis:
    """Regular free solutions of one channel at invariant mass ``lambda_``."""
    system: RadialSystem
    lambda_: float
    momentum: float

    @property
    def columns(self) -> int:
        if self.system.channel.kind == SystemKind.FERMION_FERMION and self.system.dimension == 4:
            return 2
        return 1

    def values(self, r) -> np.ndarray:
        """Array (dimension, columns, len(r)) of the regular solutions."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        kind = self.system.channel.kind
        if kind == SystemKind.SCALAR_SCALAR:
            return self._scalar_scalar(r)
        if kind == SystemKind.SCALAR_FERMION:
            return self._scalar_fermion(r)
        return self._fermion_fermion(r)

    def _scalar_scalar(self, r):
        ell = self.system.orbital
        x = self.momentum * r
        u = spherical_bessel(ell, x)
        w = x * spherical_bessel_derivative(ell, x)
        return np.array([[u], [w]])

    def _scalar_fermion(self, r):
        fermion = next(p for p in self.system.particles if p.spin == SpinKind.FERMION)
        scalar = next(p for p in self.system.particles if p.spin == SpinKind.SCALAR)
        m_f = fermion.mass if self.system.channel.parity == Parity.I else -fermion.mass
        lam, k = self.lambda_, self.momentum
        ell = int(round(self.system.channel.j - 0.5))
        x = k * r
        f = spherical_bessel(ell, x)
        g = -(2.0 * k * lam / ((lam + m_f) ** 2 - scalar.mass ** 2)) * spherical_bessel(ell + 1, x)
        return np.array([[f], [g]])

    def _fermion_fermion(self, r):
        m1, m2 = self.system.masses
        small = m1 - m2
        if self.system.channel.parity == Parity.II:
            small = -(m1 + m2)
        j = int(self.system.channel.j)
        root_J = math.sqrt(j * (j + 1))
        lam, k = self.lambda_, self.momentum
        denom = lam * lam - small * small
        x = k * r
        jj = spherical_bessel(j, x)
        jn = spherical_bessel(j + 1, x)

        def column(a_amp: float, b_amp: float) -> np.ndarray:
            y1 = a_amp * jj
            y2 = b_amp * jj
            y3 = (2 * a_amp * j * lam + 2 * b_amp * root_J * small) * jj / (denom * r) \
                - 2 * a_amp * k * lam * jn / denom
            y4 = -(2 * a_amp * root_J * small + 2 * b_amp * (j + 1) * lam) * jj / (denom * r) \
                + 2 * b_amp * k * lam * jn / denom
            return np.array([y1, y2, y3, y4])

        if j == 0:
            col = column(1.0, 0.0)
            return col[[0, 2]][:, None, :]
        return np.stack([column(1.0, 0.0), column(0.0, 1.0)], axis=1)


def free_solution_basis(system: RadialSystem, lambda_: float) -> FreeBasis:
    if not system.is_free:
        raise DomainError("Free solutions need alpha = sigma = 0")
    if system.variant != "two-body":
        raise DomainError("Free solutions are provided for two-body channels only")
    m1, m2 = system.masses
    return FreeBasis(system=system, lambda_=lambda_, momentum=relative_momentum(lambda_, m1, m2))


def free_residual(basis: FreeBasis, r: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """max |y' + A y| over the grid, with y' by central differences."""
    energy = basis.lambda_ - basis.system.threshold
    worst = 0.0
    for radius in np.atleast_1d(r):
        h = step * radius
        y = basis.values([radius - h, radius, radius + h])
        dy = (y[..., 2] - y[..., 0]) / (2 * h)
        a = basis.system.matrix(radius, energy)
        residual = dy + a @ y[..., 1]
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst
