"""
Series Start
============
Regular solutions of y' + A(r) y = 0 near the regular singular point r = 0.

A(r) has a simple pole at the origin. Its Laurent coefficients are read off
an FFT of r^2 A(r) sampled on a circle that stays inside the nearest other
singularity, the indicial exponents come from the residue, and the
coefficients c_k of y = x^rho sum_k c_k x^k (x = r / radius) follow from

    ((rho + k) I + A_-1) c_k = -sum_{n=0}^{k-1} A_n c_{k-1-n}
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.interpolate import pade

from functions.errors import FrobeniusError
from functions.radial_systems import RadialSystem


CONFIG = {
    "order": 30,
    "fft_points": 64,
    "start_fraction": 1e-3,
    "series_tolerance": 1e-14,
    "max_shrinks": 8,
    "double_pole_tolerance": 1e-9,
    "resonance_tolerance": 1e-9,
    "use_pade": False,
}


@dataclass
class FrobeniusBasis:
    """Regular solutions at the origin, evaluated through their series."""
    exponents: np.ndarray
    coefficients: List[np.ndarray]
    radius: float
    r0: float
    residue: np.ndarray
    use_pade: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def columns(self) -> int:
        return len(self.exponents)

    def values(self, r) -> np.ndarray:
        """Array (dimension, columns, len(r)) of the series solutions at r <= r0."""
        x = np.atleast_1d(np.asarray(r, dtype=float)) / self.radius
        out = []
        for rho, coeffs in zip(self.exponents, self.coefficients):
            if self.use_pade:
                series = np.array([_pade_sum(coeffs[:, i], x) for i in range(coeffs.shape[1])])
            else:
                powers = x[None, :] ** np.arange(coeffs.shape[0])[:, None]
                series = coeffs.T @ powers
            out.append(series * x ** rho)
        return np.stack(out, axis=1)

    def start_values(self) -> np.ndarray:
        """(dimension, columns) matrix of the solutions at r0."""
        return self.values([self.r0])[..., 0]

    def tail_estimate(self, r: float) -> float:
        """Size of the last two terms relative to the partial sum at r."""
        x = r / self.radius
        worst = 0.0
        for coeffs in self.coefficients:
            powers = x ** np.arange(coeffs.shape[0])
            total = np.max(np.abs(coeffs.T @ powers))
            tail = np.max(np.abs(coeffs[-2:].T * powers[-2:]))
            worst = max(worst, tail / total if total > 0 else math.inf)
        return worst


def _pade_sum(taylor: np.ndarray, x: np.ndarray) -> np.ndarray:
    m = (len(taylor) - 1) // 2
    p, q = pade(taylor, m)
    return p(x) / q(x)


def laurent_coefficients(system: RadialSystem, energy: float, radius: float,
                         points: int, count: int) -> np.ndarray:
    """B_n with r^2 A(r) = sum_n B_n r^n, for n < count, scaled by radius^(n-1).

    Returned in the variable x = r / radius, i.e. as coefficients of
    x^2 * radius * A(radius * x).
    """
    theta = 2.0 * np.pi * np.arange(points) / points
    z = radius * np.exp(1j * theta)
    samples = np.array([(zk / radius) ** 2 * radius * np.asarray(system.matrix(zk, energy), dtype=complex)
                        for zk in z])
    coeffs = np.fft.fft(samples, axis=0) / points
    return coeffs[:count]


def _null_vectors(matrix: np.ndarray, count: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(matrix)
    return vh[-count:].conj().T


def _canonical_sign(vector: np.ndarray) -> np.ndarray:
    pivot = np.argmax(np.abs(vector))
    return vector if vector[pivot].real >= 0 else -vector


def select_exponents(residue: np.ndarray) -> np.ndarray:
    """The d/2 largest real eigenvalues of -A_-1, checked for square integrability."""
    values = np.linalg.eigvals(-residue)
    if np.max(np.abs(values.imag)) > 1e-10 * (1 + np.max(np.abs(values))):
        raise FrobeniusError(f"Complex indicial exponents {values}: coupling too strong")
    values = np.sort(values.real)[::-1]
    chosen = values[: residue.shape[0] // 2]
    if np.any(2 * chosen + 3 <= 0):
        raise FrobeniusError(f"Regular exponents {chosen} are not square integrable")
    return chosen


def frobenius_start(system: RadialSystem, energy: float, order: Optional[int] = None,
                    r0: Optional[float] = None, use_pade: Optional[bool] = None) -> FrobeniusBasis:
    """Series solutions regular at the origin and a start radius r0 where they are accurate."""
    order = order or CONFIG["order"]
    use_pade = CONFIG["use_pade"] if use_pade is None else use_pade
    singular = system.singular_radius(energy)
    if r0 is None:
        r0 = min(CONFIG["start_fraction"] * system.length_scale, 0.25 * singular)
    radius = min(0.5 * singular, 4.0 * r0)
    dim = system.dimension

    b = laurent_coefficients(system, energy, radius, CONFIG["fft_points"], order + 2)
    if np.max(np.abs(b.imag)) > 1e-8 * (1 + np.max(np.abs(b))):
        raise FrobeniusError("Laurent coefficients are not real; the system is not real on the axis")
    b = b.real
    scale = 1 + np.max(np.abs(b[1]))
    if np.max(np.abs(b[0])) > CONFIG["double_pole_tolerance"] * scale:
        raise FrobeniusError("A(r) has a pole of order two at the origin; no Frobenius start exists")
    residue = b[1]
    regular = b[2:]

    exponents = select_exponents(residue)
    coefficients = []
    done = []
    for rho in exponents:
        multiplicity = int(np.sum(np.isclose(exponents, rho, atol=1e-10)))
        seen = sum(1 for r in done if abs(r - rho) < 1e-10)
        c0 = _null_vectors(rho * np.eye(dim) + residue, multiplicity)[:, seen].real
        c0 = _canonical_sign(c0 / np.linalg.norm(c0))
        series = [c0]
        for k in range(1, order + 1):
            lhs = (rho + k) * np.eye(dim) + residue
            singular_values = np.linalg.svd(lhs, compute_uv=False)
            if singular_values[-1] < CONFIG["resonance_tolerance"] * singular_values[0]:
                raise FrobeniusError(f"Resonant exponents: rho={rho:.6g} and rho+{k} are both roots")
            rhs = -sum(regular[n] @ series[k - 1 - n] for n in range(k))
            series.append(np.linalg.solve(lhs, rhs))
        coefficients.append(np.array(series))
        done.append(rho)

    basis = FrobeniusBasis(exponents=exponents, coefficients=coefficients, radius=radius,
                           r0=r0, residue=residue, use_pade=use_pade)
    for _ in range(CONFIG["max_shrinks"]):
        if basis.tail_estimate(basis.r0) <= CONFIG["series_tolerance"]:
            return basis
        basis.r0 *= 0.5
        basis.warnings.append(f"series tail too large, start radius reduced to {basis.r0:.3e}")
    if basis.tail_estimate(basis.r0) > CONFIG["series_tolerance"]:
        raise FrobeniusError(f"Series does not converge at r0={basis.r0:.3e}")
    return basis
