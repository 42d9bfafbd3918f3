"""
Eigenfunctions
==============
Radial eigenfunctions at a converged eigenvalue: the null combination of
the matched columns, sampled on a geometric grid, normalised, with node
counts, state character and the full set of radial functions of a
two-fermion state.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Tuple

import numpy as np
from scipy.integrate import simpson

from functions.angular import spin_weights
from functions.core_model import SystemKind, Parity
from functions.errors import DomainError
from functions.radial_systems import RadialSystem
from functions.shooting_solver import SolverSettings, shoot


CONFIG = {
    "grid_points": 4000,
    "inner_fraction": 1e-2,
    "node_floor": 1e-8,
}

FF_RADIALS = ("a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1")


@dataclass
class Eigenfunction:
    """Sampled radial solution; ``components`` has shape (dimension, len(r))."""
    energy: float
    r: np.ndarray
    components: np.ndarray
    names: Tuple[str, ...]
    norm_components: Tuple[int, ...]
    nodes: int = 0
    dominant: int = 0
    match_residual: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def component(self, name: str) -> np.ndarray:
        return self.components[self.names.index(name)]

    def weights(self) -> np.ndarray:
        """int y_i^2 r^2 dr for every component."""
        return np.array([simpson(c * c * self.r ** 2, x=self.r) for c in self.components])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "energy": self.energy,
            "names": list(self.names),
            "nodes": self.nodes,
            "dominant": self.names[self.dominant],
            "match_residual": self.match_residual,
            "warnings": self.warnings,
        }


def normalization(r: np.ndarray, components: np.ndarray) -> float:
    """sqrt(int sum_i y_i^2 r^2 dr) over the given components."""
    density = np.sum(components ** 2, axis=0) * r ** 2
    return math.sqrt(simpson(density, x=r))


def count_nodes(values: np.ndarray, floor: Optional[float] = None) -> int:
    """Sign changes of a sampled function, ignoring points below floor * max|values|."""
    floor = CONFIG["node_floor"] if floor is None else floor
    cutoff = floor * np.max(np.abs(values))
    significant = values[np.abs(values) > cutoff]
    if significant.size < 2:
        return 0
    return int(np.sum(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


def eigenfunction_full(system: RadialSystem, energy: float,
                       settings: Optional[SolverSettings] = None,
                       grid_points: Optional[int] = None) -> Eigenfunction:
    """Build, sample and normalise the eigenfunction at a converged eigenvalue."""
    settings = settings or SolverSettings()
    grid_points = grid_points or CONFIG["grid_points"]
    state = shoot(system, energy, settings)
    r_c = state.match_radius
    left = state.left.values([r_c])[..., 0]
    right = state.right.values([r_c])[..., 0]

    _, singular_values, vh = np.linalg.svd(np.hstack([left, -right]))
    null = vh[-1]
    cols = left.shape[1]
    left_coef, right_coef = null[:cols], null[cols:]
    residual = float(singular_values[-1] / singular_values[0])

    r_inner = CONFIG["inner_fraction"] * state.series.r0
    r = np.geomspace(r_inner, state.r_max, grid_points)
    components = np.empty((system.dimension, r.size))

    inside = r < state.series.r0
    middle = (r >= state.series.r0) & (r <= r_c)
    outside = r > r_c
    if np.any(inside):
        series = state.series.values(r[inside])
        start_norms = state.left.norms
        components[:, inside] = np.einsum("dcn,c->dn", series / start_norms[None, :, None], left_coef)
    if np.any(middle):
        components[:, middle] = np.einsum("dcn,c->dn", state.left.values(r[middle]), left_coef)
    if np.any(outside):
        components[:, outside] = np.einsum("dcn,c->dn", state.right.values(r[outside]), right_coef)

    norm = normalization(r, components[list(system.norm_components)])
    components /= norm
    function = Eigenfunction(energy=energy, r=r, components=components,
                             names=system.component_names, norm_components=system.norm_components,
                             match_residual=residual, warnings=list(state.series.warnings))

    weights = function.weights()
    dominant = max(system.norm_components, key=lambda i: weights[i])
    pivot = np.argmax(np.abs(components[dominant]))
    if components[dominant, pivot] < 0:
        function.components = -components
    function.dominant = dominant
    function.nodes = count_nodes(function.components[dominant])
    return function


def embed_components(system: RadialSystem, function: Eigenfunction, dimension: int = 4) -> np.ndarray:
    """Components of a decoupled half placed back into the full two-fermion ordering."""
    if system.parent_indices is None:
        return function.components
    full = np.zeros((dimension, function.r.size))
    full[list(system.parent_indices)] = function.components
    return full


def reconstruct_ff_radials(system: RadialSystem, function: Eigenfunction) -> Dict[str, np.ndarray]:
    """The eight radial functions a0..d1 of a two-fermion state, normalised together."""
    if system.channel.kind != SystemKind.FERMION_FERMION or system.variant != "two-body":
        raise DomainError("Radial reconstruction needs a two-fermion two-body system")
    j = int(system.channel.j)
    r = function.r
    m1, m2 = system.masses
    mu = m1 - m2
    alpha, sigma = system.interaction.alpha, system.interaction.sigma
    lam_r = system.threshold + function.energy + alpha / r
    mass_r = m1 + m2 + sigma * r
    root_J = math.sqrt(j * (j + 1))

    if j == 0:
        a_p, u_p = function.components
        b_m = np.zeros_like(r)
        v_m = np.zeros_like(r)
    else:
        a_p, b_m, u_p, v_m = embed_components(system, function)

    if system.channel.parity == Parity.I:
        a_m = mass_r * a_p / lam_r
        b_p = mass_r * b_m / lam_r
        u_m = -(2 * root_J * b_m / r + mu * u_p) / lam_r
        v_p = (2 * root_J * a_p / r - mu * v_m) / lam_r
    else:
        a_m = -mu * a_p / lam_r
        b_p = -mu * b_m / lam_r
        u_m = -(2 * root_J * b_m / r - mass_r * u_p) / lam_r
        v_p = (2 * root_J * a_p / r + mass_r * v_m) / lam_r

    s0, s1 = spin_weights(j)
    c_p, c_m = -s0 * u_p - s1 * v_p, -s0 * u_m - s1 * v_m
    d_p, d_m = s1 * u_p - s0 * v_p, s1 * u_m - s0 * v_m

    radials = {
        "a0": (a_p + a_m) / 2, "a1": (a_p - a_m) / 2,
        "b0": (b_p + b_m) / 2, "b1": (b_p - b_m) / 2,
        "c0": (c_p + c_m) / 2, "c1": (c_p - c_m) / 2,
        "d0": (d_p + d_m) / 2, "d1": (d_p - d_m) / 2,
    }
    norm = normalization(r, np.array([radials[k] for k in FF_RADIALS]))
    return {k: v / norm for k, v in radials.items()}


def radial_weights(r: np.ndarray, radials: Dict[str, np.ndarray]) -> Dict[str, float]:
    return {k: float(simpson(v * v * r ** 2, x=r)) for k, v in radials.items()}


def classify_state(system: RadialSystem, function: Eigenfunction) -> str:
    """Spectroscopic character of a state.

    Two-fermion parity I: 'singlet' (a dominant) or 'triplet' (b dominant), l = j.
    Two-fermion parity II: 'l=j-1' (c dominant) or 'l=j+1' (d dominant).
    Other channels report the orbital of the dominant component.
    """
    if system.channel.kind == SystemKind.FERMION_FERMION and system.variant == "two-body":
        weights = radial_weights(function.r, reconstruct_ff_radials(system, function))
        j = int(system.channel.j)
        if system.channel.parity == Parity.I:
            singlet = weights["a0"] + weights["a1"]
            triplet = weights["b0"] + weights["b1"]
            return "singlet" if singlet >= triplet else "triplet"
        lower = weights["c0"] + weights["c1"]
        upper = weights["d0"] + weights["d1"]
        if j == 0:
            return f"l={j + 1}"
        return f"l={j - 1}" if lower >= upper else f"l={j + 1}"
    if system.orbital is not None and system.channel.kind != SystemKind.SCALAR_FERMION:
        return f"l={system.orbital}"
    j = system.channel.j
    orbital = j - 0.5 if function.dominant == 0 else j + 0.5
    return f"l={int(round(orbital))}"


def ss_chain_components(system: RadialSystem, function: Eigenfunction) -> Dict[str, np.ndarray]:
    """phi1..phi4 of a scalar-scalar state and the residuals of the first three rows.

    phi1 = u; the other components follow from u and its Laplacian. The rows are
    satisfied identically, so their residuals measure round-off only.
    """
    if system.channel.kind != SystemKind.SCALAR_SCALAR or system.variant != "two-body":
        raise DomainError("The component chain is defined for scalar-scalar systems")
    m1, m2 = system.masses
    big, mu = m1 + m2, m1 - m2
    alpha = system.interaction.alpha
    r = function.r
    u = function.component("u")
    du = function.component("r_du") / r
    b = function.energy + alpha / r
    lam_r = big + b
    eta_sq = b * (2 * big + b) * (2 * m2 + b) * (2 * m1 + b) / (4 * lam_r ** 2)
    laplacian = alpha * du / (2 * r * r * lam_r) - eta_sq * u

    phi1 = u
    phi2 = b * (lam_r + mu) / (4 * m2 * lam_r) * phi1
    phi3 = b * (lam_r - mu) / (4 * m1 * lam_r) * phi1
    phi4 = ((lam_r - mu) * phi2 + laplacian / (2 * m2)) / (2 * m1)
    row1 = b * phi1 - 2 * m2 * phi2 - 2 * m1 * phi3
    row2 = laplacian / (2 * m2) + (lam_r - mu) * phi2 - 2 * m1 * phi4
    row3 = laplacian / (2 * m1) + (lam_r + mu) * phi3 - 2 * m2 * phi4
    return {"phi1": phi1, "phi2": phi2, "phi3": phi3, "phi4": phi4,
            "row1": row1, "row2": row2, "row3": row3}
