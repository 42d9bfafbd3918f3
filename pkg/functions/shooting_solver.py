"""
Shooting Solver
===============
Eigenvalues of a radial system by two-sided shooting.

The regular solutions start from the series at r0 and are integrated
outwards; the decaying solutions start from the local eigenvectors of A at a
far radius and are integrated inwards. At the matching radius the columns
are normalised and stacked; the determinant of that matrix vanishes exactly
at the eigenvalues. Roots are bracketed on a scan and refined with brentq.
"""

import math
from dataclasses import dataclass, field, asdict
from typing import Dict, Any, List, Optional, Tuple, Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from functions import series_start
from functions.core_model import Parity, SystemKind
from functions.errors import DomainError, IntegrationError, FrobeniusError
from functions.radial_systems import RadialSystem


CONFIG = {
    "method": "DOP853",
    "rtol": 1e-12,
    "atol": 1e-30,
    "scan_points": 400,
    "bracket_points": 60,
    "decay_target": math.log(1e18),
    "radius_growth": 1.05,
    "max_radius_factor": 1e7,
    "subdivision_levels": 4,
    "subdivision_points": 16,
    "root_rtol": 4 * np.finfo(float).eps,
    "root_acceptance": 1e-6,
}


@dataclass
class SolverSettings:
    """Numerical knobs of one solve; defaults come from CONFIG."""
    method: str = CONFIG["method"]
    rtol: float = CONFIG["rtol"]
    atol: float = CONFIG["atol"]
    scan_points: int = CONFIG["scan_points"]
    bracket_points: int = CONFIG["bracket_points"]
    decay_target: float = CONFIG["decay_target"]
    series_order: int = series_start.CONFIG["order"]
    use_pade: bool = series_start.CONFIG["use_pade"]
    match_radius: Optional[float] = None
    subdivision_levels: int = CONFIG["subdivision_levels"]

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise DomainError("Tolerances must be positive")
        if self.scan_points < 3:
            raise DomainError(f"Need at least 3 scan points, got {self.scan_points}")
        if self.match_radius is not None and self.match_radius <= 0:
            raise DomainError(f"Matching radius must be positive, got {self.match_radius}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class Branch:
    """Columns integrated from one side up to the matching radius."""
    solution: Any
    start: float
    end: float
    norms: np.ndarray
    columns: int

    def values(self, r) -> np.ndarray:
        """(dimension, columns, len(r)) normalised the same way as in the determinant."""
        raw = self.solution(np.atleast_1d(r))
        dim = raw.shape[0] // self.columns
        return raw.reshape(dim, self.columns, -1) / self.norms[None, :, None]


@dataclass
class DeterminantValue:
    energy: float
    value: float
    match_radius: float
    left: np.ndarray
    right: np.ndarray


@dataclass
class ShootingState:
    """Everything needed to rebuild the solution at one energy."""
    energy: float
    match_radius: float
    r_max: float
    series: series_start.FrobeniusBasis
    left: Branch
    right: Branch
    determinant: float


@dataclass
class SpectralResult:
    """Eigenvalues of one radial system inside an energy window."""
    label: str
    variant: str
    window: Tuple[float, float]
    eigenvalues: List[float] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    evaluations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def match_radius(system: RadialSystem, settings: SolverSettings) -> float:
    return settings.match_radius or system.length_scale


def _check_energy(system: RadialSystem, energy: float) -> None:
    if system.threshold + energy <= 0 and system.has_lambda_pole:
        raise DomainError(f"Binding energy {energy} gives a non-positive invariant mass", energy)
    if energy >= 0 and not system.interaction.is_cornell:
        raise DomainError(f"E={energy} lies in the continuum of a Coulomb system", energy)


def _decay_rate(a: np.ndarray, count: int) -> Optional[float]:
    values = np.linalg.eigvals(a)
    positive = np.sort(values.real[values.real > 0])
    if positive.size < count:
        return None
    return float(positive[0])


def asymptotic_radius(system: RadialSystem, energy: float, start: float,
                      settings: SolverSettings) -> float:
    """Radius where the slowest decaying solution has fallen by exp(decay_target)."""
    count = system.dimension // 2
    limit = CONFIG["max_radius_factor"] * system.length_scale
    r = start
    accumulated = 0.0
    rate = _decay_rate(system.matrix(r, energy), count) or 0.0
    while accumulated < settings.decay_target:
        step = r * (CONFIG["radius_growth"] - 1.0)
        r_next = r + step
        next_rate = _decay_rate(system.matrix(r_next, energy), count) or 0.0
        accumulated += 0.5 * (rate + next_rate) * step
        r, rate = r_next, next_rate
        if r > limit:
            raise IntegrationError("Decaying solutions not found before the radius limit", r)
    return r


def asymptotic_start(system: RadialSystem, energy: float, r_max: float) -> np.ndarray:
    """(dimension, d/2) decaying eigenvectors of A(r_max), canonicalised as V inv(V_top)."""
    count = system.dimension // 2
    values, vectors = np.linalg.eig(system.matrix(r_max, energy))
    order = np.argsort(-values.real)
    chosen = order[:count]
    if np.any(values.real[chosen] <= 0):
        raise IntegrationError("Not enough decaying directions at the far radius", r_max)
    v = vectors[:, chosen]
    top = v[:count]
    if np.linalg.cond(top) < 1e12:
        v = v @ np.linalg.inv(top)
    if np.max(np.abs(v.imag)) > 1e-8 * np.max(np.abs(v)):
        raise IntegrationError("Decaying directions are complex at the far radius", r_max)
    return v.real


def _integrate(system: RadialSystem, energy: float, y0: np.ndarray, span: Tuple[float, float],
               settings: SolverSettings) -> Any:
    dim, cols = y0.shape

    def rhs(r, y):
        return -(system.matrix(r, energy) @ y.reshape(dim, cols)).ravel()

    sol = solve_ivp(rhs, span, y0.ravel(), method=settings.method, rtol=settings.rtol,
                    atol=settings.atol, dense_output=True)
    if sol.status != 0:
        raise IntegrationError(f"Integration failed: {sol.message}", float(sol.t[-1]))
    return sol


def shoot(system: RadialSystem, energy: float, settings: Optional[SolverSettings] = None) -> ShootingState:
    """Integrate both sides to the matching radius at one energy."""
    settings = settings or SolverSettings()
    _check_energy(system, energy)
    r_c = match_radius(system, settings)
    series = series_start.frobenius_start(system, energy, order=settings.series_order,
                                          use_pade=settings.use_pade)
    if series.r0 >= r_c:
        raise IntegrationError("Series start lies beyond the matching radius", series.r0)
    r_max = asymptotic_radius(system, energy, r_c, settings)

    left_start = series.start_values()
    left_sol = _integrate(system, energy, left_start, (series.r0, r_c), settings)
    right_start = asymptotic_start(system, energy, r_max)
    right_sol = _integrate(system, energy, right_start, (r_max, r_c), settings)

    dim = system.dimension
    cols = dim // 2
    left_end = left_sol.y[:, -1].reshape(dim, cols)
    right_end = right_sol.y[:, -1].reshape(dim, cols)
    left_norms = np.linalg.norm(left_end, axis=0)
    right_norms = np.linalg.norm(right_end, axis=0)
    matrix = np.hstack([left_end / left_norms, right_end / right_norms])
    value = float(np.linalg.det(matrix))

    return ShootingState(
        energy=energy, match_radius=r_c, r_max=r_max, series=series,
        left=Branch(left_sol.sol, series.r0, r_c, left_norms, cols),
        right=Branch(right_sol.sol, r_max, r_c, right_norms, cols),
        determinant=value,
    )


def spectral_determinant(system: RadialSystem, energy: float,
                         settings: Optional[SolverSettings] = None) -> DeterminantValue:
    state = shoot(system, energy, settings)
    r_c = state.match_radius
    return DeterminantValue(energy=energy, value=state.determinant, match_radius=r_c,
                            left=state.left.values([r_c])[..., 0],
                            right=state.right.values([r_c])[..., 0])


def scan_determinant(system: RadialSystem, energies: np.ndarray,
                     settings: Optional[SolverSettings] = None) -> np.ndarray:
    """Determinant on a grid of energies; NaN where the solve fails."""
    settings = settings or SolverSettings()
    values = np.empty(len(energies))
    for i, energy in enumerate(energies):
        try:
            values[i] = shoot(system, float(energy), settings).determinant
        except (IntegrationError, FrobeniusError, DomainError):
            values[i] = np.nan
    return values


def _refine(f: Callable[[float], float], a: float, b: float, fa: float, fb: float,
            warnings: List[str]) -> Optional[float]:
    xtol = 1e-17 * max(abs(a), abs(b), 1e-300)
    root = brentq(f, a, b, xtol=xtol, rtol=CONFIG["root_rtol"])
    if abs(f(root)) > CONFIG["root_acceptance"] * max(abs(fa), abs(fb)):
        warnings.append(f"sign change near E={root:.12e} is not a zero of the determinant; skipped")
        return None
    return root


def _roots_on_grid(f: Callable[[float], float], grid: np.ndarray, values: np.ndarray,
                   levels: int, warnings: List[str]) -> List[float]:
    roots = []
    for i in range(len(grid) - 1):
        fa, fb = values[i], values[i + 1]
        if np.isnan(fa) or np.isnan(fb):
            continue
        if fa == 0.0:
            roots.append(float(grid[i]))
        elif fa * fb < 0:
            root = _refine(f, grid[i], grid[i + 1], fa, fb, warnings)
            if root is not None:
                roots.append(root)
    if not np.isnan(values[-1]) and values[-1] == 0.0:
        roots.append(float(grid[-1]))

    if levels <= 0:
        return roots
    magnitude = np.abs(values)
    for i in range(1, len(grid) - 1):
        window = magnitude[i - 1:i + 2]
        if np.any(np.isnan(window)) or not (magnitude[i] < magnitude[i - 1] and magnitude[i] < magnitude[i + 1]):
            continue
        if values[i - 1] * values[i] <= 0 or values[i] * values[i + 1] <= 0:
            continue
        fine = np.linspace(grid[i - 1], grid[i + 1], CONFIG["subdivision_points"] + 1)
        fine_values = np.array([f(e) for e in fine])
        found = _roots_on_grid(f, fine, fine_values, levels - 1, warnings)
        if found:
            warnings.append(f"close pair resolved by subdivision near E={grid[i]:.12e}")
        roots.extend(found)
    return roots


def find_eigenvalues(system: RadialSystem, window: Tuple[float, float],
                     settings: Optional[SolverSettings] = None,
                     brackets: Optional[List[Tuple[float, float]]] = None) -> SpectralResult:
    """All eigenvalues in ``window``; ``brackets`` restricts the scan to given intervals."""
    settings = settings or SolverSettings()
    low, high = window
    if not low < high:
        raise DomainError(f"Empty energy window ({low}, {high})")
    result = SpectralResult(label=system.channel.label, variant=system.variant, window=(low, high))

    if system.is_free and system.dimension == 4:
        result.warnings.append("no interaction: the two-fermion system has no bound states")
        return result

    counter = {"calls": 0}

    def determinant(energy: float) -> float:
        counter["calls"] += 1
        return shoot(system, energy, settings).determinant

    intervals = brackets or [(low, high)]
    points = settings.bracket_points if brackets else settings.scan_points
    roots: List[float] = []
    for a, b in intervals:
        a, b = max(a, low), min(b, high)
        if a >= b:
            continue
        grid = np.linspace(a, b, points)
        values = scan_determinant(system, grid, settings)
        counter["calls"] += len(grid)
        failed = int(np.sum(np.isnan(values)))
        if failed:
            result.warnings.append(f"{failed} scan points failed in [{a:.6e}, {b:.6e}]")
        roots.extend(_roots_on_grid(determinant, grid, values, settings.subdivision_levels,
                                    result.warnings))

    unique: List[float] = []
    for root in sorted(roots):
        if not unique or abs(root - unique[-1]) > 1e-13 * max(abs(root), 1e-300):
            unique.append(root)
    result.eigenvalues = unique
    result.evaluations = counter["calls"]
    return result


def equal_mass_split(system: RadialSystem) -> List[RadialSystem]:
    """Two decoupled 2x2 systems when the off-diagonal coupling vanishes identically.

    This happens for two-fermion parity I channels with equal masses; each half
    carries one series of levels, which keeps near-degenerate pairs apart.
    """
    channel = system.channel
    m1, m2 = system.masses
    if (channel.kind != SystemKind.FERMION_FERMION or channel.parity != Parity.I
            or system.dimension != 4 or m1 != m2 or system.variant != "two-body"):
        return [system]
    halves = []
    for keep in ((0, 2), (1, 3)):
        idx = np.array(keep)

        def evaluator(r, energy, idx=idx, parent=system.evaluator):
            return parent(r, energy)[np.ix_(idx, idx)]

        names = tuple(system.component_names[i] for i in keep)
        halves.append(RadialSystem(
            channel=channel, particles=system.particles, interaction=system.interaction,
            dimension=2, evaluator=evaluator, component_names=names, norm_components=(0, 1),
            threshold=system.threshold, variant=system.variant, length_scale=system.length_scale,
            parent_indices=keep,
        ))
    return halves
