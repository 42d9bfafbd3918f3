"""
Solve Controller
================
Runs every channel of a configuration and collects the levels, with
per-channel failure isolation, progress reporting and an optional
thread pool.
"""

import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from datetime import datetime
from typing import Dict, List, Any, Optional, Callable, Tuple

import numpy as np

from functions.analytic_oracles import coulomb_binding_bracket
from functions.breit_perturbation import assemble_state16, breit_shift_closed_form
from functions.classical_orbits import (
    OrbitRegime, OrbitSample, classify_regime, integrate_trajectory, integrate_trajectory_r,
    momentum_squared, periapsis_advance, quartic,
)
from functions.config_loader import ChannelRequest, RunConfig
from functions.core_model import SystemKind, reduced_mass
from functions.eigenfunctions import classify_state, eigenfunction_full, reconstruct_ff_radials
from functions.errors import ConfigError, DomainError, SpectraError
from functions.radial_systems import RadialSystem, build_system, default_orbital
from functions.shooting_solver import (
    SolverSettings, equal_mass_split, find_eigenvalues, scan_determinant,
)

CONFIG = {
    "default_count": 3,
    "lambda_floor": 0.05,
    "orbit_reach": 20.0,
    "version": "1.0",
}

ProgressCallback = Callable[[str], None]


@dataclass
class LevelRecord:
    """One eigenvalue with its diagnostics; energies in reference units."""
    index: int
    energy: float
    lambda_: float
    nodes: int = -1
    character: str = ""
    shift: Optional[float] = None
    match_residual: float = 0.0
    warnings: List[str] = field(default_factory=list)

    @property
    def total(self) -> float:
        return self.lambda_ + (self.shift or 0.0)

    def gap_to(self, other: "LevelRecord") -> float:
        """total - other.total, taken part by part so no lambda-sized sums are formed."""
        return (self.energy - other.energy) + ((self.shift or 0.0) - (other.shift or 0.0))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["total"] = self.total
        return data


@dataclass
class ChannelReport:
    index: int
    label: str
    window: Optional[Tuple[float, float]] = None
    levels: List[LevelRecord] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    evaluations: int = 0
    seconds: float = 0.0
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SolveResults:
    """Container for one solve run."""
    success: bool
    channels: List[ChannelReport]
    metadata: Dict[str, Any]
    error_message: Optional[str] = None

    @property
    def failed_channels(self) -> List[ChannelReport]:
        return [c for c in self.channels if c.error]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)


def default_window(request: ChannelRequest, config: RunConfig) -> Tuple[float, float]:
    """Binding-energy window: explicit, bundled Cornell range, or the Coulomb shells of the channel."""
    if request.window is not None:
        return request.window
    inter = config.interaction
    m1, m2 = (p.mass for p in config.particles)
    if inter.is_cornell:
        if config.scale_mev is None:
            raise ConfigError(f"{request.channel.label}: Cornell channels in natural units need a window")
        from utils.meson_constants import DEFAULT_WINDOW_MEV
        low, high = (w / config.scale_mev for w in DEFAULT_WINDOW_MEV)
        return max(low, -(1 - CONFIG["lambda_floor"]) * (m1 + m2)), high
    count = request.count or CONFIG["default_count"]
    n_low = default_orbital(request.channel) + 1
    m_r = reduced_mass(m1, m2)
    low, _ = coulomb_binding_bracket(n_low, m_r, inter.alpha)
    _, high = coulomb_binding_bracket(n_low + count - 1, m_r, inter.alpha)
    return low, high


def breit_level_shift(system: RadialSystem, function, g: float) -> Optional[float]:
    """First-order Breit shift of a two-fermion level; None for other channels."""
    if system.channel.kind != SystemKind.FERMION_FERMION or system.variant != "two-body" or g == 0:
        return None
    radials = reconstruct_ff_radials(system, function)
    state = assemble_state16(function.r, radials, int(system.channel.j), system.channel.parity)
    return breit_shift_closed_form(state, g)


def solve_levels(system: RadialSystem, window: Tuple[float, float],
                 settings: Optional[SolverSettings] = None, grid_points: Optional[int] = None,
                 count: Optional[int] = None, g: Optional[float] = None,
                 bracketed: bool = False) -> ChannelReport:
    """Eigenvalues of a channel with node counts, characters and Breit shifts.

    Equal-mass two-fermion parity I channels are solved as two decoupled halves.
    ``bracketed`` treats the window as a narrow oracle bracket and scans it coarsely.
    """
    settings = settings or SolverSettings()
    g = system.interaction.g if g is None else g
    report = ChannelReport(index=0, label=system.channel.label, window=window)
    found: List[Tuple[float, RadialSystem]] = []
    for part in equal_mass_split(system):
        brackets = [window] if bracketed else None
        spectrum = find_eigenvalues(part, window, settings, brackets=brackets)
        report.warnings.extend(spectrum.warnings)
        report.evaluations += spectrum.evaluations
        found.extend((energy, part) for energy in spectrum.eigenvalues)
    found.sort(key=lambda item: item[0])
    if count is not None:
        found = found[:count]

    for index, (energy, part) in enumerate(found):
        level = LevelRecord(index=index, energy=energy, lambda_=part.threshold + energy)
        try:
            function = eigenfunction_full(part, energy, settings, grid_points)
            level.nodes = function.nodes
            level.match_residual = function.match_residual
            level.character = classify_state(part, function)
            level.warnings.extend(function.warnings)
            level.shift = breit_level_shift(part, function, g)
        except SpectraError as e:
            level.warnings.append(f"eigenfunction unavailable: {e}")
        report.levels.append(level)
    return report


class SolveController:
    """Runs the channels of a config; each channel fails on its own."""

    def __init__(self, threads: int = 1):
        if threads < 1:
            raise ConfigError(f"Thread count must be positive, got {threads}")
        self.threads = threads

    def run_solve_sync(self, config: RunConfig,
                       progress_callback: Optional[ProgressCallback] = None) -> SolveResults:
        progress = progress_callback or (lambda msg: None)
        total = len(config.channels)
        progress(f"🔧 Running: {total} channel(s)")
        metadata = {
            "source": config.source,
            "particles": [p.to_dict() for p in config.particles],
            "interaction": config.interaction.to_dict(),
            "settings": config.settings.to_dict(),
            "scale_mev": config.scale_mev,
            "timestamp": datetime.now().isoformat(),
            "controller_version": CONFIG["version"],
        }

        def run(item: Tuple[int, ChannelRequest]) -> ChannelReport:
            index, request = item
            progress(f"📊 ({index + 1}/{total}) Solving {request.channel.label}...")
            return self._run_single_channel(index, request, config)

        items = list(enumerate(config.channels))
        if self.threads > 1 and total > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                reports = list(pool.map(run, items))
        else:
            reports = [run(item) for item in items]
        reports.sort(key=lambda r: r.index)

        levels = sum(len(r.levels) for r in reports)
        failed = [r for r in reports if r.error]
        progress(f"✅ Complete - {levels} level(s), {len(failed)} failed channel(s)")
        return SolveResults(success=not failed, channels=reports, metadata=metadata,
                            error_message="; ".join(f"{r.label}: {r.error}" for r in failed) or None)

    def _run_single_channel(self, index: int, request: ChannelRequest,
                            config: RunConfig) -> ChannelReport:
        started = time.perf_counter()
        p1, p2 = config.particles
        try:
            system = build_system(request.channel, p1, p2, config.interaction)
            if system.is_free:
                report = ChannelReport(index=index, label=request.channel.label)
                report.warnings.append("no interaction: no bound states")
            else:
                window = default_window(request, config)
                report = solve_levels(system, window, config.settings, config.grid_points,
                                      request.count)
                report.index = index
        except SpectraError as e:
            print(f"Warning: {request.channel.label} failed: {e}", file=sys.stderr)
            report = ChannelReport(index=index, label=request.channel.label, error=str(e))
        report.seconds = time.perf_counter() - started
        return report

    def validate(self, config: RunConfig) -> None:
        """Build every channel and its window without solving; problems become ConfigError."""
        p1, p2 = config.particles
        for request in config.channels:
            try:
                system = build_system(request.channel, p1, p2, config.interaction)
                if not system.is_free:
                    default_window(request, config)
            except DomainError as e:
                raise ConfigError(f"{request.channel.label}: {e}") from e

    def run_scan(self, config: RunConfig, channel_index: int, low: float, high: float,
                 points: int) -> "ScanDocument":
        """Determinant on an even grid of binding energies, for plotting."""
        if not 0 <= channel_index < len(config.channels):
            raise ConfigError(f"Channel index {channel_index} out of range "
                              f"(config has {len(config.channels)})")
        if points < 1 or high < low:
            raise ConfigError(f"Bad scan grid {low}:{high}:{points}")
        request = config.channels[channel_index]
        system = build_system(request.channel, *config.particles, config.interaction)
        energies = np.array([low]) if low == high else np.linspace(low, high, points)
        if system.is_free:
            return ScanDocument(label=request.channel.label, energies=energies.tolist(),
                                values=[None] * len(energies), free=True,
                                warnings=["no interaction: the determinant has no zeros"])
        values = scan_determinant(system, energies, config.settings)
        doc = ScanDocument(label=request.channel.label, energies=energies.tolist(),
                           values=[None if np.isnan(v) else float(v) for v in values])
        failed = int(np.sum(np.isnan(values)))
        if failed:
            doc.warnings.append(f"{failed} grid point(s) failed")
        finite = np.isfinite(values)
        doc.sign_changes = [i for i in range(len(values) - 1)
                            if finite[i] and finite[i + 1] and values[i] * values[i + 1] < 0]
        return doc

    def run_orbit(self, config: RunConfig) -> "OrbitReport":
        """Regime, turning radii, sampled trajectory and periapsis advance of a classical orbit."""
        if config.orbit is None:
            raise ConfigError("Config has no 'orbit' section")
        m1, m2 = (p.mass for p in config.particles)
        alpha = config.interaction.alpha
        spec = config.orbit
        lambda_ = spec.lambda_ if spec.lambda_ is not None else m1 + m2 + spec.energy
        regime = classify_regime(lambda_, spec.L, alpha, m1, m2)
        report = OrbitReport(lambda_=lambda_, L=spec.L, alpha=alpha, regime=regime)

        if regime == OrbitRegime.FALL:
            report.warnings.append("L < alpha/2: the orbit falls onto the centre")
            return report
        if regime == OrbitRegime.ELLIPTIC and alpha > 0:
            report.sample = integrate_trajectory(lambda_, spec.L, alpha, m1, m2, samples=spec.samples)
            report.turning_radii = list(report.sample.turning_radii)
            report.periapsis_advance = periapsis_advance(lambda_, spec.L, alpha, m1, m2)
            return report

        r_in = _periapsis_radius(lambda_, spec.L, alpha, m1, m2)
        report.turning_radii = [r_in]
        report.sample = integrate_trajectory_r(lambda_, spec.L, alpha, m1, m2,
                                               (r_in, CONFIG["orbit_reach"] * r_in),
                                               samples=spec.samples)
        return report


def _periapsis_radius(lambda_: float, L: float, alpha: float, m1: float, m2: float) -> float:
    """Innermost radius of an unbound orbit."""
    if alpha == 0:
        q_squared = momentum_squared(lambda_, m1, m2)
        if q_squared <= 0:
            raise DomainError(f"Free motion needs lambda above threshold, got {lambda_}", lambda_)
        return L / math.sqrt(q_squared)
    poly = quartic(lambda_, L, alpha, m1, m2)
    roots = poly.roots()
    real = np.sort(roots[np.abs(roots.imag) <= 1e-9 * (1 + np.abs(roots.real))].real)
    for w in real[real > 0]:
        if poly(0.5 * w) > 0:
            return alpha / float(w)
    raise DomainError("No periapsis: the orbit reaches the centre")


@dataclass
class ScanDocument:
    """(E, determinant) pairs with the indices i where the sign flips between i and i+1."""
    label: str
    energies: List[float]
    values: List[Optional[float]]
    sign_changes: List[int] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    free: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class OrbitReport:
    lambda_: float
    L: float
    alpha: float
    regime: OrbitRegime
    turning_radii: List[float] = field(default_factory=list)
    periapsis_advance: Optional[float] = None
    sample: Optional[OrbitSample] = None
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": self.lambda_,
            "L": self.L,
            "alpha": self.alpha,
            "regime": self.regime.value,
            "turning_radii": self.turning_radii,
            "periapsis_advance": self.periapsis_advance,
            "sample": self.sample.to_dict() if self.sample else None,
            "warnings": self.warnings,
        }
