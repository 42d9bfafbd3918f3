"""
Config Loader
=============
Parses and validates a run configuration document.

A config is a JSON object with the sections ``particles``, ``interaction``,
``channels``, ``solver`` and ``output``, plus an optional ``orbit`` section
used by the classical subcommand and an optional ``preset`` naming a bundled
atom or meson family in place of the first two sections:

    {
      "particles": [
        {"name": "p", "mass": 1.007276466879, "unit": "u", "spin": "fermion", "kappa": 2.7928473565},
        {"name": "e", "mass": 5.485799091e-4, "unit": "u", "spin": "fermion", "kappa": 1.0011596522}
      ],
      "interaction": {"alpha": 0.0072973525698, "sigma": 0.0, "sigma_unit": "GeV/fm", "g": 0.0},
      "channels": [{"kind": "FF", "j": 0, "parity": "I", "window": [-3e-5, -1e-6], "count": 2}],
      "solver": {"rtol": 1e-12, "scan_points": 400},
      "output": {"format": "text", "units": "natural", "path": null}
    }

Masses with a physical unit are expressed internally in multiples of the
lighter constituent, which becomes the reference scale for every energy.
Channel windows are binding energies in that reference unit unless
``window_unit`` is "MeV".
"""

import json
import math
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Dict, Any, List, Optional, Tuple, Union

from functions.core_model import (
    ChannelSpec, InteractionSpec, Parity, ParticleSpec, SpinKind, SystemKind,
    mev_from_u, sigma_mev2_from_gev_per_fm,
)
from functions.errors import ConfigError, DomainError
from functions.shooting_solver import SolverSettings

SECTIONS = {"particles", "interaction", "channels", "solver", "output", "orbit", "preset"}
PARTICLE_KEYS = {"name", "mass", "unit", "spin", "kappa"}
INTERACTION_KEYS = {"alpha", "sigma", "sigma_unit", "g"}
CHANNEL_KEYS = {"kind", "j", "parity", "window", "window_unit", "count"}
SOLVER_KEYS = {"method", "rtol", "atol", "scan_points", "bracket_points", "series_order",
               "use_pade", "match_radius", "subdivision_levels", "grid_points"}
OUTPUT_KEYS = {"format", "units", "path"}
ORBIT_KEYS = {"lambda", "energy", "L", "samples"}
PRESET_KEYS = {"atom", "meson"}

MASS_UNITS = ("natural", "MeV", "u")
SIGMA_UNITS = ("natural", "GeV/fm")
FORMATS = ("text", "csv", "json")
OUTPUT_UNITS = ("natural", "MeV", "MHz", "meV")


@dataclass
class ChannelRequest:
    """One channel to solve, with its binding-energy window in reference units."""
    channel: ChannelSpec
    window: Optional[Tuple[float, float]] = None
    count: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"channel": self.channel.to_dict(), "window": self.window, "count": self.count}


@dataclass
class OutputSpec:
    format: str = "text"
    units: str = "natural"
    path: Optional[str] = None


@dataclass
class OrbitSpec:
    """Classical orbit request: either lambda or a binding energy, plus L."""
    L: float
    lambda_: Optional[float] = None
    energy: Optional[float] = None
    samples: int = 64


@dataclass
class RunConfig:
    """Validated run configuration; masses and sigma already in reference units."""
    particles: Tuple[ParticleSpec, ParticleSpec]
    interaction: InteractionSpec
    channels: List[ChannelRequest] = field(default_factory=list)
    settings: SolverSettings = field(default_factory=SolverSettings)
    grid_points: Optional[int] = None
    output: OutputSpec = field(default_factory=OutputSpec)
    orbit: Optional[OrbitSpec] = None
    scale_mev: Optional[float] = None
    source: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "particles": [p.to_dict() for p in self.particles],
            "interaction": self.interaction.to_dict(),
            "channels": [c.to_dict() for c in self.channels],
            "settings": self.settings.to_dict(),
            "grid_points": self.grid_points,
            "output": asdict(self.output),
            "scale_mev": self.scale_mev,
            "source": self.source,
        }


def _check_keys(section: str, data: Dict[str, Any], allowed: set, strict: bool) -> None:
    if not isinstance(data, dict):
        raise ConfigError(f"Section '{section}' must be an object")
    unknown = sorted(set(data) - allowed)
    if unknown and strict:
        raise ConfigError(f"Unknown keys in '{section}': {', '.join(unknown)}")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite, got {value!r}")
    return float(value)


def _mass_mev(entry: Dict[str, Any], index: int) -> Tuple[float, str]:
    unit = entry.get("unit", "natural")
    if unit not in MASS_UNITS:
        raise ConfigError(f"particles[{index}].unit must be one of {MASS_UNITS}, got {unit!r}")
    mass = _number(entry.get("mass"), f"particles[{index}].mass")
    if mass <= 0:
        raise ConfigError(f"particles[{index}].mass must be positive, got {mass}")
    return (mev_from_u(mass) if unit == "u" else mass), unit


def _parse_particles(raw: Any, strict: bool) -> Tuple[List[Dict[str, Any]], Optional[float]]:
    if not isinstance(raw, list) or len(raw) != 2:
        raise ConfigError("'particles' must list exactly two particles")
    parsed, units = [], set()
    for index, entry in enumerate(raw):
        _check_keys(f"particles[{index}]", entry, PARTICLE_KEYS, strict)
        mass, unit = _mass_mev(entry, index)
        units.add("natural" if unit == "natural" else "physical")
        spin = entry.get("spin", "fermion")
        if spin not in ("scalar", "fermion"):
            raise ConfigError(f"particles[{index}].spin must be 'scalar' or 'fermion', got {spin!r}")
        parsed.append({"name": str(entry.get("name", f"particle{index + 1}")), "mass": mass,
                       "spin": SpinKind(spin), "kappa": _number(entry.get("kappa", 1.0),
                                                                f"particles[{index}].kappa")})
    if len(units) > 1:
        raise ConfigError("Particle masses mix natural and physical units")
    scale = min(p["mass"] for p in parsed) if "physical" in units else None
    return parsed, scale


def _parse_interaction(raw: Dict[str, Any], scale: Optional[float], strict: bool) -> InteractionSpec:
    _check_keys("interaction", raw, INTERACTION_KEYS, strict)
    alpha = _number(raw.get("alpha", 0.0), "interaction.alpha")
    sigma = _number(raw.get("sigma", 0.0), "interaction.sigma")
    g = _number(raw.get("g", 0.0), "interaction.g")
    unit = raw.get("sigma_unit", "natural")
    if unit not in SIGMA_UNITS:
        raise ConfigError(f"interaction.sigma_unit must be one of {SIGMA_UNITS}, got {unit!r}")
    if unit == "GeV/fm":
        if scale is None:
            raise ConfigError("sigma in GeV/fm needs particle masses in MeV or u")
        sigma = sigma_mev2_from_gev_per_fm(sigma) / (scale * scale)
    try:
        return InteractionSpec(alpha=alpha, sigma=sigma, g=g)
    except DomainError as e:
        raise ConfigError(str(e)) from e


def _parse_channel(entry: Dict[str, Any], index: int, scale: Optional[float],
                   strict: bool) -> ChannelRequest:
    where = f"channels[{index}]"
    _check_keys(where, entry, CHANNEL_KEYS, strict)
    try:
        kind = SystemKind(entry.get("kind"))
        parity = Parity(entry.get("parity", "I"))
        channel = ChannelSpec(kind=kind, j=_number(entry.get("j"), f"{where}.j"), parity=parity)
    except (ValueError, DomainError) as e:
        raise ConfigError(f"{where}: {e}") from e

    window = entry.get("window")
    if window is not None:
        if not isinstance(window, list) or len(window) != 2:
            raise ConfigError(f"{where}.window must be [low, high]")
        low, high = (_number(w, f"{where}.window") for w in window)
        if entry.get("window_unit", "natural") == "MeV":
            if scale is None:
                raise ConfigError(f"{where}.window in MeV needs particle masses in MeV or u")
            low, high = low / scale, high / scale
        if not low < high:
            raise ConfigError(f"{where}.window must satisfy low < high, got {window}")
        window = (low, high)

    count = entry.get("count")
    if count is not None and (not isinstance(count, int) or count < 1):
        raise ConfigError(f"{where}.count must be a positive integer, got {count!r}")
    return ChannelRequest(channel=channel, window=window, count=count)


def _parse_solver(raw: Dict[str, Any], strict: bool) -> Tuple[SolverSettings, Optional[int]]:
    _check_keys("solver", raw, SOLVER_KEYS, strict)
    options = {k: v for k, v in raw.items() if k in SOLVER_KEYS and k != "grid_points"}
    grid_points = raw.get("grid_points")
    if grid_points is not None and (not isinstance(grid_points, int) or grid_points < 10):
        raise ConfigError(f"solver.grid_points must be an integer >= 10, got {grid_points!r}")
    try:
        return SolverSettings(**options), grid_points
    except (TypeError, DomainError) as e:
        raise ConfigError(f"solver: {e}") from e


def _parse_output(raw: Dict[str, Any], scale: Optional[float], strict: bool) -> OutputSpec:
    _check_keys("output", raw, OUTPUT_KEYS, strict)
    spec = OutputSpec(format=raw.get("format", "text"), units=raw.get("units", "natural"),
                      path=raw.get("path"))
    if spec.format not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}, got {spec.format!r}")
    if spec.units not in OUTPUT_UNITS:
        raise ConfigError(f"output.units must be one of {OUTPUT_UNITS}, got {spec.units!r}")
    if spec.units != "natural" and scale is None:
        raise ConfigError(f"output.units={spec.units} needs particle masses in MeV or u")
    return spec


def _parse_orbit(raw: Dict[str, Any], strict: bool) -> OrbitSpec:
    _check_keys("orbit", raw, ORBIT_KEYS, strict)
    if ("lambda" in raw) == ("energy" in raw):
        raise ConfigError("orbit needs exactly one of 'lambda' or 'energy'")
    samples = raw.get("samples", 64)
    if not isinstance(samples, int) or samples < 2:
        raise ConfigError(f"orbit.samples must be an integer >= 2, got {samples!r}")
    return OrbitSpec(
        L=_number(raw.get("L"), "orbit.L"),
        lambda_=_number(raw["lambda"], "orbit.lambda") if "lambda" in raw else None,
        energy=_number(raw["energy"], "orbit.energy") if "energy" in raw else None,
        samples=samples,
    )


def _expand_preset(data: Dict[str, Any], strict: bool) -> Dict[str, Any]:
    """Fill ``particles`` and ``interaction`` from a bundled atom or meson family."""
    preset = data.get("preset")
    if preset is None:
        return data
    _check_keys("preset", preset, PRESET_KEYS, strict)
    if "particles" in data or "interaction" in data:
        raise ConfigError("'preset' replaces 'particles' and 'interaction'; give one or the other")
    expanded = dict(data)
    if "atom" in preset:
        from utils.atomic_constants import KAPPAS, MASSES_U, get_atom
        atom = get_atom(preset["atom"])
        expanded["particles"] = [
            {"name": name, "mass": MASSES_U[name], "unit": "u", "spin": "fermion", "kappa": KAPPAS[name]}
            for name in (atom.heavy, atom.light)
        ]
        expanded["interaction"] = {"alpha": atom.alpha, "g": atom.breit_coupling}
    elif "meson" in preset:
        from utils.meson_constants import get_family
        family = get_family(preset["meson"])
        expanded["particles"] = [
            {"name": quark, "mass": mass, "unit": "MeV", "spin": "fermion"}
            for quark, mass in zip(family.quarks, family.masses_mev)
        ]
        expanded["interaction"] = {"alpha": family.alpha, "sigma": family.sigma_gev_fm,
                                   "sigma_unit": "GeV/fm", "g": family.breit_coupling}
    else:
        raise ConfigError("'preset' needs 'atom' or 'meson'")
    return expanded


def parse_config(data: Dict[str, Any], strict: bool = True, source: str = "") -> RunConfig:
    """Validate a config document; nothing is solved here."""
    if not isinstance(data, dict):
        raise ConfigError("A config document must be a JSON object")
    _check_keys("config", data, SECTIONS, strict)
    data = _expand_preset(data, strict)
    if "particles" not in data:
        raise ConfigError("Missing section 'particles'")

    raw_particles, scale = _parse_particles(data["particles"], strict)
    reference = scale or 1.0
    particles = tuple(
        ParticleSpec(mass=p["mass"] / reference, spin=p["spin"], kappa=p["kappa"], name=p["name"])
        for p in raw_particles
    )
    interaction = _parse_interaction(data.get("interaction", {}), scale, strict)

    channels_raw = data.get("channels", [])
    if not isinstance(channels_raw, list):
        raise ConfigError("'channels' must be a list")
    channels = [_parse_channel(entry, i, scale, strict) for i, entry in enumerate(channels_raw)]
    settings, grid_points = _parse_solver(data.get("solver", {}), strict)
    output = _parse_output(data.get("output", {}), scale, strict)
    orbit = _parse_orbit(data["orbit"], strict) if "orbit" in data else None

    return RunConfig(particles=particles, interaction=interaction, channels=channels,
                     settings=settings, grid_points=grid_points, output=output, orbit=orbit,
                     scale_mev=scale, source=source)


def load_config(path: Union[str, Path], strict: bool = True) -> RunConfig:
    """Read and validate a JSON config file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file '{path}' does not exist")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file '{path}' is not valid JSON: {e}") from e
    return parse_config(data, strict=strict, source=str(path))
