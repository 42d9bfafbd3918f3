"""
Table Runner
============
Recomputes the published level tables from the bundled constants and
compares every computed number with its printed counterpart.

    table1  scalar-scalar Coulomb levels, units of m_2 c^2
    table2  scalar-fermion Coulomb levels, units of 1e-7 m_R c^2
    table3  hyperfine splittings of hydrogen-like atoms, MHz or meV
    table4  heavy quarkonia bb, cc, ss, MeV
    table5  mixed and light mesons Bs, Ds, ud, MeV

A row whose solve fails carries the error text and the run continues.
"""

import json
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Any, Optional, Callable, Tuple

from functions.analytic_oracles import (
    coulomb_binding_bracket, dirac_level, klein_gordon_level, schrodinger_level,
)
from functions.core_model import (
    FINE_STRUCTURE, ChannelSpec, InteractionSpec, Parity, ParticleSpec, SpinKind, SystemKind,
    frequency_mhz_from_mev, reduced_mass,
)
from functions.errors import ConfigError, SpectraError
from functions.radial_systems import build_system
from functions.shooting_solver import SolverSettings, find_eigenvalues
from functions.solve_controller import ChannelReport, LevelRecord, solve_levels
from utils import reference_levels as ref
from utils.atomic_constants import get_atom
from utils.meson_constants import DEFAULT_WINDOW_MEV, get_family

TABLES = ("table1", "table2", "table3", "table4", "table5")

TITLES = {
    "table1": "Scalar-scalar Coulomb levels",
    "table2": "Scalar-fermion Coulomb levels",
    "table3": "Hyperfine splittings",
    "table4": "Heavy quarkonia",
    "table5": "Mixed and light mesons",
}

ProgressCallback = Callable[[str], None]


@dataclass
class TableRow:
    """Printed and computed values of one row, keyed by column name."""
    key: str
    unit: str
    reference: Dict[str, Optional[float]] = field(default_factory=dict)
    computed: Dict[str, Optional[float]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    error: Optional[str] = None

    def deviation(self, column: str) -> Optional[float]:
        """(computed - printed) / |printed|."""
        expected = self.reference.get(column)
        actual = self.computed.get(column)
        if expected is None or actual is None or expected == 0:
            return None
        return (actual - expected) / abs(expected)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["deviation"] = {c: self.deviation(c) for c in self.computed}
        return data


@dataclass
class TableDocument:
    name: str
    title: str
    columns: List[str]
    rows: List[TableRow] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def failed_rows(self) -> List[TableRow]:
        return [r for r in self.rows if r.error]

    def max_deviation(self, column: Optional[str] = None) -> float:
        values = [abs(d) for row in self.rows for c in (self.columns if column is None else [column])
                  if (d := row.deviation(c)) is not None]
        return max(values, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "title": self.title, "columns": self.columns,
                "rows": [r.to_dict() for r in self.rows], "notes": self.notes}

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)


def _single_level(system, bracket: Tuple[float, float], target: float,
                  settings: SolverSettings) -> float:
    """The eigenvalue inside an oracle bracket closest to the oracle value."""
    spectrum = find_eigenvalues(system, bracket, settings, brackets=[bracket])
    if not spectrum.eigenvalues:
        low, high = bracket
        raise SpectraError(f"no level of {system.channel.label} in [{low:.6e}, {high:.6e}]")
    return min(spectrum.eigenvalues, key=lambda e: abs(e - target))


# === TABLE 1: SCALAR-SCALAR ===

def _run_scalar_scalar(rows: List[str], settings: SolverSettings,
                       progress: ProgressCallback) -> TableDocument:
    doc = TableDocument("table1", TITLES["table1"], ["E_Schr", "E_KG", "E_num"])
    alpha = FINE_STRUCTURE
    selected = ref.select_rows(ref.SCALAR_SCALAR_ROWS, rows)
    for i, spec in enumerate(selected, 1):
        progress(f"📊 ({i}/{len(selected)}) {spec.key}")
        row = TableRow(key=spec.key, unit="m2 c^2", reference={
            "E_Schr": spec.schrodinger, "E_KG": spec.klein_gordon, "E_num": spec.two_body})
        m1, m2 = spec.mass_ratio, 1.0
        m_r = reduced_mass(m1, m2)
        row.computed["E_Schr"] = schrodinger_level(spec.n, m_r, alpha)
        row.computed["E_KG"] = klein_gordon_level(spec.n, spec.ell, m_r, alpha)
        try:
            system = build_system(ChannelSpec(SystemKind.SCALAR_SCALAR, spec.ell),
                                  ParticleSpec(m1, SpinKind.SCALAR),
                                  ParticleSpec(m2, SpinKind.SCALAR),
                                  InteractionSpec(alpha=alpha))
            bracket = coulomb_binding_bracket(spec.n, m_r, alpha)
            row.computed["E_num"] = _single_level(system, bracket, row.computed["E_KG"], settings)
        except SpectraError as e:
            row.error = str(e)
        doc.rows.append(row)
    return doc


# === TABLE 2: SCALAR-FERMION ===

def _ratio_column(ratio: float) -> str:
    return f"mS/mF={ratio:g}"


def _run_scalar_fermion(rows: List[str], ratios: Optional[List[float]], settings: SolverSettings,
                        progress: ProgressCallback) -> TableDocument:
    ratios = list(ratios or ref.SCALAR_FERMION_RATIOS)
    unknown = [r for r in ratios if r not in ref.SCALAR_FERMION_RATIOS]
    if unknown:
        raise ConfigError(f"No printed levels for mass ratios {unknown}")
    doc = TableDocument("table2", TITLES["table2"],
                        ["KG"] + [_ratio_column(r) for r in ratios] + ["D"])
    alpha = FINE_STRUCTURE
    unit = ref.SCALAR_FERMION_UNIT
    selected = ref.select_rows(ref.SCALAR_FERMION_ROWS, rows)
    for i, spec in enumerate(selected, 1):
        progress(f"📊 ({i}/{len(selected)}) {spec.state}")
        row = TableRow(key=spec.state, unit="1e-7 m_R c^2")
        row.reference["KG"] = spec.klein_gordon
        row.reference["D"] = spec.dirac
        # the oracles scale with the mass they are given; per unit m_R they are ratio-free
        row.computed["KG"] = klein_gordon_level(spec.n, spec.ell, 1.0, alpha) / unit
        row.computed["D"] = dirac_level(spec.n, spec.j, 1.0, alpha) / unit
        channel = ChannelSpec(SystemKind.SCALAR_FERMION, spec.j, spec.parity)
        for ratio in ratios:
            column = _ratio_column(ratio)
            row.reference[column] = spec.two_body[ratio]
            m_f, m_s = 1.0, ratio
            m_r = reduced_mass(m_f, m_s)
            try:
                system = build_system(channel, ParticleSpec(m_f, SpinKind.FERMION),
                                      ParticleSpec(m_s, SpinKind.SCALAR), InteractionSpec(alpha=alpha))
                bracket = coulomb_binding_bracket(spec.n, m_r, alpha)
                target = dirac_level(spec.n, spec.j, m_r, alpha)
                row.computed[column] = _single_level(system, bracket, target, settings) / (unit * m_r)
            except SpectraError as e:
                row.computed[column] = None
                row.notes.append(f"{column}: {e}")
                row.error = str(e)
        doc.rows.append(row)

    if 1.0 in ratios:
        by_state = {row.key: row for row in doc.rows}
        pair = (by_state.get("2s1/2"), by_state.get("2p1/2"))
        column = _ratio_column(1.0)
        if all(p is not None and p.computed.get(column) is not None for p in pair):
            gap = pair[0].computed[column] - pair[1].computed[column]
            doc.notes.append(f"2s1/2 - 2p1/2 at mS/mF=1: {gap:.3e} (1e-7 m_R c^2)")
    return doc


# === TABLE 3: HYPERFINE SPLITTINGS ===

# shell -> ((channel j, parity, n, position), (channel j, parity, n, position)) as (upper, lower)
HYPERFINE_LEVELS = {
    "1s": ((1, Parity.II, 1, 0), (0, Parity.I, 1, 0)),
    "2s": ((1, Parity.II, 2, 0), (0, Parity.I, 2, 0)),
    "2p1/2": ((1, Parity.I, 2, 0), (0, Parity.II, 2, 0)),
    "2p3/2": ((2, Parity.II, 2, 0), (1, Parity.I, 2, 1)),
}

# relative deviation from the printed splitting above which a row carries a note
HYPERFINE_TOLERANCE = 1e-3


class _AtomLevels:
    """Solves each (channel, shell) of one atom once."""

    def __init__(self, key: str, settings: SolverSettings):
        atom = get_atom(key)
        self.atom = atom
        self.settings = settings
        light = atom.light_mass_mev
        self.heavy = ParticleSpec(atom.heavy_mass_mev / light, SpinKind.FERMION, name=atom.heavy)
        self.light = ParticleSpec(1.0, SpinKind.FERMION, name=atom.light)
        self.interaction = InteractionSpec(alpha=atom.alpha, g=atom.breit_coupling)
        self.m_r = reduced_mass(self.heavy.mass, self.light.mass)
        self._cache: Dict[Tuple[int, Parity, int], ChannelReport] = {}

    def level(self, j: int, parity: Parity, n: int, position: int) -> LevelRecord:
        key = (j, parity, n)
        if key not in self._cache:
            system = build_system(ChannelSpec(SystemKind.FERMION_FERMION, j, parity),
                                  self.heavy, self.light, self.interaction)
            bracket = coulomb_binding_bracket(n, self.m_r, self.interaction.alpha)
            self._cache[key] = solve_levels(system, bracket, self.settings, bracketed=True)
        levels = self._cache[key].levels
        if position >= len(levels):
            raise SpectraError(f"only {len(levels)} level(s) of FF j={j} {parity.value} near n={n}")
        return levels[position]

    def splitting(self, shell: str) -> float:
        """Upper minus lower perturbed level, in MHz (electron) or meV (muon)."""
        upper_spec, lower_spec = HYPERFINE_LEVELS[shell]
        upper, lower = self.level(*upper_spec), self.level(*lower_spec)
        if upper.shift is None or lower.shift is None:
            raise SpectraError(f"Breit shift missing for shell {shell}")
        energy_mev = upper.gap_to(lower) * self.atom.light_mass_mev
        if self.atom.splitting_unit == "MHz":
            return frequency_mhz_from_mev(energy_mev)
        return energy_mev * 1.0e9


def _run_hyperfine(rows: List[str], shells: Optional[List[str]], settings: SolverSettings,
                   progress: ProgressCallback) -> TableDocument:
    shells = list(shells or ref.HYPERFINE_SHELLS)
    unknown = [s for s in shells if s not in ref.HYPERFINE_SHELLS]
    if unknown:
        raise ConfigError(f"Unknown shells {unknown}; known: {', '.join(ref.HYPERFINE_SHELLS)}")
    doc = TableDocument("table3", TITLES["table3"], shells)
    keys = list(ref.HYPERFINE_SPLITTINGS)
    if rows:
        keys = [k for k in keys if k.lower() in {r.lower() for r in rows}]
        if not keys:
            raise ConfigError(f"No table rows match {', '.join(rows)}")
    for i, key in enumerate(keys, 1):
        progress(f"📊 ({i}/{len(keys)}) {key}")
        atom = _AtomLevels(key, settings)
        row = TableRow(key=key, unit=atom.atom.splitting_unit)
        for shell in shells:
            theory, experiment = ref.HYPERFINE_SPLITTINGS[key][shell]
            row.reference[shell] = theory
            if experiment is not None:
                row.notes.append(f"{shell} measured {experiment}")
            try:
                row.computed[shell] = atom.splitting(shell)
            except SpectraError as e:
                row.computed[shell] = None
                row.notes.append(f"{shell}: {e}")
                row.error = str(e)
                continue
            deviation = row.deviation(shell)
            if deviation is not None and abs(deviation) > HYPERFINE_TOLERANCE:
                note = f"{shell}: deviation {deviation:+.2e} exceeds {HYPERFINE_TOLERANCE:g}"
                row.notes.append(note)
                doc.notes.append(f"{key} {note}")
        doc.rows.append(row)
    return doc


# === TABLES 4 AND 5: MESONS ===

def term_channel(n: int, spin: int, orbital: int, J: int) -> Tuple[ChannelSpec, str, int]:
    """Channel, expected state character and position among levels of that character."""
    if orbital == J:
        parity = Parity.I
        character = "singlet" if spin == 0 else "triplet"
    else:
        parity = Parity.II
        character = f"l={orbital}"
    return ChannelSpec(SystemKind.FERMION_FERMION, J, parity), character, n - 1


class _FamilyLevels:
    """Solves each channel of one meson family once over the bundled window."""

    def __init__(self, key: str, settings: SolverSettings):
        family = get_family(key)
        m1, m2 = family.masses_mev
        self.scale = min(m1, m2)
        self.particles = (ParticleSpec(m1 / self.scale, SpinKind.FERMION, name=family.quarks[0]),
                          ParticleSpec(m2 / self.scale, SpinKind.FERMION, name=family.quarks[1]))
        self.interaction = InteractionSpec(alpha=family.alpha,
                                           sigma=family.sigma_mev2 / self.scale ** 2,
                                           g=family.breit_coupling)
        low, high = (w / self.scale for w in DEFAULT_WINDOW_MEV)
        threshold = self.particles[0].mass + self.particles[1].mass
        self.window = (max(low, -0.95 * threshold), high)
        self.settings = settings
        self._cache: Dict[ChannelSpec, ChannelReport] = {}

    def mass_mev(self, row: ref.MesonRow) -> Tuple[float, LevelRecord]:
        channel, character, position = term_channel(*row.quantum_numbers())
        if channel not in self._cache:
            system = build_system(channel, *self.particles, self.interaction)
            self._cache[channel] = solve_levels(system, self.window, self.settings)
        matching = [lv for lv in self._cache[channel].levels if lv.character == character]
        if position >= len(matching):
            raise SpectraError(f"{row.term}: found {len(matching)} '{character}' level(s) "
                               f"in {channel.label}")
        level = matching[position]
        return level.total * self.scale, level


def _run_mesons(name: str, table: List[ref.MesonRow], rows: List[str], settings: SolverSettings,
                progress: ProgressCallback) -> TableDocument:
    doc = TableDocument(name, TITLES[name], ["mass"])
    selected = ref.select_rows(table, rows)
    families: Dict[str, _FamilyLevels] = {}
    for i, spec in enumerate(selected, 1):
        progress(f"📊 ({i}/{len(selected)}) {spec.key} {spec.term}")
        row = TableRow(key=spec.key, unit="MeV", reference={"mass": spec.computed})
        if spec.experiment is not None:
            row.notes.append(f"measured {spec.experiment}")
        try:
            if spec.family not in families:
                families[spec.family] = _FamilyLevels(spec.family, settings)
            mass, level = families[spec.family].mass_mev(spec)
            row.computed["mass"] = mass
            row.notes.extend(level.warnings)
        except SpectraError as e:
            row.computed["mass"] = None
            row.error = str(e)
        doc.rows.append(row)
    return doc


def run_table(name: str, rows: Optional[List[str]] = None, ratios: Optional[List[float]] = None,
              shells: Optional[List[str]] = None, settings: Optional[SolverSettings] = None,
              progress_callback: Optional[ProgressCallback] = None) -> TableDocument:
    """Recompute one published table; ``rows`` selects a subset by key or family."""
    if name not in TABLES:
        raise ConfigError(f"Unknown table '{name}'. Known: {', '.join(TABLES)}")
    settings = settings or SolverSettings()
    progress = progress_callback or (lambda msg: None)
    progress(f"🔧 Running {name}: {TITLES[name]}")
    if name == "table1":
        doc = _run_scalar_scalar(rows, settings, progress)
    elif name == "table2":
        doc = _run_scalar_fermion(rows, ratios, settings, progress)
    elif name == "table3":
        doc = _run_hyperfine(rows, shells, settings, progress)
    elif name == "table4":
        doc = _run_mesons(name, ref.HEAVY_QUARKONIA, rows, settings, progress)
    else:
        doc = _run_mesons(name, ref.MIXED_AND_LIGHT, rows, settings, progress)
    progress(f"✅ Complete - {len(doc.rows)} row(s), {len(doc.failed_rows)} failed")
    return doc
