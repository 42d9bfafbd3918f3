"""
Atomic Constants
================
Masses and anomalous-moment factors of the hydrogen-like systems whose
hyperfine splittings are tabulated.

Provenance: CODATA 2010 masses in unified atomic mass units, "m_e =
5.485799091e-4 u, m_p = 1.007276466879 u, m_3He+ = 3.0160293 u";
"kappa_p = g_p/2 = 2.7928473565, kappa_e = g_e/2 = 1.0011596522,
kappa_mu = g_mu/2 = 1.0011659207"; helion "kappa = -3.1839627379413".
The muon mass is not quoted alongside them and is taken from CODATA 2010.
"""

from dataclasses import dataclass
from typing import Dict, List

from functions.core_model import FINE_STRUCTURE, MEV_PER_U
from functions.errors import ConfigError

DATA_VERSION = "2010.1"

MASSES_U = {
    "e": 5.485799091e-4,
    "mu": 0.1134289267,
    "p": 1.007276466879,
    "3He+": 3.0160293,
}

KAPPAS = {
    "e": 1.0011596522,
    "mu": 1.0011659207,
    "p": 2.7928473565,
    "3He+": -3.1839627379413,
}

CHARGES = {"p": 1, "mu": 1, "3He+": 2, "e": 1}


@dataclass(frozen=True)
class AtomSpec:
    """A nucleus-like heavy fermion bound to a light lepton."""
    key: str
    heavy: str
    light: str

    @property
    def charge(self) -> int:
        return CHARGES[self.heavy]

    @property
    def alpha(self) -> float:
        """Coulomb strength Z alpha."""
        return self.charge * FINE_STRUCTURE

    @property
    def breit_coupling(self) -> float:
        """g = kappa_1 kappa_2 Z alpha."""
        return KAPPAS[self.heavy] * KAPPAS[self.light] * self.alpha

    @property
    def heavy_mass_mev(self) -> float:
        return MASSES_U[self.heavy] * MEV_PER_U

    @property
    def light_mass_mev(self) -> float:
        return MASSES_U[self.light] * MEV_PER_U

    @property
    def splitting_unit(self) -> str:
        """MHz when the electron is the light particle, meV for muonic systems."""
        return "MHz" if self.light == "e" else "meV"


ATOMS: Dict[str, AtomSpec] = {
    spec.key: spec for spec in (
        AtomSpec("p-e", "p", "e"),
        AtomSpec("mu-e", "mu", "e"),
        AtomSpec("3He-e", "3He+", "e"),
        AtomSpec("p-mu", "p", "mu"),
        AtomSpec("3He-mu", "3He+", "mu"),
    )
}


def get_atom(key: str) -> AtomSpec:
    try:
        return ATOMS[key]
    except KeyError:
        raise ConfigError(f"Unknown atom '{key}'. Known: {', '.join(ATOMS)}") from None


def list_atoms() -> List[str]:
    return list(ATOMS)
