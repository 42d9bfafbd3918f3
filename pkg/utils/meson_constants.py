"""
Meson Constants
===============
Quark masses, string tensions and strong couplings per meson family.

Provenance: heavy quarkonia "m_b = 4725.5, m_c = 1394.5, m_s = 134.27" MeV,
"sigma = 1.111 GeV/fm" for bb and cc, "1.34 GeV/fm" for ss, "alpha_S = 0.3272,
0.435, 0.6075"; mixed families "sigma = 1.111, 1.111, 1.227 GeV/fm and alpha =
0.3591, 0.3975, 0.5344" for Bc, Bs, Ds; light mesons "m_u = 2.94 and m_d = 6.1
MeV, sigma = 1.34 GeV/fm and alpha = 0.656". The Coulomb strength of the
Cornell potential is 4/3 of the quoted coupling in every family.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from functions.core_model import sigma_mev2_from_gev_per_fm
from functions.errors import ConfigError

DATA_VERSION = "2014.1"

QUARK_MASSES_MEV = {
    "b": 4725.5,
    "c": 1394.5,
    "s": 134.27,
    "u": 2.94,
    "d": 6.1,
}

# binding-energy window scanned for every family, MeV
DEFAULT_WINDOW_MEV: Tuple[float, float] = (-600.0, 2000.0)

COLOUR_FACTOR = 4.0 / 3.0


@dataclass(frozen=True)
class MesonFamily:
    """One quark-antiquark family with its fitted constants."""
    key: str
    quarks: Tuple[str, str]
    sigma_gev_fm: float
    coupling: float

    @property
    def masses_mev(self) -> Tuple[float, float]:
        return QUARK_MASSES_MEV[self.quarks[0]], QUARK_MASSES_MEV[self.quarks[1]]

    @property
    def alpha(self) -> float:
        return COLOUR_FACTOR * self.coupling

    @property
    def sigma_mev2(self) -> float:
        return sigma_mev2_from_gev_per_fm(self.sigma_gev_fm)

    @property
    def breit_coupling(self) -> float:
        """The spin-spin coupling is set to the Coulomb strength."""
        return self.alpha


FAMILIES: Dict[str, MesonFamily] = {
    family.key: family for family in (
        MesonFamily("bb", ("b", "b"), 1.111, 0.3272),
        MesonFamily("cc", ("c", "c"), 1.111, 0.435),
        MesonFamily("ss", ("s", "s"), 1.34, 0.6075),
        MesonFamily("bc", ("b", "c"), 1.111, 0.3591),
        MesonFamily("bs", ("b", "s"), 1.111, 0.3975),
        MesonFamily("cs", ("c", "s"), 1.227, 0.5344),
        MesonFamily("ud", ("d", "u"), 1.34, 0.656),
    )
}


def get_family(key: str) -> MesonFamily:
    try:
        return FAMILIES[key]
    except KeyError:
        raise ConfigError(f"Unknown meson family '{key}'. Known: {', '.join(FAMILIES)}") from None


def list_families() -> List[str]:
    return list(FAMILIES)
