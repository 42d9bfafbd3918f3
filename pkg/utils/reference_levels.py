"""
Reference Levels
================
Published level values every table run is compared against.

Scalar-scalar Coulomb levels are in units of m_2 c^2 (m_2 the lighter mass).
Scalar-fermion levels are in units of 1e-7 m_R c^2. Hyperfine splittings are
in MHz for electronic systems and meV for muonic ones. Meson masses are in MeV.
Two printed scalar-scalar values at mass ratio 100 carry a positive sign; they
are binding energies and are stored negative.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from functions.core_model import Parity
from functions.errors import ConfigError


@dataclass(frozen=True)
class ScalarRow:
    n: int
    ell: int
    mass_ratio: float
    schrodinger: float
    klein_gordon: float
    two_body: float

    @property
    def key(self) -> str:
        return f"({self.n},{self.ell}) m1/m2={self.mass_ratio:g}"


SCALAR_SCALAR_ROWS: List[ScalarRow] = [
    ScalarRow(1, 0, 1, -1.331283e-5, -1.331372e-5, -1.331323e-5),
    ScalarRow(1, 0, 100, -2.636205e-5, -2.636381e-5, -2.636361e-5),
    ScalarRow(2, 0, 1, -3.328210e-6, -3.328354e-6, -3.328268e-6),
    ScalarRow(2, 0, 100, -6.590514e-6, -6.590799e-6, -6.590793e-6),
    ScalarRow(2, 1, 1, -3.328210e-6, -3.328235e-6, -3.328216e-6),
    ScalarRow(2, 1, 100, -6.590514e-6, -6.590565e-6, -6.590563e-6),
]


@dataclass(frozen=True)
class FermionScalarRow:
    """One state; ``two_body`` maps m_S/m_F to the printed level."""
    state: str
    n: int
    ell: int
    j: float
    klein_gordon: float
    two_body: Dict[float, float]
    dirac: float

    @property
    def parity(self) -> Parity:
        return Parity.I if self.ell == round(self.j - 0.5) else Parity.II


SCALAR_FERMION_RATIOS: Tuple[float, ...] = (0.1, 1.0, 10.0)
SCALAR_FERMION_UNIT = 1e-7

SCALAR_FERMION_ROWS: List[FermionScalarRow] = [
    FermionScalarRow("1s1/2", 1, 0, 0.5, -266.274498,
                     {0.1: -266.269982, 1.0: -266.257658, 10.0: -266.258384}, -266.260317),
    FermionScalarRow("2s1/2", 2, 0, 0.5, -66.567073,
                     {0.1: -66.566335, 1.0: -66.564470, 10.0: -66.564894}, -66.565301),
    FermionScalarRow("2p1/2", 2, 1, 0.5, -66.564710,
                     {0.1: -66.564586, 1.0: -66.564470, 10.0: -66.565070}, -66.565301),
    FermionScalarRow("2p3/2", 2, 1, 1.5, -66.564710,
                     {0.1: -66.564575, 1.0: -66.564248, 10.0: -66.564337}, -66.564415),
    FermionScalarRow("3s1/2", 3, 0, 0.5, -29.585005,
                     {0.1: -29.584764, 1.0: -29.584184, 10.0: -29.584343}, -29.584480),
    FermionScalarRow("3p1/2", 3, 1, 0.5, -29.584305,
                     {0.1: -29.584247, 1.0: -29.584184, 10.0: -29.584396}, -29.584480),
    FermionScalarRow("3p3/2", 3, 1, 1.5, -29.584305,
                     {0.1: -29.584247, 1.0: -29.584118, 10.0: -29.584178}, -29.584217),
    FermionScalarRow("3d3/2", 3, 2, 1.5, -29.584165,
                     {0.1: -29.584148, 1.0: -29.584118, 10.0: -29.584189}, -29.584217),
    FermionScalarRow("3d5/2", 3, 2, 2.5, -29.584165,
                     {0.1: -29.584148, 1.0: -29.584096, 10.0: -29.584116}, -29.584130),
]


# (theory, experiment); None where no measurement is quoted
HYPERFINE_SPLITTINGS: Dict[str, Dict[str, Tuple[float, Optional[float]]]] = {
    "p-e": {"1s": (1420.595, 1420.405), "2s": (177.580, 177.557),
            "2p1/2": (59.196, 59.221), "2p3/2": (23.678, 24.0)},
    "mu-e": {"1s": (4464.481, 4463.302), "2s": (558.078, 558.0),
             "2p1/2": (186.252, 187.0), "2p3/2": (74.629, 74.0)},
    "3He-e": {"1s": (-8665.637, -8665.650), "2s": (-1083.347, -1083.355),
              "2p1/2": (-361.100, None), "2p3/2": (-144.385, None)},
    "p-mu": {"1s": (182.621, 182.638), "2s": (22.828, 22.815),
             "2p1/2": (7.682, 7.820), "2p3/2": (3.115, 3.248)},
    "3He-mu": {"1s": (-1372.194, -1334.730), "2s": (-171.544, -166.645),
               "2p1/2": (-57.028, -58.713), "2p3/2": (-22.700, -24.291)},
}

HYPERFINE_SHELLS = ("1s", "2s", "2p1/2", "2p3/2")


_TERM = re.compile(r"^(\d+)\^(\d)([spdf])_(\d)$")
_ORBITALS = "spdf"


@dataclass(frozen=True)
class MesonRow:
    """A meson level addressed by its term symbol n^{2S+1}l_J."""
    key: str
    family: str
    term: str
    experiment: Optional[float]
    computed: float

    def quantum_numbers(self) -> Tuple[int, int, int, int]:
        """(n, S, l, J) with n counting levels of the same character from 1."""
        match = _TERM.match(self.term)
        if not match:
            raise ConfigError(f"Malformed term symbol '{self.term}'")
        n, multiplicity, orbital, J = match.groups()
        return int(n), (int(multiplicity) - 1) // 2, _ORBITALS.index(orbital), int(J)


def _rows(family: str, entries) -> List[MesonRow]:
    return [MesonRow(key, family, term, exp, num) for key, term, exp, num in entries]


HEAVY_QUARKONIA: List[MesonRow] = (
    _rows("bb", [
        ("eta_b", "1^1s_0", 9390.90, 9390.39),
        ("Upsilon(1S)", "1^3s_1", 9460.30, 9466.10),
        ("chi_b0(1P)", "1^3p_0", 9859.44, 9857.41),
        ("chi_b1(1P)", "1^3p_1", 9892.78, 9886.70),
        ("h_b(1P)", "1^1p_1", 9898.60, 9895.35),
        ("chi_b2(1P)", "1^3p_2", 9912.21, 9908.14),
        ("Upsilon(2S)", "2^3s_1", 10023.26, 10009.04),
        ("Upsilon_2(1D)", "1^3d_2", 10163.70, 10152.69),
        ("chi_b0(2P)", "2^3p_0", 10232.50, 10232.36),
        ("chi_b1(2P)", "2^3p_1", 10255.46, 10256.58),
        ("chi_b2(2P)", "2^3p_2", 10268.65, 10274.26),
    ])
    + _rows("cc", [
        ("eta_c", "1^1s_0", 2978.40, 2978.26),
        ("J/psi", "1^3s_1", 3096.92, 3097.91),
        ("chi_c0(1P)", "1^3p_0", 3414.75, 3423.88),
        ("chi_c1(1P)", "1^3p_1", 3510.66, 3502.83),
        ("h_c(1P)", "1^1p_1", 3525.41, 3523.67),
        ("chi_c2(1P)", "1^3p_2", 3556.20, 3555.84),
        ("psi(2S)", "2^3s_1", 3686.09, 3692.91),
        ("psi_2(1D)", "1^3d_2", None, 3833.62),
        ("chi_c0(2P)", "2^3p_0", None, 3898.00),
        ("chi_c1(2P)", "2^3p_1", None, 3961.21),
        ("chi_c2(2P)", "2^3p_2", 3927.00, 4003.93),
    ])
    + _rows("ss", [
        ("ss:1^1s_0", "1^1s_0", None, 818.12),
        ("phi", "1^3s_1", 1019.46, 1019.44),
        ("ss:1^3p_0", "1^3p_0", None, 1206.44),
        ("f1(1420)", "1^3p_1", 1426.40, 1412.84),
        ("ss:1^1p_1", "1^1p_1", None, 1458.59),
        ("f1'(1525)", "1^3p_2", 1525.0, 1525.60),
        ("phi(1680)", "2^3s_1", 1680.0, 1698.41),
        ("ss:1^3d_2", "1^3d_2", None, 1838.72),
        ("ss:2^3p_0", "2^3p_0", None, 1841.12),
        ("ss:2^3p_1", "2^3p_1", None, 1988.38),
        ("f2(2010)", "2^3p_2", 2011.0, 2073.15),
    ])
)

MIXED_AND_LIGHT: List[MesonRow] = (
    _rows("ud", [
        ("pi", "1^1s_0", 139.57, 616.45),
        ("rho(770)", "1^3s_1", 775.49, 826.14),
        ("a0(980)", "1^3p_0", 980.0, 970.34),
        ("a1(1260)", "1^3p_1", 1230.0, 1204.66),
        ("b1(1235)", "1^1p_1", 1229.5, 1274.76),
        ("a2(1320)", "1^3p_2", 1318.3, 1325.40),
        ("pi(1300)", "2^1s_0", 1300.0, 1337.36),
        ("rho(1450)", "2^3s_1", 1465.0, 1497.63),
        ("rho(1570)", "1^3d_1", 1570.0, 1565.42),
        ("pi(1800)", "3^1s_0", 1812.0, 1882.30),
    ])
    + _rows("bs", [
        ("Bs", "1^1s_0", 5366.77, 5387.41),
        ("Bs*", "1^3s_1", 5415.40, 5434.34),
        ("Bs1(5830)", "1^3p_1", 5829.40, 5817.80),
        ("Bs2(5840)", "1^3p_2", 5839.70, 5829.33),
    ])
    + _rows("cs", [
        ("Ds", "1^1s_0", 1968.49, 1961.24),
        ("Ds*", "1^3s_1", 2112.30, 2101.78),
        ("Ds0(2317)", "1^3p_0", 2317.80, 2339.94),
        ("Ds1(2460)", "1^3p_1", 2459.60, 2466.15),
        ("Ds1(2536)", "1^1p_1", 2535.12, 2535.82),
        ("Ds2(2573)", "1^3p_2", 2571.90, 2574.92),
    ])
)


def select_rows(rows: List, wanted: Optional[List[str]]) -> List:
    """Rows whose key (or family) is in ``wanted``; every row when ``wanted`` is empty."""
    if not wanted:
        return list(rows)
    lookup = {w.lower() for w in wanted}
    chosen = [row for row in rows
              if row.key.lower() in lookup or getattr(row, "family", "").lower() in lookup]
    if not chosen:
        raise ConfigError(f"No table rows match {', '.join(wanted)}")
    return chosen
