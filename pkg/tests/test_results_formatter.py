import csv
import io
import json

import numpy as np
import pytest

from functions.classical_orbits import OrbitRegime, OrbitSample
from functions.core_model import frequency_mhz_from_mev
from functions.errors import ConfigError
from functions.results_formatter import (
    convert_energy, format_oracle, format_orbit, format_scan, format_solve_report, format_table,
)
from functions.solve_controller import ChannelReport, LevelRecord, OrbitReport, ScanDocument, SolveResults
from functions.table_runner import TableDocument, TableRow


@pytest.fixture
def results():
    good = ChannelReport(index=0, label="FF j=0 I", window=(-2e-5, -1e-6), evaluations=12, seconds=0.5,
                         levels=[LevelRecord(index=0, energy=-1.3e-5, lambda_=1837.15, nodes=0,
                                             character="singlet", shift=-2e-9, match_residual=1e-13)])
    bad = ChannelReport(index=1, label="FF j=1 I", error="no level found")
    metadata = {"source": "run.json", "scale_mev": 0.511, "timestamp": "2026-01-01T00:00:00",
                "particles": [{"name": "p", "mass": 1836.15}, {"name": "e", "mass": 1.0}],
                "interaction": {"alpha": 0.0073, "sigma": 0.0, "g": 0.02}}
    return SolveResults(success=False, channels=[good, bad], metadata=metadata,
                        error_message="FF j=1 I: no level found")


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_convert_energy():
    assert convert_energy(2.0, "natural", None) == 2.0
    assert convert_energy(None, "MeV", 0.5) is None
    assert convert_energy(2.0, "MeV", 0.5) == pytest.approx(1.0)
    assert convert_energy(2.0, "meV", 0.5) == pytest.approx(1.0e9)
    assert convert_energy(2.0, "MHz", 0.5) == pytest.approx(frequency_mhz_from_mev(1.0))
    with pytest.raises(ConfigError):
        convert_energy(1.0, "MeV", None)
    with pytest.raises(ConfigError):
        convert_energy(1.0, "eV", 1.0)


def test_solve_csv_names_units_and_reports_failures(results):
    text = format_solve_report(results, "csv", "MeV")
    assert text.endswith("\r\n")
    header, good, bad = _rows(text)
    assert header[2] == "E [MeV]"
    assert header[8] == "match_residual [1]"
    assert float(good[2]) == pytest.approx(-1.3e-5 * 0.511)
    assert float(good[7]) == pytest.approx((1837.15 - 2e-9) * 0.511)
    assert bad[0] == "FF j=1 I" and bad[-1] == "no level found"


def test_solve_json_is_free_of_wall_clock_fields(results):
    data = json.loads(format_solve_report(results, "json"))
    assert "timestamp" not in data["metadata"]
    assert "seconds" not in data["channels"][0]
    level = data["channels"][0]["levels"][0]
    assert level["total"] == pytest.approx(1837.15 - 2e-9)
    assert data["channels"][1]["error"] == "no level found"
    assert format_solve_report(results, "json") == format_solve_report(results, "json")


def test_solve_text(results):
    text = format_solve_report(results, "text")
    assert "FF j=0 I" in text
    assert "[singlet]" in text
    assert "❌ no level found" in text
    assert "1 failed" in text


def test_table_formats():
    doc = TableDocument("table1", "Scalar-scalar Coulomb levels", ["E_num"], rows=[
        TableRow("n=1 l=0", "m2 c^2", reference={"E_num": -1.0}, computed={"E_num": -1.001}),
        TableRow("n=2 l=0", "m2 c^2", reference={"E_num": -0.25}, error="solver failed"),
    ])
    header, first, second = _rows(format_table(doc, "csv"))
    assert header[2:5] == ["E_num printed [m2 c^2]", "E_num computed [m2 c^2]",
                           "E_num deviation [relative]"]
    assert float(first[4]) == pytest.approx(-1e-3)
    assert second[-1] == "solver failed"
    data = json.loads(format_table(doc, "json"))
    assert data["rows"][0]["deviation"]["E_num"] == pytest.approx(-1e-3)
    assert "1 failed" in format_table(doc)


def test_scan_formats():
    doc = ScanDocument(label="SS l=0", energies=[-2.0, -1.0, 0.0], values=[1.0, -1.0, None],
                       sign_changes=[0])
    rows = _rows(format_scan(doc, "csv", "MeV", 0.5))
    assert rows[0] == ["E [MeV]", "determinant [1]", "sign_change_to_next"]
    assert rows[1] == ["-1", "1", "yes"]
    assert rows[3][1] == ""
    assert json.loads(format_scan(doc, "json"))["sign_changes"] == [0]
    assert "failed" in format_scan(doc)


def test_orbit_formats():
    sample = OrbitSample(parameter="u", points=np.array([2.0, 2.01]), theta=np.array([0.0, 3.2]),
                         regime=OrbitRegime.ELLIPTIC, turning_radii=(14.0, 36.0))
    report = OrbitReport(lambda_=1.998, L=1.0, alpha=0.1, regime=OrbitRegime.ELLIPTIC,
                         turning_radii=[14.0, 36.0], periapsis_advance=0.01, sample=sample)
    assert _rows(format_orbit(report, "csv"))[0] == ["u [m_ref]", "theta [rad]"]
    assert json.loads(format_orbit(report, "json"))["regime"] == "elliptic"
    assert "Periapsis advance" in format_orbit(report)


def test_oracle_formats():
    data = {"kind": "schrodinger", "unit": "mass units", "energy": -0.0025}
    assert json.loads(format_oracle(data, "json"))["energy"] == -0.0025
    assert _rows(format_oracle(data, "csv")) == [["energy [mass units]"], ["-0.0025"]]
    assert "energy = -0.0025 mass units" in format_oracle(data)
