import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from functions.analytic_oracles import (
    coulomb_binding_bracket, dirac_kappa_level, dirac_level, free_spectrum, heun_parameters,
    klein_gordon_level, oracle_levels, schrodinger_level,
)
from functions.core_model import FINE_STRUCTURE, reduced_mass
from functions.errors import DomainError
from utils.reference_levels import SCALAR_FERMION_ROWS, SCALAR_FERMION_UNIT, SCALAR_SCALAR_ROWS


def test_schrodinger_ground_state():
    assert schrodinger_level(1, 0.5, 0.1) == pytest.approx(-0.5 * 0.01 / 2)
    with pytest.raises(DomainError):
        schrodinger_level(0, 1.0, 0.1)


def test_dirac_ground_state_closed_form():
    a = 0.3
    assert dirac_level(1, 0.5, 1.0, a) == pytest.approx(math.sqrt(1 - a * a) - 1, rel=1e-14)


def test_dirac_kappa_addressing():
    a = 0.2
    assert dirac_kappa_level(0, -1, 1.0, a) == pytest.approx(dirac_level(1, 0.5, 1.0, a))
    assert dirac_kappa_level(1, 1, 1.0, a) == pytest.approx(dirac_level(2, 0.5, 1.0, a))
    with pytest.raises(DomainError):
        dirac_kappa_level(0, 1, 1.0, a)


def test_dirac_degeneracy_in_j():
    a = 0.1
    assert dirac_level(2, 0.5, 1.0, a) == dirac_kappa_level(1, -1, 1.0, a)
    assert dirac_level(2, 0.5, 1.0, a) < dirac_level(2, 1.5, 1.0, a)


@pytest.mark.parametrize("row", SCALAR_SCALAR_ROWS, ids=lambda r: r.key)
def test_schrodinger_and_klein_gordon_reproduce_scalar_scalar_columns(row):
    m_r = reduced_mass(row.mass_ratio, 1.0)
    assert schrodinger_level(row.n, m_r, FINE_STRUCTURE) == pytest.approx(row.schrodinger, rel=2e-6)
    assert klein_gordon_level(row.n, row.ell, m_r, FINE_STRUCTURE) == pytest.approx(
        row.klein_gordon, rel=2e-6)


@pytest.mark.parametrize("row", SCALAR_FERMION_ROWS, ids=lambda r: r.state)
def test_oracles_reproduce_scalar_fermion_columns(row):
    kg = klein_gordon_level(row.n, row.ell, 1.0, FINE_STRUCTURE) / SCALAR_FERMION_UNIT
    d = dirac_level(row.n, row.j, 1.0, FINE_STRUCTURE) / SCALAR_FERMION_UNIT
    assert kg == pytest.approx(row.klein_gordon, rel=1e-7)
    assert d == pytest.approx(row.dirac, rel=1e-7)


def test_klein_gordon_domain():
    with pytest.raises(DomainError):
        klein_gordon_level(2, 2, 1.0, 0.1)
    with pytest.raises(DomainError):
        klein_gordon_level(1, 0, 1.0, 0.6)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.floats(min_value=1e-4, max_value=1e-2))
def test_relativistic_levels_approach_schrodinger(n, a):
    expected = schrodinger_level(n, 1.0, a)
    assert klein_gordon_level(n, 0, 1.0, a) == pytest.approx(expected, rel=10 * a * a)
    assert dirac_level(n, 0.5, 1.0, a) == pytest.approx(expected, rel=10 * a * a)


def test_free_spectrum_at_rest():
    assert free_spectrum(0.0, 3.0, 1.0) == pytest.approx((4.0, -4.0, 2.0, -2.0))
    with pytest.raises(DomainError):
        free_spectrum(-1.0, 1.0, 1.0)


def test_heun_parameters():
    a = 0.1
    eta, beta, gamma, delta, zeta = heun_parameters(1.99, 1.0, 1.0, a, 0)
    assert zeta == pytest.approx(1 / 8 + a * a / 2)
    assert beta == pytest.approx(math.sqrt(0.25 - a * a))
    assert eta > 0 and gamma > 0
    with pytest.raises(DomainError):
        heun_parameters(2.5, 1.0, 1.0, a, 0)


def test_oracle_level_families():
    assert len(oracle_levels("Schr", 3, 1.0, 0.1)) == 3
    assert len(oracle_levels("KG", 2, 1.0, 0.1)) == 3
    assert len(oracle_levels("Dirac", 2, 1.0, 0.1)) == 3
    with pytest.raises(DomainError):
        oracle_levels("Free", 2, 1.0, 0.1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bracket_contains_relativistic_levels(n):
    a = 0.05
    low, high = coulomb_binding_bracket(n, 1.0, a)
    assert low < schrodinger_level(n, 1.0, a) < high
    assert low < klein_gordon_level(n, 0, 1.0, a) < high
    assert low < dirac_level(n, 0.5, 1.0, a) < high
