import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from functions.core_model import (
    HBAR_C_MEV_FM, ChannelSpec, InteractionSpec, Parity, ParticleSpec, SpinKind, SystemKind,
    binding_energy, bohr_scale, confinement_scale, free_total_energy, frequency_mhz_from_mev,
    invariant_mass, mev_from_frequency_mhz, mev_from_u, reduced_mass, relative_energy_q0,
    sigma_mev2_from_gev_per_fm, u_from_mev,
)
from functions.errors import DomainError

masses = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


@pytest.mark.parametrize("mass", [0.0, -1.0, math.inf, math.nan])
def test_particle_rejects_bad_mass(mass):
    with pytest.raises(DomainError):
        ParticleSpec(mass)


def test_interaction_rejects_negative_coupling():
    with pytest.raises(DomainError):
        InteractionSpec(alpha=-0.1)
    with pytest.raises(DomainError):
        InteractionSpec(sigma=-1.0)


def test_interaction_is_cornell_only_with_string_tension():
    assert not InteractionSpec(alpha=0.3).is_cornell
    assert InteractionSpec(alpha=0.3, sigma=0.1).is_cornell


@pytest.mark.parametrize("kind, j", [
    (SystemKind.SCALAR_FERMION, 1),
    (SystemKind.FERMION_FERMION, 0.5),
    (SystemKind.SCALAR_SCALAR, 1.5),
    (SystemKind.FERMION_FERMION, -1),
    (SystemKind.SCALAR_SCALAR, 0.3),
])
def test_channel_rejects_wrong_angular_momentum(kind, j):
    with pytest.raises(DomainError):
        ChannelSpec(kind, j)


def test_channel_labels():
    assert ChannelSpec(SystemKind.SCALAR_SCALAR, 1).label == "SS l=1"
    assert ChannelSpec(SystemKind.SCALAR_FERMION, 1.5, Parity.II).label == "SF j=3/2 II"
    assert ChannelSpec(SystemKind.FERMION_FERMION, 2).label == "FF j=2 I"


def test_channel_is_hashable():
    a = ChannelSpec(SystemKind.FERMION_FERMION, 1, Parity.II)
    b = ChannelSpec(SystemKind.FERMION_FERMION, 1, Parity.II)
    assert {a: 1}[b] == 1


def test_reduced_mass():
    assert reduced_mass(1.0, 1.0) == pytest.approx(0.5)
    assert reduced_mass(100.0, 1.0) == pytest.approx(100.0 / 101.0)
    with pytest.raises(DomainError):
        reduced_mass(0.0, 1.0)


def test_free_total_energy_at_rest_is_threshold():
    assert free_total_energy(0.0, 2.0, 3.0) == pytest.approx(5.0)
    with pytest.raises(DomainError):
        free_total_energy(-1.0, 1.0, 1.0)


def test_relative_energy_vanishes_for_equal_masses():
    assert relative_energy_q0(2.5, 1.0, 1.0) == 0.0
    with pytest.raises(DomainError):
        relative_energy_q0(0.0, 1.0, 2.0)


@given(masses, masses, st.floats(min_value=-0.5, max_value=0.5))
def test_binding_and_invariant_mass_are_inverse(m1, m2, e):
    assert binding_energy(invariant_mass(e, m1, m2), m1, m2) == pytest.approx(e, abs=1e-9 * (m1 + m2))


def test_length_scales():
    assert bohr_scale(1.0, 1.0, 0.1) == pytest.approx(20.0)
    assert math.isinf(bohr_scale(1.0, 1.0, 0.0))
    assert confinement_scale(1.0, 1.0, 1.0) == pytest.approx(1.0)
    assert math.isinf(confinement_scale(1.0, 1.0, 0.0))


def test_unit_conversions():
    assert mev_from_u(1.0) == pytest.approx(931.49410242)
    assert u_from_mev(mev_from_u(0.25)) == pytest.approx(0.25)
    assert sigma_mev2_from_gev_per_fm(1.111) == pytest.approx(1.111 * 1000 * HBAR_C_MEV_FM)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1e6))
def test_frequency_conversion_round_trip(mhz):
    assert frequency_mhz_from_mev(mev_from_frequency_mhz(mhz)) == pytest.approx(mhz, rel=1e-12)


def test_hydrogen_hyperfine_energy_in_mhz():
    # 1420.405751 MHz is 5.874e-6 eV
    assert frequency_mhz_from_mev(5.87433e-12) == pytest.approx(1420.4, rel=1e-4)


def test_particle_defaults():
    particle = ParticleSpec(1.0)
    assert particle.spin == SpinKind.FERMION
    assert particle.kappa == 1.0
