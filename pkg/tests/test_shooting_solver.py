import numpy as np
import pytest

from functions.analytic_oracles import (
    coulomb_binding_bracket, dirac_level, klein_gordon_level, schrodinger_level,
)
from functions.core_model import (
    ChannelSpec, InteractionSpec, ParticleSpec, SpinKind, SystemKind, reduced_mass,
)
from functions.errors import DomainError
from functions.radial_systems import LimitKind, build_system, limit_system
from functions.shooting_solver import (
    SolverSettings, equal_mass_split, find_eigenvalues, scan_determinant, shoot, spectral_determinant,
)

ALPHA = 0.1
FAST = SolverSettings(bracket_points=20)


def _single_level(system, bracket, settings=FAST):
    result = find_eigenvalues(system, bracket, settings, brackets=[bracket])
    assert len(result.eigenvalues) == 1, result.warnings
    return result.eigenvalues[0]


@pytest.mark.parametrize("n", [1, 2])
def test_schroedinger_limit_reproduces_bohr_levels(scalars, ss_channel, n):
    system = limit_system(LimitKind.SCHROEDINGER, ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    level = _single_level(system, coulomb_binding_bracket(n, 0.5, ALPHA))
    assert level == pytest.approx(schrodinger_level(n, 0.5, ALPHA), rel=1e-8)


def test_klein_gordon_limit(scalars, ss_channel):
    system = limit_system(LimitKind.KLEIN_GORDON, ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    level = _single_level(system, coulomb_binding_bracket(1, 1.0, ALPHA))
    assert level == pytest.approx(klein_gordon_level(1, 0, 1.0, ALPHA), rel=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
def test_dirac_limit(scalar_fermion, sf_channel, n):
    system = limit_system(LimitKind.DIRAC, sf_channel, *scalar_fermion, InteractionSpec(alpha=ALPHA))
    level = _single_level(system, coulomb_binding_bracket(n, 1.0, ALPHA))
    assert level == pytest.approx(dirac_level(n, 0.5, 1.0, ALPHA), rel=1e-8)


def test_eigenvalue_does_not_depend_on_matching_radius(scalars, ss_channel):
    system = limit_system(LimitKind.SCHROEDINGER, ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    bracket = coulomb_binding_bracket(1, 0.5, ALPHA)
    near = _single_level(system, bracket, SolverSettings(bracket_points=20, match_radius=5.0))
    far = _single_level(system, bracket, SolverSettings(bracket_points=20, match_radius=30.0))
    assert near == pytest.approx(far, rel=1e-9)


def test_eigenvalue_does_not_depend_on_the_outer_radius(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    bracket = coulomb_binding_bracket(1, 0.5, ALPHA)
    base = _single_level(system, bracket)
    further = _single_level(system, bracket, SolverSettings(bracket_points=20,
                                                            decay_target=1.5 * FAST.decay_target))
    assert further == pytest.approx(base, rel=1e-8)


def test_eigenvalue_survives_halving_the_tolerance(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    bracket = coulomb_binding_bracket(1, 0.5, ALPHA)
    coarse = _single_level(system, bracket, SolverSettings(bracket_points=20, rtol=1e-13))
    fine = _single_level(system, bracket, SolverSettings(bracket_points=20, rtol=5e-14))
    assert fine == pytest.approx(coarse, rel=1e-10)


def test_shoot_reports_branches(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    state = shoot(system, -1e-3)
    assert state.series.r0 < state.match_radius < state.r_max
    assert np.isfinite(state.determinant)


def test_scan_marks_failures_with_nan(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    values = scan_determinant(system, np.array([-1e-3, 1e-3]))
    assert np.isfinite(values[0])
    assert np.isnan(values[1])


def test_continuum_energy_is_rejected(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    with pytest.raises(DomainError):
        shoot(system, 0.0)


def test_empty_window(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    with pytest.raises(DomainError):
        find_eigenvalues(system, (-1e-3, -2e-3))


def test_free_two_fermion_system_has_no_levels(fermions):
    system = build_system(ChannelSpec(SystemKind.FERMION_FERMION, 1), *fermions, InteractionSpec())
    result = find_eigenvalues(system, (-0.1, -0.01))
    assert result.eigenvalues == []
    assert result.warnings


@pytest.mark.parametrize("kwargs", [
    {"rtol": 0.0}, {"atol": -1.0}, {"scan_points": 2}, {"match_radius": -1.0},
])
def test_settings_validation(kwargs):
    with pytest.raises(DomainError):
        SolverSettings(**kwargs)


def test_equal_mass_split(fermions):
    inter = InteractionSpec(alpha=ALPHA)
    system = build_system(ChannelSpec(SystemKind.FERMION_FERMION, 1), *fermions, inter)
    halves = equal_mass_split(system)
    assert [h.parent_indices for h in halves] == [(0, 2), (1, 3)]
    full = system.matrix(0.4, -1e-3)
    assert np.allclose(halves[0].matrix(0.4, -1e-3), full[np.ix_([0, 2], [0, 2])])
    assert full[0, 1] == 0.0


def test_no_split_for_unequal_masses_or_parity_ii(fermions):
    from functions.core_model import Parity, ParticleSpec

    inter = InteractionSpec(alpha=ALPHA)
    heavy = ParticleSpec(2.0)
    assert len(equal_mass_split(build_system(ChannelSpec(SystemKind.FERMION_FERMION, 1),
                                             fermions[0], heavy, inter))) == 1
    assert len(equal_mass_split(build_system(ChannelSpec(SystemKind.FERMION_FERMION, 1, Parity.II),
                                             *fermions, inter))) == 1


def test_spectral_determinant_carries_the_matching_columns(scalars, ss_channel):
    system = build_system(ss_channel, *scalars, InteractionSpec(alpha=ALPHA))
    value = spectral_determinant(system, -1e-3)
    assert value.value == pytest.approx(shoot(system, -1e-3).determinant)
    assert value.left.shape == (2, 1)
    assert value.right.shape == (2, 1)
    assert np.linalg.det(np.hstack([value.left, value.right])) == pytest.approx(value.value)


@pytest.mark.slow
def test_two_fermion_ground_state_tends_to_the_dirac_level():
    channel = ChannelSpec(SystemKind.FERMION_FERMION, 0)
    oracle = dirac_level(1, 0.5, 1.0, ALPHA)
    deviations = []
    for ratio in (1e2, 1e3, 1e4):
        system = build_system(channel, ParticleSpec(ratio), ParticleSpec(1.0),
                              InteractionSpec(alpha=ALPHA))
        level = _single_level(system, coulomb_binding_bracket(1, reduced_mass(ratio, 1.0), ALPHA))
        deviations.append(abs(level - oracle) / abs(oracle))
    assert deviations[0] > deviations[1] > deviations[2]
    assert deviations[2] < 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("kind, spin, masses", [
    (SystemKind.SCALAR_SCALAR, SpinKind.SCALAR, (1.0, 1.0)),
    (SystemKind.FERMION_FERMION, SpinKind.FERMION, (2.0, 1.0)),
])
def test_relativistic_correction_falls_as_inverse_c_squared(kind, spin, masses):
    # masses scale with c^2 and the coupling with 1/c, so the Bohr level stays put
    multipliers = np.array([4.0, 8.0, 16.0])
    deviations = []
    for c in multipliers:
        m1, m2 = (m * c * c for m in masses)
        alpha = 0.4 / c
        m_r = reduced_mass(m1, m2)
        system = build_system(ChannelSpec(kind, 0), ParticleSpec(m1, spin), ParticleSpec(m2, spin),
                              InteractionSpec(alpha=alpha))
        level = _single_level(system, coulomb_binding_bracket(1, m_r, alpha))
        deviations.append(abs(level / schrodinger_level(1, m_r, alpha) - 1.0))
    slope = np.polyfit(np.log(multipliers), np.log(deviations), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.2)
