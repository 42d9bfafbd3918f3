import numpy as np
import pytest

from functions.analytic_oracles import coulomb_binding_bracket
from functions.angular import sphere_quadrature
from functions.breit_perturbation import (
    LevelWithShift, angular_vectors, assemble_state16, breit_angular_matrix, breit_operator_sample,
    breit_shift, breit_shift_closed_form, gram_matrix, hyperfine_splitting, state_norm,
)
from functions.core_model import (
    ChannelSpec, InteractionSpec, Parity, ParticleSpec, SystemKind, reduced_mass,
)
from functions.eigenfunctions import FF_RADIALS, eigenfunction_full, reconstruct_ff_radials
from functions.errors import AccuracyError, DomainError
from functions.radial_systems import build_system
from functions.shooting_solver import SolverSettings, find_eigenvalues
from functions.solve_controller import solve_levels


@pytest.fixture(scope="module")
def quadrature():
    return sphere_quadrature(32, 64)


def _synthetic_radials(r):
    shapes = {
        "a0": np.exp(-r), "a1": 0.1 * r * np.exp(-r),
        "b0": 0.5 * np.exp(-r), "b1": 0.05 * r * np.exp(-r),
        "c0": 0.3 * r * np.exp(-r), "c1": 0.02 * np.exp(-r),
        "d0": 0.2 * r * r * np.exp(-r), "d1": 0.01 * r * np.exp(-r),
    }
    return shapes


def test_operator_is_hermitian():
    rng = np.random.default_rng(7)
    for direction in rng.normal(size=(5, 3)):
        v = breit_operator_sample(direction)
        assert v.shape == (16, 16)
        assert np.allclose(v, v.conj().T)


@pytest.mark.parametrize("parity", [Parity.I, Parity.II])
@pytest.mark.parametrize("j", [1, 2])
def test_angular_factors_are_orthonormal(quadrature, j, parity):
    assert np.allclose(gram_matrix(j, parity, 0, quadrature), np.eye(8), atol=1e-10)


def test_zero_spin_drops_the_b_and_c_slots(quadrature):
    expected = np.diag([1, 1, 0, 0, 0, 0, 1, 1]).astype(float)
    assert np.allclose(gram_matrix(0, Parity.I, 0, quadrature), expected, atol=1e-10)


@pytest.mark.parametrize("parity", [Parity.I, Parity.II])
def test_angular_matrix_is_hermitian_and_m_independent(quadrature, parity):
    reference = breit_angular_matrix(1, parity, 0, quadrature)
    assert np.allclose(reference, reference.conj().T, atol=1e-10)
    for m in (-1, 1):
        assert np.allclose(breit_angular_matrix(1, parity, m, quadrature), reference, atol=1e-10)


def test_shift_is_linear_in_coupling(quadrature):
    r = np.linspace(1e-4, 30.0, 3001)
    state = assemble_state16(r, _synthetic_radials(r), 1, Parity.I)
    one = breit_shift(state, 1.0, quadrature)
    two = breit_shift(state, 2.0, quadrature)
    assert two.shift == pytest.approx(2 * one.shift, rel=1e-12)
    assert one.imaginary_residue < 1e-10
    assert breit_shift_closed_form(state, 2.0) == pytest.approx(
        2 * breit_shift_closed_form(state, 1.0), rel=1e-12)
    assert breit_shift_closed_form(state, 0.0) == 0.0


def test_closed_form_vanishes_without_small_components():
    r = np.linspace(1e-4, 30.0, 3001)
    radials = _synthetic_radials(r)
    for key in ("a1", "b1", "c1", "d1"):
        radials[key] = np.zeros_like(r)
    state = assemble_state16(r, radials, 2, Parity.II)
    assert breit_shift_closed_form(state, 1.0) == 0.0


def test_state_norm_sums_every_slot():
    r = np.linspace(0.0, 40.0, 4001)
    radials = {k: np.zeros_like(r) for k in FF_RADIALS}
    radials["a0"] = 2.0 * np.exp(-r)
    state = assemble_state16(r, radials, 0, Parity.I)
    assert state_norm(state) == pytest.approx(1.0, rel=1e-6)


def test_missing_radials_are_rejected():
    r = np.linspace(0.1, 1.0, 5)
    with pytest.raises(DomainError):
        assemble_state16(r, {"a0": r}, 1, Parity.I)


@pytest.mark.parametrize("j, m", [(1, 2), (0, 1), (2, -3), (-1, 0)])
def test_projection_outside_the_multiplet_is_rejected(j, m):
    r = np.linspace(1e-4, 1.0, 11)
    with pytest.raises(DomainError):
        assemble_state16(r, _synthetic_radials(r), j, Parity.I, m)


def test_hyperfine_splitting_uses_totals():
    upper = LevelWithShift("triplet", energy=-1.0, shift=0.3)
    lower = LevelWithShift("singlet", energy=-1.0, shift=-0.1)
    assert hyperfine_splitting(upper, lower) == pytest.approx(0.4)
    assert upper.to_dict()["total"] == pytest.approx(-0.7)


def test_splitting_keeps_small_shifts_on_large_levels():
    upper = LevelWithShift("triplet", energy=-2.5e-5, shift=3.0e-12)
    lower = LevelWithShift("singlet", energy=-2.5e-5, shift=-1.0e-12)
    assert hyperfine_splitting(upper, lower) == pytest.approx(4.0e-12, rel=1e-12)


@pytest.mark.parametrize("parity", [Parity.I, Parity.II])
@pytest.mark.parametrize("j, m", [(1, 0), (1, -1), (2, 1)])
def test_quadrature_agrees_with_the_radial_formula(quadrature, j, m, parity):
    r = np.linspace(1e-4, 30.0, 3001)
    state = assemble_state16(r, _synthetic_radials(r), j, parity, m)
    direct = breit_shift(state, 0.7, quadrature)
    assert direct.shift == pytest.approx(breit_shift_closed_form(state, 0.7), rel=1e-8)
    assert direct.imaginary_residue < 1e-10


def test_closed_form_ignores_b_and_c_at_zero_spin():
    r = np.linspace(1e-4, 30.0, 3001)
    radials = _synthetic_radials(r)
    with_bc = assemble_state16(r, radials, 0, Parity.I)
    radials = dict(radials, b0=np.zeros_like(r), b1=np.zeros_like(r),
                   c0=np.zeros_like(r), c1=np.zeros_like(r))
    without_bc = assemble_state16(r, radials, 0, Parity.I)
    assert breit_shift_closed_form(with_bc, 1.0) == breit_shift_closed_form(without_bc, 1.0)


def test_coarse_sphere_rule_fails_the_accuracy_check():
    r = np.linspace(1e-4, 30.0, 3001)
    state = assemble_state16(r, _synthetic_radials(r), 2, Parity.I)
    with pytest.raises(AccuracyError):
        breit_shift(state, 1.0, sphere_quadrature(2, 2))


@pytest.mark.parametrize("j, m", [(0, 0), (1, 1), (2, -1)])
def test_parity_ii_is_the_block_swap_of_parity_i(quadrature, j, m):
    first = angular_vectors(j, m, Parity.I, quadrature)
    second = angular_vectors(j, m, Parity.II, quadrature)
    for key in FF_RADIALS:
        # sigma_x on the first Dirac index swaps the two halves of the 16 components
        assert np.array_equal(second[key], np.roll(first[key], 8, axis=0)), key


@pytest.fixture(scope="module")
def solved_triplet():
    """Lowest j = 1 parity II state of a mildly relativistic unequal-mass pair."""
    inter = InteractionSpec(alpha=0.2, g=0.3)
    system = build_system(ChannelSpec(SystemKind.FERMION_FERMION, 1, Parity.II),
                          ParticleSpec(5.0), ParticleSpec(1.0), inter)
    bracket = coulomb_binding_bracket(1, reduced_mass(5.0, 1.0), inter.alpha)
    settings = SolverSettings(bracket_points=20)
    energy = find_eigenvalues(system, bracket, settings, brackets=[bracket]).eigenvalues[0]
    function = eigenfunction_full(system, energy, settings)
    return system, bracket, settings, function, reconstruct_ff_radials(system, function)


@pytest.mark.slow
def test_solved_state_shift_is_linear_and_m_independent(solved_triplet, quadrature):
    _, _, _, function, radials = solved_triplet
    shifts = {m: breit_shift(assemble_state16(function.r, radials, 1, Parity.II, m), 0.3, quadrature)
              for m in (-1, 0, 1)}
    reference = shifts[0].shift
    assert reference != 0.0
    for m in (-1, 1):
        assert shifts[m].shift == pytest.approx(reference, rel=1e-8)
    state = assemble_state16(function.r, radials, 1, Parity.II, 1)
    assert breit_shift(state, 0.6, quadrature).shift == pytest.approx(2 * reference, rel=1e-12)
    assert breit_shift(state, 0.0, quadrature).shift == 0.0


@pytest.mark.slow
def test_solved_state_shift_matches_the_level_record(solved_triplet, quadrature):
    system, bracket, settings, function, radials = solved_triplet
    report = solve_levels(system, bracket, settings, bracketed=True)
    level = report.levels[0]
    assert level.energy == pytest.approx(function.energy, rel=1e-12)
    state = assemble_state16(function.r, radials, 1, Parity.II)
    assert level.shift == pytest.approx(breit_shift(state, 0.3, quadrature).shift, rel=1e-8)
