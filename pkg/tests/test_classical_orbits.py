import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from functions.classical_orbits import (
    OrbitRegime, circular_orbit, classify_regime, hamiltonian_residual, integrate_trajectory,
    integrate_trajectory_r, momentum_squared, periapsis_advance, radial_momentum,
    rescaled_orbit_parameters, turning_points,
)
from functions.core_model import free_total_energy
from functions.errors import DomainError

M1 = M2 = 1.0
ALPHA = 0.1
L = 1.0
LAMBDA = 1.998


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.05, max_value=10.0), st.floats(min_value=0.1, max_value=10.0),
       st.floats(min_value=0.1, max_value=10.0))
def test_momentum_squared_inverts_free_energy(q, m1, m2):
    u = free_total_energy(q, m1, m2)
    assert momentum_squared(u, m1, m2) == pytest.approx(q * q, rel=1e-6)


@pytest.mark.parametrize("lambda_, angular, expected", [
    (LAMBDA, 0.04, OrbitRegime.FALL),
    (LAMBDA, 0.05, OrbitRegime.PARABOLIC),
    (LAMBDA, L, OrbitRegime.ELLIPTIC),
    (2.0, L, OrbitRegime.PARABOLIC),
    (2.1, L, OrbitRegime.HYPERBOLIC),
])
def test_regimes(lambda_, angular, expected):
    assert classify_regime(lambda_, angular, ALPHA, M1, M2) == expected


def test_turning_points_have_no_radial_momentum():
    w_min, w_max = turning_points(LAMBDA, L, ALPHA, M1, M2)
    assert 0 < w_min < w_max
    for w in (w_min, w_max):
        r = ALPHA / w
        assert abs(hamiltonian_residual(r, 0.0, L, LAMBDA, ALPHA, M1, M2)) < 1e-10
    # the Kepler ellipse of the reduced mass is close at this weak coupling
    assert ALPHA / w_max == pytest.approx(20.0 / (1 + math.sqrt(0.2)), rel=0.05)


def test_radial_momentum_conserves_energy_between_turning_points():
    w_min, w_max = turning_points(LAMBDA, L, ALPHA, M1, M2)
    r = 2 * ALPHA / (w_min + w_max)
    q_r = radial_momentum(r, LAMBDA, L, M1, M2, ALPHA)
    assert q_r > 0
    assert abs(hamiltonian_residual(r, q_r, L, LAMBDA, ALPHA, M1, M2)) < 1e-12
    with pytest.raises(DomainError):
        radial_momentum(0.5 * ALPHA / w_max, LAMBDA, L, M1, M2, ALPHA)


def test_half_orbit_sweeps_pi_plus_half_the_advance():
    advance = periapsis_advance(LAMBDA, L, ALPHA, M1, M2)
    assert 0 < advance < 0.2
    sample = integrate_trajectory(LAMBDA, L, ALPHA, M1, M2, samples=9)
    assert sample.theta[0] == 0.0
    assert sample.theta[-1] == pytest.approx(math.pi + advance / 2, rel=1e-9)
    assert sample.regime == OrbitRegime.ELLIPTIC


def test_radius_parameterisation_agrees():
    w_min, w_max = turning_points(LAMBDA, L, ALPHA, M1, M2)
    by_u = integrate_trajectory(LAMBDA, L, ALPHA, M1, M2, samples=5)
    by_r = integrate_trajectory_r(LAMBDA, L, ALPHA, M1, M2, (ALPHA / w_max, ALPHA / w_min), samples=5)
    assert by_r.theta[-1] == pytest.approx(by_u.theta[-1], rel=1e-4)


def test_advance_shrinks_towards_the_kepler_limit():
    advances = []
    for c in (1.0, 2.0, 4.0):
        p = rescaled_orbit_parameters(c, M1, M2, ALPHA, L, LAMBDA - M1 - M2)
        advances.append(periapsis_advance(p["lambda_"], p["L"], p["alpha"], p["m1"], p["m2"]))
    assert advances[0] > advances[1] > advances[2] > 0


def test_rescaled_parameters():
    p = rescaled_orbit_parameters(2.0, 1.0, 3.0, 0.2, 1.5, -0.01)
    assert p == pytest.approx({"m1": 4.0, "m2": 12.0, "alpha": 0.1, "L": 1.5, "lambda_": 15.99})
    with pytest.raises(DomainError):
        rescaled_orbit_parameters(0.0, 1.0, 1.0, 0.1, 1.0, -0.01)


def test_circular_orbit_is_bound():
    radius, lambda_ = circular_orbit(L, ALPHA, M1, M2)
    assert lambda_ < M1 + M2
    assert radius == pytest.approx(20.0, rel=0.05)
    with pytest.raises(DomainError):
        circular_orbit(0.04, ALPHA, M1, M2)


def test_free_motion_has_no_quartic():
    with pytest.raises(DomainError):
        integrate_trajectory(2.5, L, 0.0, M1, M2)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1.0, max_value=10.0), st.floats(min_value=0.1, max_value=10.0),
       st.floats(min_value=0.1, max_value=10.0), st.floats(min_value=0.1, max_value=100.0),
       st.floats(min_value=0.0, max_value=0.9))
def test_free_radial_momentum_is_the_relative_momentum(q, m1, m2, r, tangential):
    lambda_ = free_total_energy(q, m1, m2)
    assert radial_momentum(r, lambda_, 0.0, m1, m2, 0.0) == pytest.approx(q, rel=1e-12)
    angular = tangential * q * r
    q_r = radial_momentum(r, lambda_, angular, m1, m2, 0.0)
    assert math.hypot(q_r, angular / r) == pytest.approx(q, rel=1e-12)


def _reaches_origin(angular: float) -> bool:
    try:
        radial_momentum(1e-9 * ALPHA, LAMBDA, angular, M1, M2, ALPHA)
    except DomainError:
        return False
    return True


def test_fall_sets_in_below_half_the_coupling():
    low, high = 0.0, ALPHA
    assert _reaches_origin(low) and not _reaches_origin(high)
    while high - low > 1e-9 * ALPHA:
        mid = 0.5 * (low + high)
        if _reaches_origin(mid):
            low = mid
        else:
            high = mid
    edge = 0.5 * (low + high)
    assert edge == pytest.approx(ALPHA / 2, abs=1e-6 * ALPHA)
    assert classify_regime(LAMBDA, edge * (1 - 1e-5), ALPHA, M1, M2) == OrbitRegime.FALL
    assert classify_regime(LAMBDA, edge * (1 + 1e-5), ALPHA, M1, M2) == OrbitRegime.ELLIPTIC
