import numpy as np
import pytest

from functions.core_model import ChannelSpec, InteractionSpec, Parity, ParticleSpec, SpinKind, SystemKind
from functions.errors import DomainError
from functions.free_solutions import free_residual, free_solution_basis, relative_momentum

M1, M2 = 1.0, 0.5
LAMBDA = M1 + M2 + 0.3


def _particles(kind):
    spins = {
        SystemKind.SCALAR_SCALAR: (SpinKind.SCALAR, SpinKind.SCALAR),
        SystemKind.SCALAR_FERMION: (SpinKind.FERMION, SpinKind.SCALAR),
        SystemKind.FERMION_FERMION: (SpinKind.FERMION, SpinKind.FERMION),
    }[kind]
    return ParticleSpec(M1, spins[0]), ParticleSpec(M2, spins[1])


@pytest.mark.parametrize("kind, j, parity", [
    (SystemKind.SCALAR_SCALAR, 0, Parity.I),
    (SystemKind.SCALAR_SCALAR, 2, Parity.I),
    (SystemKind.SCALAR_FERMION, 0.5, Parity.I),
    (SystemKind.SCALAR_FERMION, 1.5, Parity.II),
    (SystemKind.FERMION_FERMION, 0, Parity.I),
    (SystemKind.FERMION_FERMION, 1, Parity.I),
    (SystemKind.FERMION_FERMION, 2, Parity.II),
])
def test_free_solutions_satisfy_their_systems(kind, j, parity):
    from functions.radial_systems import build_system

    system = build_system(ChannelSpec(kind, j, parity), *_particles(kind), InteractionSpec())
    basis = free_solution_basis(system, LAMBDA)
    r = np.linspace(0.1, 50.0, 40) / basis.momentum
    assert free_residual(basis, r) < 1e-7


def test_relative_momentum_matches_free_energy():
    from functions.core_model import free_total_energy

    lam = free_total_energy(0.7, M1, M2)
    assert relative_momentum(lam, M1, M2) == pytest.approx(0.7, rel=1e-12)


def test_free_basis_needs_free_system_above_threshold():
    from functions.radial_systems import build_system

    channel = ChannelSpec(SystemKind.SCALAR_SCALAR, 0)
    particles = _particles(SystemKind.SCALAR_SCALAR)
    with pytest.raises(DomainError):
        free_solution_basis(build_system(channel, *particles, InteractionSpec(alpha=0.1)), LAMBDA)
    with pytest.raises(DomainError):
        free_solution_basis(build_system(channel, *particles, InteractionSpec()), M1 + M2 - 0.1)
