import math

import numpy as np
import pytest
from hypothesis import given

from app.core.errors import InvalidStateError, SubsystemError
from app.models.quantum import DensityMatrix, XYZCouplings
from app.physics.linalg import eig_hermitian, kron
from app.physics.quantum import (
    BELL_BASIS,
    apply_local_unitary,
    bell_diagonal_state,
    bell_populations,
    bell_state,
    build_xyz,
    depolarize,
    ghz_state,
    gibbs_state,
    haar_unitary,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    pauli,
    product_state,
    random_density_matrix,
    thermal_family,
    xyz_bell_energies,
)
from tests.conftest import COUPLING_SETS, HEISENBERG, betas_strategy, couplings_strategy


def test_pauli_algebra():
    np.testing.assert_array_equal(pauli("z"), np.diag([1, -1]))
    np.testing.assert_array_equal(pauli("x") @ pauli("x"), np.eye(2))
    np.testing.assert_array_equal(pauli("x") @ pauli("y"), 1j * pauli("z"))


def test_heisenberg_ground_state_is_singlet():
    spectrum = eig_hermitian(build_xyz(HEISENBERG))
    ground = spectrum.eigenvectors[:, 0]
    singlet = BELL_BASIS[:, 3]
    assert abs(np.vdot(singlet, ground)) == pytest.approx(1.0)


def test_xxz_spectrum():
    h = build_xyz(XYZCouplings(x=3, y=1, z=1))
    np.testing.assert_allclose(eig_hermitian(h).eigenvalues, [-5, -1, 3, 3], atol=1e-12)


def test_zero_couplings():
    np.testing.assert_array_equal(build_xyz(XYZCouplings(x=0, y=0, z=0)), np.zeros((4, 4)))


@given(couplings_strategy)
def test_hamiltonian_is_bell_diagonal(c):
    in_bell = BELL_BASIS.conj().T @ build_xyz(c) @ BELL_BASIS
    np.testing.assert_allclose(in_bell, np.diag(xyz_bell_energies(c)), atol=1e-12)


def test_gibbs_infinite_temperature():
    rho = gibbs_state(build_xyz(HEISENBERG), 0.0)
    np.testing.assert_allclose(rho.op, np.eye(4) / 4, atol=1e-15)


def test_gibbs_low_temperature_is_singlet():
    rho = gibbs_state(build_xyz(HEISENBERG), 50.0)
    assert np.linalg.norm(rho.op - bell_state("psi-").op) <= 1e-10


def test_gibbs_stays_finite_at_large_beta():
    rho = gibbs_state(build_xyz(HEISENBERG), 500.0)
    assert np.all(np.isfinite(rho.op))
    assert np.trace(rho.op).real == pytest.approx(1.0)


def test_gibbs_populations_at_half():
    rho = gibbs_state(build_xyz(HEISENBERG), 0.5)
    z = 3 * math.exp(-0.5) + math.exp(1.5)
    expected = np.array([math.exp(-0.5)] * 3 + [math.exp(1.5)]) / z
    np.testing.assert_allclose(bell_populations(rho), expected, atol=1e-12)


@given(couplings_strategy, betas_strategy)
def test_gibbs_commutes_and_is_softmax(c, beta):
    h = build_xyz(c)
    rho = gibbs_state(h, beta)
    assert np.linalg.norm(rho.op @ h - h @ rho.op) <= 1e-10
    energies = eig_hermitian(h).eigenvalues
    weights = np.exp(-beta * (energies - energies.min()))
    np.testing.assert_allclose(
        eig_hermitian(rho.op).eigenvalues, np.sort(weights / weights.sum()), atol=1e-10
    )


@pytest.mark.parametrize("c", COUPLING_SETS)
def test_infinite_temperature_limit(c):
    rho = gibbs_state(build_xyz(c), 1e-6)
    assert np.linalg.norm(rho.op - np.eye(4) / 4) < 1e-5


def test_thermal_family_matches_gibbs_state():
    h = build_xyz(XYZCouplings(x=3, y=2, z=1))
    state_at = thermal_family(h)
    for beta in (0.0, 0.14, 1.0, 7.5):
        np.testing.assert_allclose(state_at(beta).op, gibbs_state(h, beta).op, atol=1e-14)


def test_negative_beta_rejected():
    with pytest.raises(ValueError):
        gibbs_state(build_xyz(HEISENBERG), -0.1)


def test_partial_transpose_of_bell_state():
    pt = partial_transpose(bell_state("phi+"))
    np.testing.assert_allclose(eig_hermitian(pt).eigenvalues, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_partial_transpose_of_product_keeps_spectrum(rng):
    a = random_density_matrix((2,), rng)
    b = random_density_matrix((2,), rng)
    rho = product_state(a, b)
    np.testing.assert_allclose(partial_transpose(rho, 1), kron(a.op, b.op.T), atol=1e-15)
    np.testing.assert_allclose(
        eig_hermitian(partial_transpose(rho)).eigenvalues, eig_hermitian(rho.op).eigenvalues, atol=1e-12
    )


def test_partial_transpose_involution_and_trace(rng):
    for _ in range(50):
        rho = random_density_matrix((2, 2), rng)
        pt = partial_transpose(rho)
        twice = partial_transpose(DensityMatrix.trusted(pt, (2, 2)))
        np.testing.assert_array_equal(twice, rho.op)
        assert np.trace(pt) == pytest.approx(1.0)
        np.testing.assert_allclose(pt, pt.conj().T, atol=1e-15)


def test_partial_transpose_maximally_mixed():
    np.testing.assert_array_equal(partial_transpose(maximally_mixed()), np.eye(4) / 4)


def test_partial_transpose_bad_index():
    with pytest.raises(SubsystemError):
        partial_transpose(maximally_mixed(), 2)


def test_partial_trace_examples(rng):
    a = random_density_matrix((2,), rng)
    b = random_density_matrix((2,), rng)
    np.testing.assert_allclose(partial_trace(product_state(a, b), [0]).op, a.op, atol=1e-14)
    for keep in ([0], [1]):
        np.testing.assert_allclose(partial_trace(bell_state("phi+"), keep).op, np.eye(2) / 2, atol=1e-15)
    reduced = partial_trace(ghz_state(3), [0, 1])
    assert reduced.subsystem_dims == (2, 2)
    np.testing.assert_allclose(reduced.op, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_partial_trace_preserves_trace(rng):
    rho = random_density_matrix((2, 2, 2), rng)
    for keep in ([0], [2], [0, 2], [1, 2]):
        assert np.trace(partial_trace(rho, keep).op).real == pytest.approx(1.0)
    with pytest.raises(SubsystemError):
        partial_trace(rho, [])


def test_bell_populations_examples():
    np.testing.assert_allclose(bell_populations(maximally_mixed()), [0.25] * 4, atol=1e-15)
    np.testing.assert_allclose(bell_populations(bell_state("psi-")), [0, 0, 0, 1], atol=1e-15)


def test_bell_diagonal_state_round_trip():
    p = [0.1, 0.2, 0.3, 0.4]
    np.testing.assert_allclose(bell_populations(bell_diagonal_state(p)), p, atol=1e-15)
    with pytest.raises(InvalidStateError):
        bell_diagonal_state([0.5, 0.5, 0.5, -0.5])


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(op=np.eye(4) / 2)
    with pytest.raises(ValueError):
        DensityMatrix(op=np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(ValueError):
        DensityMatrix(op=np.eye(4) / 4, subsystem_dims=(2, 3))
    rho = DensityMatrix(op=np.eye(4) / 4)
    assert rho.is_two_qubit and rho.dim == 4


def test_depolarize_and_local_unitary(rng):
    rho = bell_state("phi+")
    np.testing.assert_allclose(depolarize(rho, 1.0).op, np.eye(4) / 4, atol=1e-15)
    u = [haar_unitary(2, rng), haar_unitary(2, rng)]
    rotated = apply_local_unitary(rho, u)
    np.testing.assert_allclose(
        eig_hermitian(rotated.op).eigenvalues, eig_hermitian(rho.op).eigenvalues, atol=1e-12
    )
