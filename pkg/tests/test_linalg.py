import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.errors import (
    ConvergenceError,
    DimensionMismatchError,
    NonHermitianError,
    SpectralOverflowError,
)
from app.models.quantum import XYZCouplings
from app.physics.linalg import (
    check_hermitian,
    dagger,
    eig_hermitian,
    expm_hermitian,
    frob_dist,
    kron,
    max_eigenvalue,
    sqrtm_psd,
    trace_norm,
)
from app.physics.quantum import BELL_BASIS, build_xyz, pauli, partial_transpose, bell_state
from tests.conftest import random_hermitian


def test_identity_spectrum():
    spectrum = eig_hermitian(np.eye(2))
    np.testing.assert_allclose(spectrum.eigenvalues, [1.0, 1.0])


def test_pauli_x_spectrum():
    np.testing.assert_allclose(eig_hermitian(pauli("x")).eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_heisenberg_spectrum():
    h = build_xyz(XYZCouplings(x=1, y=1, z=1))
    np.testing.assert_allclose(eig_hermitian(h).eigenvalues, [-3.0, 1.0, 1.0, 1.0], atol=1e-12)


@pytest.mark.parametrize("dim", [4, 8])
def test_reconstruction_and_orthonormality(rng, dim):
    for _ in range(100):
        a = random_hermitian(rng, dim)
        spectrum = eig_hermitian(a)
        v, lam = spectrum.eigenvectors, spectrum.eigenvalues
        assert np.linalg.norm(a - (v * lam) @ v.conj().T) <= 1e-10
        assert np.linalg.norm(v.conj().T @ v - np.eye(dim)) <= 1e-10
        assert np.all(np.diff(lam) >= 0)


def test_matches_numpy(rng):
    for _ in range(20):
        a = random_hermitian(rng, 8)
        np.testing.assert_allclose(eig_hermitian(a).eigenvalues, np.linalg.eigvalsh(a), atol=1e-10)


def test_spectrum_is_read_only():
    spectrum = eig_hermitian(pauli("z"))
    with pytest.raises(ValueError):
        spectrum.eigenvalues[0] = 5.0


def test_non_hermitian_rejected_with_asymmetry():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NonHermitianError) as excinfo:
        eig_hermitian(a)
    assert excinfo.value.max_asymmetry == pytest.approx(1.0)


def test_unsupported_dimension_rejected():
    with pytest.raises(DimensionMismatchError):
        check_hermitian(np.eye(3))
    with pytest.raises(DimensionMismatchError):
        eig_hermitian(np.ones((2, 4)))


def test_expm_at_zero_is_identity(rng):
    a = random_hermitian(rng, 4)
    np.testing.assert_allclose(expm_hermitian(a, 0.0), np.eye(4), atol=1e-12)


def test_expm_diagonal():
    np.testing.assert_allclose(
        expm_hermitian(np.diag([0.3, -1.2]), 1.0), np.diag(np.exp([0.3, -1.2])), atol=1e-14
    )


def test_expm_heisenberg_in_bell_basis():
    h = build_xyz(XYZCouplings(x=1, y=1, z=1))
    in_bell = BELL_BASIS.conj().T @ expm_hermitian(h, -0.5) @ BELL_BASIS
    expected = np.diag(np.exp([-0.5, -0.5, -0.5, 1.5]))
    np.testing.assert_allclose(in_bell, expected, atol=1e-12)


def test_expm_semigroup(rng):
    for _ in range(100):
        a = random_hermitian(rng, 4)
        a = a / np.max(np.abs(np.linalg.eigvalsh(a)))
        s, t = rng.uniform(-2.0, 2.0, size=2)
        product = expm_hermitian(a, s) @ expm_hermitian(a, t)
        assert np.linalg.norm(product - expm_hermitian(a, s + t)) <= 1e-9


def test_expm_overflow_rejected():
    with pytest.raises(SpectralOverflowError):
        expm_hermitian(np.diag([1.0, 0.0]), 1000.0)


def test_trace_norm_examples():
    assert trace_norm(np.eye(4)) == pytest.approx(4.0)
    assert trace_norm(bell_state("phi+").op) == pytest.approx(1.0)
    assert trace_norm(partial_transpose(bell_state("phi+"))) == pytest.approx(2.0)


def test_trace_norm_bounds_operator_norm(rng):
    for _ in range(100):
        a = random_hermitian(rng, 4)
        lam = eig_hermitian(a).eigenvalues
        assert trace_norm(a) == np.sum(np.abs(lam))
        assert trace_norm(a) >= np.linalg.norm(a, 2) - 1e-12


def test_kron_dagger_frob():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    xx = kron(pauli("x"), pauli("x"))
    np.testing.assert_allclose(eig_hermitian(xx).eigenvalues, [-1, -1, 1, 1], atol=1e-14)
    y = pauli("y")
    np.testing.assert_array_equal(dagger(y), y)
    assert frob_dist(xx, xx) == 0.0
    with pytest.raises(DimensionMismatchError):
        frob_dist(np.eye(2), np.eye(4))
    with pytest.raises(DimensionMismatchError):
        kron(np.eye(8), np.eye(4))


@given(st.floats(0.0, 4.0), st.floats(0.0, 4.0))
def test_sqrtm_of_diagonal(a, b):
    root = sqrtm_psd(np.diag([a, b]))
    np.testing.assert_allclose(root @ root, np.diag([a, b]), atol=1e-12)
    assert max_eigenvalue(root) == pytest.approx(max(np.sqrt(a), np.sqrt(b)))


def test_sweep_cap_raises_convergence_error(monkeypatch):
    from app.core.config import settings

    monkeypatch.setattr(settings, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError) as excinfo:
        eig_hermitian(pauli("x"))
    assert excinfo.value.exit_code == 5
    # already diagonal input needs no sweep
    np.testing.assert_allclose(eig_hermitian(np.diag([2.0, 1.0])).eigenvalues, [1.0, 2.0])
