# app/physics/quantum.py
"""
Pauli operators, XYZ two-qubit Hamiltonians, Gibbs states and subsystem
operations. Tensor factors are big-endian: the first factor indexes the most
significant block of the computational basis.
"""
import logging
import math
from functools import reduce
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import InvalidStateError, SubsystemError
from app.models.quantum import BellLabel, DensityMatrix, PauliAxis, Spectrum, XYZCouplings
from app.physics.linalg import check_hermitian, eig_hermitian, hermitize, kron

logger = logging.getLogger(__name__)

_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_SQRT_HALF = 1.0 / math.sqrt(2.0)

# Bell vectors in the fixed order (Phi+, Phi-, Psi+, Psi-).
BELL_BASIS = np.array(
    [
        [_SQRT_HALF, 0, 0, _SQRT_HALF],
        [_SQRT_HALF, 0, 0, -_SQRT_HALF],
        [0, _SQRT_HALF, _SQRT_HALF, 0],
        [0, _SQRT_HALF, -_SQRT_HALF, 0],
    ],
    dtype=np.complex128,
).T
BELL_ORDER = (BellLabel.PHI_PLUS, BellLabel.PHI_MINUS, BellLabel.PSI_PLUS, BellLabel.PSI_MINUS)


def pauli(axis: PauliAxis | str) -> np.ndarray:
    return _PAULI[PauliAxis(axis)].copy()


def build_xyz(c: XYZCouplings) -> np.ndarray:
    """H = x sx(x)sx + y sy(x)sy + z sz(x)sz, Bell-diagonal by construction."""
    terms = (
        (c.x, PauliAxis.X),
        (c.y, PauliAxis.Y),
        (c.z, PauliAxis.Z),
    )
    h = np.zeros((4, 4), dtype=np.complex128)
    for coupling, axis in terms:
        h += coupling * kron(_PAULI[axis], _PAULI[axis])
    return hermitize(h)


def xyz_bell_energies(c: XYZCouplings) -> np.ndarray:
    """Energies of (Phi+, Phi-, Psi+, Psi-) for the XYZ Hamiltonian."""
    return np.array(
        [c.x - c.y + c.z, -c.x + c.y + c.z, c.x + c.y - c.z, -c.x - c.y - c.z]
    )


def _validate_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"Inverse temperature must be finite and >= 0, got {beta}")
    return beta


def gibbs_from_spectrum(
    spectrum: Spectrum, beta: float, subsystem_dims: Tuple[int, ...] = (2, 2)
) -> DensityMatrix:
    """
    exp(-beta H)/Z from a precomputed spectrum of H. The exponent is shifted
    by the ground energy, so every weight lies in (0, 1] for any beta.
    """
    beta = _validate_beta(beta)
    energies = spectrum.eigenvalues
    weights = np.exp(-beta * (energies - energies[0]))
    populations = weights / weights.sum()
    vectors = spectrum.eigenvectors
    op = hermitize((vectors * populations) @ vectors.conj().T)
    return DensityMatrix.trusted(op, subsystem_dims)


def gibbs_state(
    h: np.ndarray, beta: float, subsystem_dims: Tuple[int, ...] | None = None
) -> DensityMatrix:
    h = check_hermitian(h)
    if subsystem_dims is None:
        subsystem_dims = (2,) * int(round(math.log2(h.shape[0])))
    return gibbs_from_spectrum(eig_hermitian(h), beta, tuple(subsystem_dims))


def thermal_family(h: np.ndarray, subsystem_dims: Tuple[int, ...] | None = None) -> Callable[[float], DensityMatrix]:
    """Diagonalizes H once and returns beta -> Gibbs state."""
    h = check_hermitian(h)
    if subsystem_dims is None:
        subsystem_dims = (2,) * int(round(math.log2(h.shape[0])))
    dims = tuple(subsystem_dims)
    spectrum = eig_hermitian(h)

    def state_at(beta: float) -> DensityMatrix:
        return gibbs_from_spectrum(spectrum, beta, dims)

    return state_at


def _check_indices(dims: Sequence[int], indices: Iterable[int]) -> Tuple[int, ...]:
    chosen = tuple(sorted(set(int(i) for i in indices)))
    for index in chosen:
        if index < 0 or index >= len(dims):
            raise SubsystemError(f"Subsystem index {index} out of range for dims {tuple(dims)}")
    return chosen


def transpose_subsystems(op: np.ndarray, dims: Sequence[int], indices: Iterable[int]) -> np.ndarray:
    """Transposes the listed tensor factors of an operator on prod(dims)."""
    dims = tuple(dims)
    chosen = _check_indices(dims, indices)
    array = np.asarray(op, dtype=np.complex128)
    if math.prod(dims) != array.shape[0]:
        raise SubsystemError(f"dims {dims} do not match operator dimension {array.shape[0]}")
    n = len(dims)
    tensor = array.reshape(dims + dims)
    axes = list(range(2 * n))
    for k in chosen:
        axes[k], axes[n + k] = axes[n + k], axes[k]
    return tensor.transpose(axes).reshape(array.shape)


def partial_transpose(rho: DensityMatrix, subsystem_index: int = 0) -> np.ndarray:
    """rho^{T_A} for subsystem_index 0; the result is Hermitian with unit trace."""
    if not 0 <= subsystem_index < rho.n_subsystems:
        raise SubsystemError(
            f"Subsystem index {subsystem_index} out of range for dims {rho.subsystem_dims}"
        )
    return transpose_subsystems(rho.op, rho.subsystem_dims, [subsystem_index])


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    keep = _check_indices(rho.subsystem_dims, keep)
    if not keep:
        raise SubsystemError("keep must name at least one subsystem")
    dims = rho.subsystem_dims
    n = len(dims)
    tensor = np.asarray(rho.op).reshape(dims + dims)
    # einsum labels: row index i_k, column index j_k; traced factors share a label
    row = [chr(ord("a") + k) for k in range(n)]
    col = [chr(ord("a") + n + k) if k in keep else row[k] for k in range(n)]
    out = [row[k] for k in keep] + [col[k] for k in keep]
    reduced = np.einsum("".join(row + col) + "->" + "".join(out), tensor)
    kept_dims = tuple(dims[k] for k in keep)
    size = math.prod(kept_dims)
    return DensityMatrix.trusted(hermitize(reduced.reshape(size, size)), kept_dims)


def bell_populations(rho: DensityMatrix) -> np.ndarray:
    """Diagonal of a two-qubit state in the Bell basis (Phi+, Phi-, Psi+, Psi-)."""
    if not rho.is_two_qubit:
        raise SubsystemError(f"Bell populations need a two-qubit state, got dims {rho.subsystem_dims}")
    projected = BELL_BASIS.conj().T @ rho.op @ BELL_BASIS
    return np.real(np.diag(projected)).copy()


# --- Canonical and random states ---

def pure_state(vector: np.ndarray, subsystem_dims: Tuple[int, ...]) -> DensityMatrix:
    psi = np.asarray(vector, dtype=np.complex128)
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise InvalidStateError("Zero vector is not a state")
    psi = psi / norm
    return DensityMatrix.trusted(np.outer(psi, psi.conj()), subsystem_dims)


def bell_state(label: BellLabel | str = BellLabel.PHI_PLUS) -> DensityMatrix:
    index = BELL_ORDER.index(BellLabel(label))
    return pure_state(BELL_BASIS[:, index], (2, 2))


def bell_diagonal_state(populations: Sequence[float]) -> DensityMatrix:
    p = np.asarray(populations, dtype=np.float64)
    if p.shape != (4,) or np.any(p < 0) or abs(p.sum() - 1.0) > settings.TRACE_TOLERANCE:
        raise InvalidStateError(f"Bell populations must be 4 non-negative numbers summing to 1, got {p}")
    return DensityMatrix.trusted(hermitize((BELL_BASIS * p) @ BELL_BASIS.conj().T), (2, 2))


def ghz_state(n: int = 3) -> DensityMatrix:
    if not 2 <= n <= 4:
        raise SubsystemError(f"GHZ states are supported for 2..4 qubits, got {n}")
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[0] = psi[-1] = _SQRT_HALF
    return pure_state(psi, (2,) * n)


def maximally_mixed(subsystem_dims: Tuple[int, ...] = (2, 2)) -> DensityMatrix:
    dim = math.prod(subsystem_dims)
    return DensityMatrix.trusted(np.eye(dim, dtype=np.complex128) / dim, tuple(subsystem_dims))


def product_state(*factors: DensityMatrix) -> DensityMatrix:
    op = reduce(np.kron, [f.op for f in factors])
    dims = tuple(d for f in factors for d in f.subsystem_dims)
    return DensityMatrix.trusted(op, dims)


def mix(states: Sequence[DensityMatrix], weights: Sequence[float]) -> DensityMatrix:
    if len(states) != len(weights) or not states:
        raise ValueError("mix needs one weight per state")
    dims = states[0].subsystem_dims
    if any(s.subsystem_dims != dims for s in states):
        raise SubsystemError("Cannot mix states with different subsystem_dims")
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w < 0) or abs(w.sum() - 1.0) > settings.TRACE_TOLERANCE:
        raise ValueError(f"Mixing weights must be a probability vector, got {w}")
    op = sum(weight * s.op for weight, s in zip(w, states))
    return DensityMatrix.trusted(hermitize(op), dims)


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """(1 - p) rho + p I/d."""
    return mix([rho, maximally_mixed(rho.subsystem_dims)], [1.0 - p, p])


def apply_local_unitary(rho: DensityMatrix, unitaries: Sequence[np.ndarray]) -> DensityMatrix:
    u = reduce(np.kron, unitaries)
    if u.shape[0] != rho.dim:
        raise SubsystemError("Local unitaries do not match the state dimension")
    return DensityMatrix.trusted(hermitize(u @ rho.op @ u.conj().T), rho.subsystem_dims)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(subsystem_dims: Sequence[int], rng: np.random.Generator) -> List[np.ndarray]:
    """One Haar unitary per subsystem, in subsystem order."""
    return [haar_unitary(int(d), rng) for d in subsystem_dims]


def haar_pure_qubit(rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """One Haar-random qubit vector, or a (size, 2) batch of them."""
    shape = (2,) if size is None else (size, 2)
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_density_matrix(
    subsystem_dims: Tuple[int, ...], rng: np.random.Generator, rank: int | None = None
) -> DensityMatrix:
    """Ginibre-distributed mixed state of the given rank (full rank by default)."""
    dim = math.prod(subsystem_dims)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    op = g @ g.conj().T
    return DensityMatrix.trusted(hermitize(op / np.trace(op).real), tuple(subsystem_dims))


def random_bell_populations(rng: np.random.Generator) -> np.ndarray:
    p = rng.uniform(0.0, 1.0, size=4)
    return p / p.sum()


def random_bell_diagonal(rng: np.random.Generator) -> DensityMatrix:
    return bell_diagonal_state(random_bell_populations(rng))
