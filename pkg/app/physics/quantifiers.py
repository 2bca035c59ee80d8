# app/physics/quantifiers.py
"""
Entanglement quantifiers of two-qubit (and, for the negativities, general
bipartite) states: concurrence, entanglement of formation, negativity,
logarithmic negativity and the indicator measure.
"""
import logging
import math
from typing import Dict, Iterable

import numpy as np
from scipy.special import entr

from app.core.config import settings
from app.core.errors import SubsystemError
from app.models.quantifier import QuantifierKind, QuantifierValue
from app.models.quantum import DensityMatrix, PauliAxis
from app.physics.linalg import eig_hermitian, hermitize, kron, min_eigenvalue, sqrtm_psd, trace_norm
from app.physics.quantum import pauli, partial_transpose

logger = logging.getLogger(__name__)

_SPIN_FLIP = kron(pauli(PauliAxis.Y), pauli(PauliAxis.Y))


def _require_two_qubit(rho: DensityMatrix, what: str) -> None:
    if not rho.is_two_qubit:
        raise SubsystemError(f"{what} is defined for two-qubit states only, got dims {rho.subsystem_dims}")


def binary_entropy(p: float) -> float:
    """H2(p) in bits with 0 log 0 = 0."""
    return float((entr(p) + entr(1.0 - p)) / math.log(2.0))


def concurrence(rho: DensityMatrix) -> float:
    """
    Wootters concurrence max(0, l1 - l2 - l3 - l4). The l_i are square roots of
    the eigenvalues of the Hermitian sqrt(rho) rho~ sqrt(rho), which share the
    spectrum of rho rho~ with rho~ = (sy x sy) rho* (sy x sy).
    """
    return max(0.0, concurrence_margin(rho))


def eof_from_concurrence(c: float) -> float:
    c = min(max(float(c), 0.0), 1.0)
    # 1 - sqrt(1 - c^2) written without cancellation
    s = math.sqrt(1.0 - c * c)
    q = (c * c) / (2.0 * (1.0 + s))
    return binary_entropy(q)


def entanglement_of_formation(rho: DensityMatrix) -> float:
    return eof_from_concurrence(concurrence(rho))


def negativity(rho: DensityMatrix, subsystem_index: int = 0) -> float:
    """||rho^{T_A}||_1 - 1; exactly 0 when the partial transpose is PSD."""
    pt = partial_transpose(rho, subsystem_index)
    if min_eigenvalue(pt) >= 0.0:
        return 0.0
    return max(0.0, trace_norm(pt) - 1.0)


def log_negativity(rho: DensityMatrix, subsystem_index: int = 0) -> float:
    return math.log2(1.0 + negativity(rho, subsystem_index))


def ppt_min_eigenvalue(rho: DensityMatrix, subsystem_index: int = 0) -> float:
    return min_eigenvalue(partial_transpose(rho, subsystem_index))


def indicator(rho: DensityMatrix, epsilon: float | None = None) -> int:
    """1 if entangled, 0 if separable; decided by PPT, which is exact for two qubits."""
    _require_two_qubit(rho, "The indicator measure")
    epsilon = settings.PPT_EPSILON if epsilon is None else epsilon
    return int(ppt_min_eigenvalue(rho) < -epsilon)


def bell_diagonal_concurrence(populations: Iterable[float]) -> float:
    """max(0, 2 p_max - 1) for a Bell-diagonal state."""
    return max(0.0, 2.0 * float(max(populations)) - 1.0)


_DISPATCH = {
    QuantifierKind.CONCURRENCE: concurrence,
    QuantifierKind.EOF: entanglement_of_formation,
    QuantifierKind.NEGATIVITY: negativity,
    QuantifierKind.LOG_NEGATIVITY: log_negativity,
    QuantifierKind.INDICATOR: lambda rho: float(indicator(rho)),
}


def quantify(rho: DensityMatrix, kind: QuantifierKind) -> QuantifierValue:
    return QuantifierValue(kind=kind, value=float(_DISPATCH[QuantifierKind(kind)](rho)))


def evaluate(rho: DensityMatrix, kinds: Iterable[QuantifierKind]) -> Dict[QuantifierKind, float]:
    """
    Evaluates several quantifiers on one state. Concurrence and negativity
    are computed once and reused by E_f and E_N.
    """
    kinds = [QuantifierKind(k) for k in kinds]
    values: Dict[QuantifierKind, float] = {}
    c = n = None
    for kind in kinds:
        if kind in (QuantifierKind.CONCURRENCE, QuantifierKind.EOF):
            c = concurrence(rho) if c is None else c
            values[kind] = c if kind is QuantifierKind.CONCURRENCE else eof_from_concurrence(c)
        elif kind in (QuantifierKind.NEGATIVITY, QuantifierKind.LOG_NEGATIVITY):
            n = negativity(rho) if n is None else n
            values[kind] = n if kind is QuantifierKind.NEGATIVITY else math.log2(1.0 + n)
        else:
            values[kind] = float(indicator(rho))
    return values


def concurrence_margin(rho: DensityMatrix) -> float:
    """
    l1 - l2 - l3 - l4 before clamping at zero; changes sign at the separability
    boundary. The l_i are the singular values of M = sqrt(rho) sqrt(rho~), read
    off as the top half of the spectrum of [[0, M], [M^dagger, 0]] so small
    l_i are never squared. Eigenvalues below SQRT_CLAMP count as zero under
    the square roots of rho and rho~.
    """
    _require_two_qubit(rho, "Concurrence")
    flipped = _SPIN_FLIP @ rho.op.conj() @ _SPIN_FLIP
    m = sqrtm_psd(rho.op, settings.SQRT_CLAMP) @ sqrtm_psd(flipped, settings.SQRT_CLAMP)
    zero = np.zeros_like(m)
    dilation = np.block([[zero, m], [m.conj().T, zero]])
    lam = eig_hermitian(hermitize(dilation)).eigenvalues[:3:-1]
    return float(lam[0] - lam[1] - lam[2] - lam[3])
