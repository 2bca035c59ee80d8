# app/physics/witness.py
"""
Witnessed entanglement as a generalized-robustness SDP, with PPT across a
bipartition standing in for separability.

    primal: min Tr(D)        s.t. D >= 0, (rho + D)^{T_cut} >= 0
    dual:   max -Tr(W rho)   s.t. W <= I, W^{T_cut} >= 0

Only the primal is solved. The witness is the multiplier of the PPT constraint,
partially transposed back, and the gap between the primal optimum and
-Tr(W rho) is the certificate. PPT equals separability for two qubits only.
"""
import logging
import math
from typing import Iterable, List, Optional, Sequence

import cvxpy as cp
import numpy as np

from app.core.config import settings
from app.core.errors import DimensionMismatchError, WitnessSolverError
from app.models.quantum import DensityMatrix, XYZCouplings
from app.models.witness import (
    Bipartition,
    BipartitionScan,
    EwResult,
    PartitionSpec,
    PathPoint,
    StatePath,
    Witness,
    WitnessPathReport,
    all_bipartitions,
)
from app.physics.linalg import hermitize, max_eigenvalue
from app.physics.quantum import build_xyz, haar_pure_qubit, mix, thermal_family, transpose_subsystems

logger = logging.getLogger(__name__)

_SOLVED = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


def _herm(expr: cp.Expression) -> cp.Expression:
    return (expr + expr.H) / 2


def _pt_expr(expr: cp.Expression, dims: Sequence[int], indices: Iterable[int]) -> cp.Expression:
    for index in indices:
        expr = cp.partial_transpose(expr, dims=tuple(dims), axis=index)
    return expr


def default_cut(rho: DensityMatrix) -> Bipartition:
    """First subsystem against the rest."""
    return Bipartition(side_a=(0,), n_subsystems=rho.n_subsystems)


def _solve(problem: cp.Problem, what: str) -> int:
    try:
        problem.solve(solver=settings.SDP_SOLVER)
    except cp.SolverError as exc:
        raise WitnessSolverError(f"{what} program failed: {exc}", status="solver_error") from exc
    stats = problem.solver_stats
    return int(stats.num_iters) if stats is not None and stats.num_iters is not None else 0


def witnessed_entanglement(rho: DensityMatrix, cut: Bipartition | None = None) -> EwResult:
    """E_W of rho across `cut`, with the optimal witness and a duality certificate."""
    cut = default_cut(rho) if cut is None else cut
    if cut.n_subsystems != rho.n_subsystems:
        raise ValueError(f"Cut {cut.label()} does not match {rho.n_subsystems} subsystems")
    dims = rho.subsystem_dims
    dim = rho.dim
    target = np.asarray(rho.op)

    delta = cp.Variable((dim, dim), hermitian=True)
    ppt = _herm(_pt_expr(target + delta, dims, cut.side_a)) >> 0
    problem = cp.Problem(cp.Minimize(cp.real(cp.trace(delta))), [delta >> 0, ppt])
    iterations = _solve(problem, "Robustness")

    primal_value = float(problem.value) if problem.value is not None else math.nan
    if problem.status not in _SOLVED or ppt.dual_value is None:
        raise WitnessSolverError(
            "Witness SDP did not converge", status=str(problem.status), primal_value=primal_value
        )

    # W is the multiplier of the PPT constraint taken back through the partial transpose
    op = hermitize(transpose_subsystems(np.asarray(ppt.dual_value), dims, cut.side_a))
    largest = max_eigenvalue(op)
    if primal_value > settings.EW_ZERO_TOLERANCE and largest > 0.0:
        # an optimal witness of an entangled state reaches the bound W <= I
        op = op / largest
    else:
        op = op / max(1.0, largest)
    certified = -float(np.real(np.trace(op @ target)))
    gap = abs(primal_value - certified)
    if gap > settings.EW_GAP_TOLERANCE:
        raise WitnessSolverError(
            f"Duality gap {gap:.2e} exceeds {settings.EW_GAP_TOLERANCE:.0e}",
            status=str(problem.status),
            primal_value=primal_value,
            dual_value=certified,
        )

    value = max(0.0, certified)
    if value <= settings.EW_ZERO_TOLERANCE:
        value = 0.0
        witness = Witness.trivial(dim)
    else:
        witness = Witness(op=op)

    logger.debug(
        f"E_W across {cut.label()}: {value:.8f} (primal {primal_value:.8f}, witness {certified:.8f}, "
        f"{iterations} iterations)"
    )
    return EwResult(
        value=value,
        witness=witness,
        duality_gap=gap,
        iterations=iterations,
        primal_value=primal_value,
        dual_value=certified,
        cut=cut,
        exact=rho.is_two_qubit,
        status=str(problem.status),
    )


def extract_optimal_witness(result: EwResult) -> Witness:
    return result.witness


def _random_product_vectors(dims: Sequence[int], samples: int, rng: np.random.Generator) -> np.ndarray:
    vectors = np.ones((samples, 1), dtype=np.complex128)
    for d in dims:
        if d != 2:
            raise DimensionMismatchError(f"Product sampling supports qubit factors only, got {d}")
        local = haar_pure_qubit(rng, samples)
        vectors = np.einsum("si,sj->sij", vectors, local).reshape(samples, -1)
    return vectors


def min_product_expectation(
    witness: Witness | np.ndarray,
    subsystem_dims: Sequence[int],
    samples: int = 10_000,
    rng: np.random.Generator | None = None,
) -> float:
    """Smallest Tr(W sigma) over Haar-sampled pure product states sigma."""
    op = witness.op if isinstance(witness, Witness) else np.asarray(witness)
    rng = np.random.default_rng(settings.RANDOM_SEED) if rng is None else rng
    psi = _random_product_vectors(subsystem_dims, samples, rng)
    values = np.real(np.einsum("si,ij,sj->s", psi.conj(), op, psi))
    return float(values.min())


def ew_bipartition_scan(rho: DensityMatrix, spec: PartitionSpec | None = None) -> BipartitionScan:
    spec = PartitionSpec.all(rho.n_subsystems) if spec is None else spec
    results = [witnessed_entanglement(rho, cut) for cut in spec.cuts]
    logger.info(f"Scanned {len(results)} cut(s); minimum E_W {min(r.value for r in results):.6f}")
    return BipartitionScan(results=results)


# --- Paths ---

def gibbs_path(c: XYZCouplings, betas: Sequence[float], delta_smooth: float | None = None) -> StatePath:
    state_at = thermal_family(build_xyz(c), (2, 2))
    kwargs = {} if delta_smooth is None else {"delta_smooth": delta_smooth}
    return StatePath(parameters=np.asarray(betas, dtype=float), states=[state_at(b) for b in betas], **kwargs)


def mix_path(
    start: DensityMatrix, end: DensityMatrix, ts: Sequence[float], delta_smooth: float | None = None
) -> StatePath:
    """rho(t) = (1 - t) start + t end."""
    for t in ts:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"Mixing parameter {t} outside [0, 1]")
    kwargs = {} if delta_smooth is None else {"delta_smooth": delta_smooth}
    states = [mix([start, end], [1.0 - t, t]) for t in ts]
    return StatePath(parameters=np.asarray(ts, dtype=float), states=states, **kwargs)


def _slopes(ts: np.ndarray, values: List[Optional[float]]) -> List[Optional[float]]:
    """Forward slope between points i and i+1; None across a failed point."""
    out: List[Optional[float]] = []
    for i in range(len(ts) - 1):
        a, b = values[i], values[i + 1]
        out.append(None if a is None or b is None else (b - a) / (ts[i + 1] - ts[i]))
    return out


def kinks(ts: Sequence[float], values: Sequence[Optional[float]]) -> List[int]:
    """
    Interior indices where the slope of E_W jumps by more than
    KINK_FRACTION of the largest slope on the path (and KINK_FLOOR).
    Runs of adjacent candidates collapse to their largest jump.
    """
    ts = np.asarray(ts, dtype=float)
    forward = _slopes(ts, list(values))
    known = [abs(s) for s in forward if s is not None]
    if not known:
        return []
    threshold = max(settings.KINK_FLOOR, settings.KINK_FRACTION * max(known))
    jumps = {}
    for i in range(1, len(ts) - 1):
        left, right = forward[i - 1], forward[i]
        if left is not None and right is not None and abs(right - left) > threshold:
            jumps[i] = abs(right - left)

    merged: List[int] = []
    run: List[int] = []
    for i in sorted(jumps):
        if run and i != run[-1] + 1:
            merged.append(max(run, key=jumps.__getitem__))
            run = []
        run.append(i)
    if run:
        merged.append(max(run, key=jumps.__getitem__))
    return merged


def track_witness_path(
    path: StatePath,
    cut: Bipartition | None = None,
    theta: float | None = None,
) -> WitnessPathReport:
    """
    Solves E_W along the path and flags indices where the normalized optimal
    witness moves by more than theta relative to the previous non-trivial one.
    Solver failures leave gap markers instead of aborting the scan.
    """
    theta = settings.WITNESS_THETA if theta is None else theta
    cut = default_cut(path.states[0]) if cut is None else cut
    ts = np.asarray(path.parameters)

    values: List[Optional[float]] = []
    gaps: List[Optional[float]] = []
    errors: List[Optional[str]] = []
    witnesses: List[Optional[Witness]] = []
    for t, rho in zip(ts, path.states):
        try:
            result = witnessed_entanglement(rho, cut)
        except WitnessSolverError as exc:
            logger.warning(f"E_W solve failed at t={t:g}: {exc}")
            values.append(None)
            gaps.append(None)
            errors.append(str(exc))
            witnesses.append(None)
            continue
        values.append(result.value)
        gaps.append(result.duality_gap)
        errors.append(None)
        witnesses.append(result.witness)

    jumps = [0.0] * len(ts)
    flags: List[int] = []
    previous: Optional[np.ndarray] = None
    for i, w in enumerate(witnesses):
        if w is None or w.is_trivial:
            continue
        direction = w.direction()
        if previous is not None:
            jumps[i] = float(np.linalg.norm(direction - previous))
            if jumps[i] > theta:
                flags.append(i)
        previous = direction

    forward = _slopes(ts, values)
    points = [
        PathPoint(
            t=float(t),
            value=values[i],
            duality_gap=gaps[i],
            witness_jump=jumps[i],
            left_slope=forward[i - 1] if i > 0 else None,
            right_slope=forward[i] if i < len(forward) else None,
            error=errors[i],
        )
        for i, t in enumerate(ts)
    ]
    found = kinks(ts, values)
    logger.info(f"Path of {len(ts)} points: {len(flags)} witness flag(s), {len(found)} kink(s)")
    return WitnessPathReport(points=points, witnesses=witnesses, flags=flags, kinks=found, theta=theta)
