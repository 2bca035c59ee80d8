import itertools

import numpy as np
import pytest

from app.core.errors import WitnessSolverError
from app.models.quantum import DensityMatrix
from app.models.witness import Bipartition, PartitionSpec, StatePath, Witness, all_bipartitions
from app.physics.criticality import find_critical_beta
from app.physics.linalg import max_eigenvalue
from app.physics.quantifiers import concurrence, negativity, ppt_min_eigenvalue
from app.physics.quantum import (
    bell_diagonal_state,
    bell_state,
    build_xyz,
    depolarize,
    ghz_state,
    gibbs_state,
    maximally_mixed,
    mix,
    product_state,
    pure_state,
    random_density_matrix,
    transpose_subsystems,
)
from app.physics.witness import (
    ew_bipartition_scan,
    extract_optimal_witness,
    gibbs_path,
    kinks,
    min_product_expectation,
    mix_path,
    track_witness_path,
    witnessed_entanglement,
)
from tests.conftest import BETA_C_HEISENBERG, HEISENBERG

pytestmark = pytest.mark.slow

KET0 = pure_state(np.array([1.0, 0.0]), (2,))


def is_ppt(op: np.ndarray) -> bool:
    return np.linalg.eigvalsh(transpose_subsystems(op, (2, 2), [0])).min() >= -1e-12


def brute_force_robustness(rho: DensityMatrix, sigmas) -> float:
    """Smallest s with rho + s sigma PPT, over the given mixing states."""
    best = np.inf
    for sigma in sigmas:
        lo, hi = 0.0, 4.0
        if not is_ppt(rho.op + hi * sigma):
            continue
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            lo, hi = (lo, mid) if is_ppt(rho.op + mid * sigma) else (mid, hi)
        best = min(best, hi)
    return best


def bell_diagonal_grid(step: float = 0.05):
    n = int(round(1 / step))
    for a, b, c in itertools.product(range(n + 1), repeat=3):
        if a + b + c <= n:
            yield bell_diagonal_state(np.array([a, b, c, n - a - b - c]) / n).op


def random_ppt_states(rng, count):
    states = []
    while len(states) < count:
        rho = random_density_matrix((2, 2), rng)
        if ppt_min_eigenvalue(rho) > 1e-6:
            states.append(rho)
    return states


def random_entangled_states(rng, count):
    states = []
    while len(states) < count:
        rho = random_density_matrix((2, 2), rng, rank=1 + len(states) % 3)
        if negativity(rho) > 1e-3:
            states.append(rho)
    return states


def test_bell_state_value_matches_oracle(rng):
    rho = bell_state("phi+")
    sigmas = list(bell_diagonal_grid()) + [random_density_matrix((2, 2), rng).op for _ in range(50)]
    oracle = brute_force_robustness(rho, sigmas)
    result = witnessed_entanglement(rho)
    assert oracle == pytest.approx(1.0, abs=1e-6)
    assert result.value == pytest.approx(oracle, abs=1e-4)
    assert result.duality_gap <= 1e-6
    assert result.exact


def test_bell_state_witness():
    rho = bell_state("phi+")
    result = witnessed_entanglement(rho)
    witness = extract_optimal_witness(result)
    assert witness.expectation(rho) == pytest.approx(-1.0, abs=1e-6)
    assert max_eigenvalue(witness.op) <= 1.0 + 1e-8
    assert witness.constraint_tag.value == "OpBoundedByIdentity"


def test_maximally_mixed_is_zero():
    result = witnessed_entanglement(maximally_mixed())
    assert result.value == 0.0
    assert result.witness.is_trivial


def test_ppt_states_have_zero_value(rng):
    for rho in random_ppt_states(rng, 200):
        result = witnessed_entanglement(rho)
        assert result.value == 0.0
        assert result.witness.is_trivial


def test_entangled_states_certified(rng):
    for rho in random_entangled_states(rng, 200):
        result = witnessed_entanglement(rho)
        assert result.duality_gap <= 1e-6
        assert result.value > 0.0
        assert result.witness.expectation(rho) == pytest.approx(-result.value, abs=1e-6)


def test_werner_like_gibbs_witness_is_valid():
    rho = gibbs_state(build_xyz(HEISENBERG), 1.0)
    result = witnessed_entanglement(rho)
    assert result.value == pytest.approx(concurrence(rho), abs=1e-6)
    witness = extract_optimal_witness(result)
    assert min_product_expectation(witness, (2, 2), samples=10_000, rng=np.random.default_rng(7)) >= -1e-7
    assert max_eigenvalue(witness.op) <= 1.0 + 1e-8


def test_vanishes_continuously_at_critical_point():
    h = build_xyz(HEISENBERG)
    far = witnessed_entanglement(gibbs_state(h, BETA_C_HEISENBERG + 0.01)).value
    near = witnessed_entanglement(gibbs_state(h, BETA_C_HEISENBERG + 0.001)).value
    assert far > near > 0.0


def test_convex_along_mixing(rng):
    for _ in range(5):
        a, b = random_entangled_states(rng, 2)
        ea, eb = witnessed_entanglement(a).value, witnessed_entanglement(b).value
        for lam in (0.25, 0.5, 0.75):
            mixed = mix([a, b], [lam, 1 - lam])
            assert witnessed_entanglement(mixed).value <= lam * ea + (1 - lam) * eb + 1e-6


def test_frozen_witness_is_a_lower_bound(rng):
    rho0 = random_entangled_states(rng, 1)[0]
    frozen = witnessed_entanglement(rho0).witness
    samples = random_entangled_states(rng, 10) + random_ppt_states(rng, 5)
    for rho in samples:
        assert witnessed_entanglement(rho).value >= -frozen.expectation(rho) - 1e-7
    a, b = samples[0], samples[1]
    mixed = mix([a, b], [0.3, 0.7])
    affine = 0.3 * frozen.expectation(a) + 0.7 * frozen.expectation(b)
    assert frozen.expectation(mixed) == pytest.approx(affine, abs=1e-12)


def test_monotone_under_depolarization(rng):
    rho = random_entangled_states(rng, 1)[0]
    values = [witnessed_entanglement(depolarize(rho, p)).value for p in np.linspace(0.0, 1.0, 11)]
    assert all(b <= a + 1e-7 for a, b in zip(values, values[1:]))


def test_ghz_scan():
    scan = ew_bipartition_scan(ghz_state(3), PartitionSpec.all(3))
    assert len(scan.results) == 3
    for result in scan.results:
        assert result.value == pytest.approx(1.0, abs=1e-4)
        assert not result.exact
    assert scan.minimum == pytest.approx(1.0, abs=1e-4)
    assert not scan.exact


def test_bell_pair_with_spectator():
    rho = product_state(bell_state("phi+"), KET0)
    first = witnessed_entanglement(rho, Bipartition(side_a=(0,), n_subsystems=3))
    last = witnessed_entanglement(rho, Bipartition(side_a=(2,), n_subsystems=3))
    assert first.value == pytest.approx(1.0, abs=1e-4)
    assert last.value == 0.0


def test_product_state_has_zero_on_every_cut():
    plus = pure_state(np.array([1.0, 1.0]), (2,))
    scan = ew_bipartition_scan(product_state(KET0, plus, KET0))
    assert [r.value for r in scan.results] == [0.0, 0.0, 0.0]


def test_all_bipartitions_counts():
    assert [c.label() for c in all_bipartitions(2)] == ["{0}|{1}"]
    assert len(all_bipartitions(3)) == 3
    assert len(all_bipartitions(4)) == 7
    with pytest.raises(ValueError):
        Bipartition(side_a=(0, 1), n_subsystems=2)
    assert Bipartition.parse("0,2|1", 3).side_b == (1,)


def test_witness_bound_is_enforced():
    with pytest.raises(ValueError):
        Witness(op=2.0 * np.eye(4))


def test_solver_failure_is_reported(monkeypatch):
    from app.physics import witness as witness_module

    def broken(problem, what):
        raise WitnessSolverError(f"{what} program failed", status="solver_error")

    monkeypatch.setattr(witness_module, "_solve", broken)
    with pytest.raises(WitnessSolverError):
        witnessed_entanglement(bell_state("phi+"))

    path = mix_path(maximally_mixed(), bell_state("phi+"), np.linspace(0.0, 0.1, 3))
    report = track_witness_path(path)
    assert report.gaps == [0, 1, 2]
    assert report.flags == []


# --- Paths ---

def test_constant_separable_path():
    mixed = maximally_mixed()
    path = mix_path(mixed, mixed, np.linspace(0.0, 1.0, 11))
    report = track_witness_path(path)
    assert all(p.value == 0.0 for p in report.points)
    assert report.flags == [] and report.kinks == []


def test_gibbs_path_has_single_kink_and_no_flags():
    betas = np.linspace(0.1, 1.0, 91)
    report = track_witness_path(gibbs_path(HEISENBERG, betas))
    assert report.flags == []
    assert len(report.kinks) == 1
    assert abs(report.kink_parameters[0] - find_critical_beta(HEISENBERG)) <= 0.01 + 1e-12


def test_corner_crossing_path_flags_once():
    noisy_phi = depolarize(bell_state("phi+"), 0.2)
    noisy_psi = depolarize(bell_state("psi-"), 0.2)
    ts = np.linspace(0.0, 1.0, 101)
    report = track_witness_path(mix_path(noisy_phi, noisy_psi, ts))
    assert len(report.flags) == 1
    # separable for t in [0.4375, 0.5625]; the flag lands on the first entangled point after
    assert abs(report.flag_parameters[0] - 0.5625) <= 0.01 + 1e-12
    assert report.points[report.flags[0]].witness_jump > report.theta


def test_rough_path_rejected():
    with pytest.raises(ValueError):
        StatePath(parameters=[0.0, 1.0], states=[maximally_mixed(), bell_state("phi+")])


def test_kinks_merge_adjacent_candidates():
    ts = np.linspace(0.0, 1.0, 11)
    values = [max(0.0, 2.0 * (t - 0.45)) for t in ts]
    assert kinks(ts, values) in ([4], [5])
    assert kinks(ts, [0.0] * 11) == []


def test_one_solve_and_gap_against_returned_witness(monkeypatch, rng):
    from app.physics import witness as witness_module

    calls = []
    original = witness_module._solve

    def counting(problem, what):
        calls.append(what)
        return original(problem, what)

    monkeypatch.setattr(witness_module, "_solve", counting)
    for rho in random_entangled_states(rng, 5):
        calls.clear()
        result = witnessed_entanglement(rho)
        assert len(calls) == 1
        certified = -result.witness.expectation(rho)
        assert result.dual_value == pytest.approx(certified, abs=1e-12)
        assert result.duality_gap == pytest.approx(abs(result.primal_value - certified), abs=1e-12)
        assert max_eigenvalue(result.witness.op) == pytest.approx(1.0, abs=1e-6)
