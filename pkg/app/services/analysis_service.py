# app/services/analysis_service.py
"""
Runs the analyses behind each CLI command from a validated RunConfig.
Commands only parse flags and write what this service returns.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app.core.errors import NoTransitionError
from app.models.criticality import QuantifierSeries, TransitionReport
from app.models.quantum import BellLabel, DensityMatrix
from app.models.run_config import PathFamily, RunConfig, StateKind
from app.models.witness import Bipartition, BipartitionScan, PartitionSpec, StatePath, WitnessPathReport
from app.physics import criticality, witness
from app.physics.quantum import (
    bell_state,
    build_xyz,
    ghz_state,
    gibbs_state,
    maximally_mixed,
    random_density_matrix,
)
from app.services.state_io import read_state_file

logger = logging.getLogger(__name__)


class AnalysisService:

    def sweep(self, config: RunConfig) -> Tuple[QuantifierSeries, Optional[float]]:
        """Quantifier curves on the grid plus beta_c when it falls inside the grid."""
        spec = config.sweep_spec()
        series = criticality.sweep(config.couplings, spec, jobs=config.jobs)
        try:
            beta_c = criticality.find_critical_beta(
                config.couplings, (spec.beta_min, spec.beta_max), config.overrides.xtol
            )
        except NoTransitionError:
            beta_c = None
        logger.info(f"Sweep of {config.couplings.label()}: {spec.points} points, beta_c={beta_c}")
        return series, beta_c

    def critical(self, config: RunConfig) -> TransitionReport:
        """Raises NoTransitionError when the bracket holds a single phase."""
        return criticality.analyze_transition(
            config.couplings,
            config.kinds,
            config.bracket,
            h0=config.overrides.h0,
            xtol=config.overrides.xtol,
        )

    def _partition(self, rho: DensityMatrix, cuts: Optional[Tuple[str, ...]]) -> PartitionSpec:
        if not cuts:
            return PartitionSpec(cuts=(witness.default_cut(rho),))
        if len(cuts) == 1 and cuts[0].strip().lower() == "all":
            return PartitionSpec.all(rho.n_subsystems)
        return PartitionSpec(cuts=tuple(Bipartition.parse(token, rho.n_subsystems) for token in cuts))

    def witnessed_entanglement(self, config: RunConfig) -> BipartitionScan:
        rho = read_state_file(config.input_path)
        return witness.ew_bipartition_scan(rho, self._partition(rho, config.cuts))

    def build_path(self, config: RunConfig) -> StatePath:
        ts = np.linspace(config.grid.start, config.grid.stop, config.grid.points)
        delta = config.overrides.delta_smooth
        if config.family is PathFamily.GIBBS_BETA:
            return witness.gibbs_path(config.couplings, ts, delta)
        start = read_state_file(config.input_path)
        end = read_state_file(config.second_input_path)
        return witness.mix_path(start, end, ts, delta)

    def geoscan(self, config: RunConfig) -> WitnessPathReport:
        path = self.build_path(config)
        cut = None
        if config.cuts and config.cuts[0].strip().lower() != "all":
            cut = Bipartition.parse(config.cuts[0], path.states[0].n_subsystems)
        return witness.track_witness_path(path, cut=cut, theta=config.overrides.theta)

    def build_state(self, config: RunConfig) -> DensityMatrix:
        kind = config.state_kind
        if kind is StateKind.BELL:
            return bell_state(BellLabel(config.state_label or BellLabel.PHI_PLUS.value))
        if kind is StateKind.GHZ:
            return ghz_state(max(config.qubits, 2))
        if kind is StateKind.MIXED:
            return maximally_mixed((2,) * config.qubits)
        if kind is StateKind.GIBBS:
            return gibbs_state(build_xyz(config.couplings), config.beta, (2, 2))
        rng = np.random.default_rng(config.seed)
        return random_density_matrix((2,) * max(config.qubits, 2), rng)


# Singleton instance
_analysis_service = None

def get_analysis_service() -> AnalysisService:
    global _analysis_service
    if _analysis_service is None:
        _analysis_service = AnalysisService()
    return _analysis_service
