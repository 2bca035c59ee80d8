# app/services/report_writer.py
"""
CSV and text rendering for sweeps, witness results and path scans.
Numbers are printed as the shortest decimal that round-trips the value
rounded to 12 significant digits, with '.' as separator whatever the locale.
"""
import csv
import io
from typing import Iterable, List, Optional, Sequence

import numpy as np

from app.models.criticality import QuantifierSeries
from app.models.witness import BipartitionScan, WitnessPathReport


def format_number(x: Optional[float]) -> str:
    if x is None:
        return ""
    value = float(format(float(x), ".12g"))
    if value == 0.0:
        value = 0.0  # drops the sign of -0.0
    return repr(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else format_number(cell) for cell in row])
    return buffer.getvalue()


def _gradient(betas: np.ndarray, values: np.ndarray) -> np.ndarray:
    if betas.shape[0] < 2:
        return np.zeros_like(values)
    return np.gradient(values, betas, edge_order=1)


def derivative_column(betas: np.ndarray, values: np.ndarray, beta_c: Optional[float] = None) -> np.ndarray:
    """
    Centered differences, one-sided at the grid ends and at the two grid
    points on either side of beta_c, so no difference straddles the transition.
    """
    betas = np.asarray(betas, dtype=float)
    values = np.asarray(values, dtype=float)
    if beta_c is None or not betas[0] < beta_c < betas[-1]:
        return _gradient(betas, values)
    split = int(np.searchsorted(betas, beta_c, side="right"))
    left, right = slice(0, split), slice(split, None)
    out = np.empty_like(values)
    out[left] = _gradient(betas[left], values[left])
    out[right] = _gradient(betas[right], values[right])
    # a side holding a single grid point has no difference of its own
    crossing = (values[split] - values[split - 1]) / (betas[split] - betas[split - 1])
    if split == 1:
        out[0] = crossing
    if split == betas.shape[0] - 1:
        out[-1] = crossing
    return out


def sweep_csv(series: QuantifierSeries, beta_c: Optional[float] = None) -> str:
    kinds = list(series.values)
    header = ["beta"] + [k.value for k in kinds] + [f"d{k.value}_dbeta" for k in kinds]
    columns: List[np.ndarray] = [series.betas]
    columns += [series.values[k] for k in kinds]
    columns += [derivative_column(series.betas, series.values[k], beta_c) for k in kinds]
    return render_csv(header, zip(*columns))


def ew_text(scan: BipartitionScan, show_witness: bool = True) -> str:
    lines = []
    for result in scan.results:
        lines.append(
            f"cut {result.cut.label()}: E_W = {result.value:.6f}  "
            f"gap = {result.duality_gap:.2e}  exact = {str(result.exact).lower()}"
        )
        if show_witness:
            lines.append("witness:")
            for row in result.witness.op:
                lines.append("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
    if len(scan.results) > 1:
        lines.append(f"minimum over cuts: {scan.minimum:.6f}")
    return "\n".join(lines) + "\n"


def geoscan_csv(report: WitnessPathReport) -> str:
    rows = [(p.t, p.value, p.duality_gap, p.witness_jump if not p.failed else None) for p in report.points]
    return render_csv(["t", "Ew", "gap", "witness_jump"], rows)


def flags_block(report: WitnessPathReport) -> str:
    """Comment lines listing candidate geometric transitions, kinks and solver gaps."""
    def join(values: Iterable[float]) -> str:
        return " ".join(format_number(v) for v in values) or "none"

    lines = [
        f"# witness_jump_flags (theta={format_number(report.theta)}): {join(report.flag_parameters)}",
        f"# ew_kinks: {join(report.kink_parameters)}",
    ]
    if report.gaps:
        lines.append(f"# solver_gaps: {join(report.points[i].t for i in report.gaps)}")
    return "\n".join(lines) + "\n"
