# app/physics/criticality.py
"""
Entangled/disentangled transition of two-qubit Gibbs states.

The PPT function f(beta) = min eigenvalue of rho(beta)^{T_A} is positive on
separable states and negative on entangled ones, so its root is the critical
inverse temperature. Orders are read off from Richardson one-sided
derivatives of each quantifier taken on both sides of the root.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from app.core.config import settings
from app.core.errors import NoTransitionError
from app.models.criticality import (
    ChainRuleCheck,
    DerivativeEstimate,
    DerivativeSide,
    QuantifierSeries,
    QuantifierTransition,
    SweepSpec,
    TransitionOrder,
    TransitionReport,
)
from app.models.quantifier import QuantifierKind
from app.models.quantum import DensityMatrix, XYZCouplings
from app.physics import quantifiers
from app.physics.derivatives import one_sided_derivative
from app.physics.quantum import build_xyz, thermal_family

logger = logging.getLogger(__name__)

MAX_ORDER = 2
_LN2 = math.log(2.0)


def thermal_states(c: XYZCouplings) -> Callable[[float], DensityMatrix]:
    return thermal_family(build_xyz(c), (2, 2))


def quantifier_curve(c: XYZCouplings, kind: QuantifierKind) -> Callable[[float], float]:
    """beta -> value of one quantifier on the Gibbs state."""
    state_at = thermal_states(c)
    kind = QuantifierKind(kind)
    return lambda beta: quantifiers.evaluate(state_at(beta), [kind])[kind]


def sweep(c: XYZCouplings, spec: SweepSpec, jobs: int = 1) -> QuantifierSeries:
    """Evaluates every requested quantifier on the beta grid; order is preserved for any `jobs`."""
    state_at = thermal_states(c)
    betas = spec.grid()

    def point(beta: float) -> Dict[QuantifierKind, float]:
        return quantifiers.evaluate(state_at(beta), spec.kinds)

    logger.debug(f"Sweeping {c.label()} over {spec.points} points with {jobs} worker(s)")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(point, betas))
    else:
        rows = [point(beta) for beta in betas]

    values = {kind: np.array([row[kind] for row in rows]) for kind in spec.kinds}
    return QuantifierSeries(couplings=c, betas=betas, values=values)


def ppt_function(c: XYZCouplings) -> Callable[[float], float]:
    state_at = thermal_states(c)
    return lambda beta: quantifiers.ppt_min_eigenvalue(state_at(beta))


def _default_bracket(bracket: Sequence[float] | None) -> Tuple[float, float]:
    if bracket is None:
        return settings.BRACKET_LO, settings.BRACKET_HI
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 <= lo < hi:
        raise ValueError(f"Bracket must satisfy 0 <= lo < hi, got [{lo}, {hi}]")
    return lo, hi


def _bisect_sign_change(
    g: Callable[[float], float], lo: float, hi: float, xtol: float
) -> float:
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    root, info = bisect(g, lo, hi, xtol=xtol, maxiter=200, full_output=True)
    logger.debug(f"Bisection converged={info.converged} after {info.iterations} iterations: {root!r}")
    return float(root)


def find_critical_beta(
    c: XYZCouplings, bracket: Sequence[float] | None = None, xtol: float | None = None
) -> float:
    """
    Root of the PPT function inside the bracket. Raises NoTransitionError
    (phase 'separable' or 'entangled') when it keeps one sign throughout.
    """
    lo, hi = _default_bracket(bracket)
    xtol = settings.BISECTION_XTOL if xtol is None else xtol
    f = ppt_function(c)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > 0.0 and f_hi > 0.0:
        raise NoTransitionError("separable", (lo, hi))
    if f_lo < 0.0 and f_hi < 0.0:
        raise NoTransitionError("entangled", (lo, hi))
    beta_c = _bisect_sign_change(f, lo, hi, xtol)
    residual = abs(f(beta_c))
    if residual >= 1e-8:
        logger.warning(f"PPT function at beta_c={beta_c!r} is {residual:.2e}, above 1e-8")
    return beta_c


def concurrence_zero_beta(
    c: XYZCouplings, bracket: Sequence[float] | None = None, xtol: float | None = None
) -> float:
    """Zero of the unclamped concurrence; an independent route to beta_c."""
    lo, hi = _default_bracket(bracket)
    xtol = settings.BISECTION_XTOL if xtol is None else xtol
    state_at = thermal_states(c)
    margin = lambda beta: quantifiers.concurrence_margin(state_at(beta))
    m_lo, m_hi = margin(lo), margin(hi)
    if m_lo * m_hi > 0.0:
        raise NoTransitionError("entangled" if m_lo > 0.0 else "separable", (lo, hi))
    return _bisect_sign_change(margin, lo, hi, xtol)


def is_jump(left: DerivativeEstimate, right: DerivativeEstimate) -> bool:
    """|right - left| > max(floor, factor * (sum of error bars))."""
    threshold = max(settings.JUMP_FLOOR, settings.JUMP_FACTOR * (left.error + right.error))
    return abs(right.value - left.value) > threshold


def _transition_for(
    f: Callable[[float], float], kind: QuantifierKind, beta_c: float, h0: float | None
) -> QuantifierTransition:
    h0 = settings.DERIVATIVE_H0 if h0 is None else h0
    if beta_c > 0.0:
        # second differences reach beta_c - 2 h0 on the left
        h0 = min(h0, beta_c / 2.5)
    left = [one_sided_derivative(f, beta_c, DerivativeSide.LEFT, 0, h0)]
    right = [one_sided_derivative(f, beta_c, DerivativeSide.RIGHT, 0, h0)]
    order: TransitionOrder = "analytic"
    if is_jump(left[0], right[0]):
        order = 0
    # a jumping quantifier is differentiated from its one-sided limits
    f0_left = left[0].value if order == 0 else None
    f0_right = right[0].value if order == 0 else None
    for n in range(1, MAX_ORDER + 1):
        left.append(one_sided_derivative(f, beta_c, DerivativeSide.LEFT, n, h0, f0=f0_left))
        right.append(one_sided_derivative(f, beta_c, DerivativeSide.RIGHT, n, h0, f0=f0_right))
        if order == "analytic" and is_jump(left[n], right[n]):
            order = n
    logger.debug(f"{kind.value}: order {order}")
    return QuantifierTransition(kind=kind, order=order, left=left, right=right)


def classify_order(
    c: XYZCouplings,
    kind: QuantifierKind,
    beta_c: float | None = None,
    h0: float | None = None,
) -> TransitionOrder:
    """Smallest n in {0, 1, 2} whose one-sided n-th derivatives jump at beta_c, else 'analytic'."""
    if beta_c is None:
        beta_c = find_critical_beta(c)
    return _transition_for(quantifier_curve(c, kind), QuantifierKind(kind), beta_c, h0).order


def analyze_transition(
    c: XYZCouplings,
    kinds: Iterable[QuantifierKind] = tuple(QuantifierKind),
    bracket: Sequence[float] | None = None,
    h0: float | None = None,
    xtol: float | None = None,
) -> TransitionReport:
    lo, hi = _default_bracket(bracket)
    beta_c = find_critical_beta(c, (lo, hi), xtol)
    step = settings.DERIVATIVE_H0 if h0 is None else h0
    entangled_above = ppt_function(c)(beta_c + step) < 0.0
    transitions = [
        _transition_for(quantifier_curve(c, kind), QuantifierKind(kind), beta_c, h0)
        for kind in dict.fromkeys(QuantifierKind(k) for k in kinds)
    ]
    logger.info(f"{c.label()}: beta_c={beta_c:.10f}, orders={ {t.kind.value: t.order for t in transitions} }")
    return TransitionReport(
        couplings=c,
        bracket=(lo, hi),
        beta_c=beta_c,
        t_c=1.0 / beta_c if beta_c > 0 else math.inf,
        entangled_above=entangled_above,
        transitions=transitions,
    )


# --- Chain-rule checks ---

def ef_chain_prefactor(c: float) -> float:
    """
    dE_f/dC in nats: -(C / (2 sqrt(1-C^2))) ln((1 - sqrt(1-C^2)) / (1 + sqrt(1-C^2))).
    Written as -(C/s) ln(C/(1+s)) to avoid cancellation in 1 - s.
    """
    c = float(c)
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return math.inf
    s = math.sqrt(1.0 - c * c)
    return -(c / s) * math.log(c / (1.0 + s))


def prefactor_vanishes(points: Sequence[float] = (1e-3, 1e-6), bound: float = 2e-5) -> Tuple[List[float], bool]:
    """Prefactor values at decreasing C; True when they decay monotonically and end below `bound`."""
    values = [abs(ef_chain_prefactor(p)) for p in sorted(points, reverse=True)]
    monotone = all(a > b for a, b in zip(values, values[1:]))
    return values, monotone and values[-1] < bound


def _side_away_from_transition(c: XYZCouplings, beta: float, h0: float) -> Tuple[DerivativeSide, float]:
    """Picks the side and step so no sample crosses beta_c or beta = 0."""
    try:
        beta_c = find_critical_beta(c)
    except NoTransitionError:
        beta_c = None
    if beta_c is not None and math.isclose(beta, beta_c, rel_tol=0.0, abs_tol=1e-9):
        raise ValueError(f"beta={beta} sits on the transition; chain rules hold on either side only")
    if beta_c is None or beta > beta_c:
        return DerivativeSide.RIGHT, h0
    if beta - h0 > 0.0:
        return DerivativeSide.LEFT, h0
    return DerivativeSide.RIGHT, min(h0, (beta_c - beta) / 2.0)


def verify_chain_rule_en(c: XYZCouplings, beta: float, h0: float | None = None) -> ChainRuleCheck:
    """dE_N/dbeta against dN/dbeta / ((1 + N) ln 2)."""
    h0 = settings.DERIVATIVE_H0 if h0 is None else h0
    side, h0 = _side_away_from_transition(c, beta, h0)
    n_curve = quantifier_curve(c, QuantifierKind.NEGATIVITY)
    en_curve = quantifier_curve(c, QuantifierKind.LOG_NEGATIVITY)
    n = n_curve(beta)
    lhs = one_sided_derivative(en_curve, beta, side, 1, h0).value
    rhs = one_sided_derivative(n_curve, beta, side, 1, h0).value / ((1.0 + n) * _LN2)
    return ChainRuleCheck(beta=beta, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), side=side)


def verify_chain_rule_ef(c: XYZCouplings, beta: float, h0: float | None = None) -> ChainRuleCheck:
    """
    dE_f/dbeta against prefactor(C) / ln 2 * dC/dbeta, E_f in bits. Also
    records whether the prefactor vanishes as C -> 0+.
    """
    h0 = settings.DERIVATIVE_H0 if h0 is None else h0
    side, h0 = _side_away_from_transition(c, beta, h0)
    c_curve = quantifier_curve(c, QuantifierKind.CONCURRENCE)
    ef_curve = quantifier_curve(c, QuantifierKind.EOF)
    prefactor = ef_chain_prefactor(c_curve(beta))
    decay, vanishes = prefactor_vanishes()
    lhs = one_sided_derivative(ef_curve, beta, side, 1, h0).value
    rhs = prefactor / _LN2 * one_sided_derivative(c_curve, beta, side, 1, h0).value
    return ChainRuleCheck(
        beta=beta,
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        side=side,
        prefactor=prefactor,
        prefactor_decay=tuple(decay),
        prefactor_vanishes=vanishes,
    )
