# app/physics/derivatives.py
"""
One-sided finite differences with Richardson extrapolation.

Step sizes are h0 * 2^-k for k = 0..halvings. Forward/backward differences of
order 1 and 2 have error expansions in integer powers of h, so column j of the
tableau removes the h^j term. The reported error bar is the spread between the
last two diagonal extrapolants.
"""
import logging
import math
from typing import Callable, Dict

from app.core.config import settings
from app.core.errors import DerivativeError
from app.models.criticality import DerivativeEstimate, DerivativeSide

logger = logging.getLogger(__name__)


def one_sided_derivative(
    f: Callable[[float], float],
    beta0: float,
    side: DerivativeSide | str,
    order: int,
    h0: float | None = None,
    halvings: int | None = None,
    f0: float | None = None,
) -> DerivativeEstimate:
    """
    Estimates the `order`-th one-sided derivative of f at beta0.

    order 0 returns the one-sided limit of f itself. `f0` replaces f(beta0) as
    the base point, e.g. with a one-sided limit when f jumps at beta0.
    """
    side = DerivativeSide(side)
    h0 = settings.DERIVATIVE_H0 if h0 is None else float(h0)
    halvings = settings.DERIVATIVE_HALVINGS if halvings is None else int(halvings)
    if not h0 > 0.0:
        raise DerivativeError(f"Initial step must be positive, got {h0}")
    if order not in (0, 1, 2):
        raise DerivativeError(f"Derivative order must be 0, 1 or 2, got {order}")
    if halvings < 1:
        raise DerivativeError("At least one halving is needed for an error estimate")

    sign = 1.0 if side is DerivativeSide.RIGHT else -1.0
    cache: Dict[float, float] = {}

    def sample(offset: float) -> float:
        if offset not in cache:
            value = float(f(beta0 + sign * offset))
            if not math.isfinite(value):
                raise DerivativeError(f"f({beta0 + sign * offset!r}) is not finite")
            cache[offset] = value
        return cache[offset]

    if order > 0 and f0 is None:
        f0 = sample(0.0)

    tableau: list[list[float]] = []
    for k in range(halvings + 1):
        h = h0 / 2 ** k
        if order == 0:
            estimate = sample(h)
        elif order == 1:
            estimate = sign * (sample(h) - f0) / h
        else:
            estimate = (sample(2.0 * h) - 2.0 * sample(h) + f0) / (h * h)
        row = [estimate]
        for j in range(1, k + 1):
            factor = 2.0 ** j
            row.append((factor * row[j - 1] - tableau[k - 1][j - 1]) / (factor - 1.0))
        tableau.append(row)

    value = tableau[-1][-1]
    error = abs(value - tableau[-2][-2])
    return DerivativeEstimate(value=value, error=error, side=side, order=order)
