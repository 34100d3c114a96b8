"""Small numeric helpers shared across modules."""

from __future__ import annotations

import math
from typing import Sequence


def round_half_away_from_zero(x: float) -> int:
    """Locale-free rounding: 0.5 -> 1, -0.5 -> -1."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def sample_variance(values: Sequence[float]) -> float:
    """Variance with divisor n-1; requires len >= 2."""
    m = mean(values)
    return sum((v - m) ** 2 for v in values) / (len(values) - 1)


def population_std(values: Sequence[float]) -> float:
    """Standard deviation with divisor n."""
    m = mean(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / len(values))
