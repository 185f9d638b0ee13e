"""
Slope Regression Module
Least-squares slope of log N_l against l * log m
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from pathlib import Path
import sys

import numpy as np
from scipy.stats import linregress

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.exact_counts import CountSeries
from src.utils.errors import FitError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_FIT_MIN_LEVEL = 4
MIN_FIT_LEVELS = 3


@dataclass(frozen=True)
class SlopeFit:
    """Dimension estimate from a log-log fit"""

    slope: float
    intercept: float
    stderr: float
    residuals: tuple[float, ...]
    levels: tuple[int, ...]

    def as_dict(self):
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'stderr': self.stderr,
            'levels': f"{self.levels[0]}..{self.levels[-1]}",
        }


def default_fit_levels(levels) -> list[int]:
    """Levels >= 4 when at least three exist, otherwise every level"""
    deep = [level for level in levels if level >= DEFAULT_FIT_MIN_LEVEL]
    return deep if len(deep) >= MIN_FIT_LEVELS else list(levels)


def fit_dimension_slope(series: CountSeries, m: int, l_min: int | None = None,
                        l_max: int | None = None) -> SlopeFit:
    """
    Fit log N_l = slope * (l log m) + intercept

    Args:
        series (CountSeries): Counts per level
        m (int): Vertical subdivision (grid side m^-l)
        l_min (int | None): First level of the fit window
        l_max (int | None): Last level of the fit window; with neither bound
            given the default window applies

    Raises:
        FitError: With fewer than three levels in the window
    """
    levels = series.levels
    if l_min is None and l_max is None:
        window = default_fit_levels(levels)
    else:
        lo = min(levels) if l_min is None else l_min
        hi = max(levels) if l_max is None else l_max
        window = [level for level in levels if lo <= level <= hi]

    if len(window) < MIN_FIT_LEVELS:
        raise FitError(f"slope fit needs at least {MIN_FIT_LEVELS} levels, got {len(window)}")

    counts = np.array([series.count_at(level) for level in window], dtype=np.float64)
    if np.any(counts < 1):
        raise FitError("counts must be at least 1 to take logarithms")

    x = np.array(window, dtype=np.float64) * math.log(m)
    y = np.log(counts)
    if np.all(y == y[0]):
        return SlopeFit(slope=0.0, intercept=float(y[0]), stderr=0.0,
                        residuals=tuple(0.0 for _ in window), levels=tuple(window))

    fit = linregress(x, y)
    residuals = y - (fit.slope * x + fit.intercept)
    logger.debug(f"Slope fit over levels {window}: {fit.slope:.6f} ± {fit.stderr:.6f}")
    return SlopeFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        stderr=float(fit.stderr),
        residuals=tuple(float(r) for r in residuals),
        levels=tuple(window),
    )
