"""
Reflection Invariance Module
Re-draws the signatures of a fixed (i, j) set and compares the Hausdorff
dimension and exact box-count slopes across the draws
"""

from __future__ import annotations

from dataclasses import dataclass
import json
from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.exact_counts import exact_box_counts
from src.boxlab.regression import fit_dimension_slope
from src.carpet.carpet_spec import CarpetSpec, random_signatures
from src.dimension.formulas import hausdorff_dimension, row_profile
from src.utils.errors import CarpetLabError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_FIT_LEVELS = (4, 8)


@dataclass(frozen=True)
class InvarianceTrial:
    """One signature assignment and what it produced"""

    signatures: tuple[tuple[int, int], ...]
    hausdorff: float
    slope: float
    counts: tuple[int, ...]

    def as_dict(self):
        return {
            'signatures': [list(sig) for sig in self.signatures],
            'hausdorff': self.hausdorff,
            'slope': self.slope,
            'counts': list(self.counts),
        }


@dataclass(frozen=True)
class InvarianceReport:
    """Comparison of all trials on one (i, j) set"""

    base_spec: str
    trials: tuple[InvarianceTrial, ...]
    fit_levels: tuple[int, int]
    seed: int | None = None

    @property
    def dimensions_identical(self) -> bool:
        first = self.trials[0].hausdorff
        return all(trial.hausdorff == first for trial in self.trials)

    @property
    def max_slope_deviation(self) -> float:
        slopes = [trial.slope for trial in self.trials]
        return float(max(slopes) - min(slopes))

    @property
    def counts_differ(self) -> bool:
        first = self.trials[0].counts
        return any(trial.counts != first for trial in self.trials)

    def as_dict(self):
        return {
            'base_spec': self.base_spec,
            'seed': self.seed,
            'trials': len(self.trials),
            'fit_levels': list(self.fit_levels),
            'dimensions_identical': self.dimensions_identical,
            'max_slope_deviation': self.max_slope_deviation,
            'counts_differ': self.counts_differ,
            'per_trial': [trial.as_dict() for trial in self.trials],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + '\n'


def run_trial(spec: CarpetSpec, signatures, fit_levels=DEFAULT_FIT_LEVELS, budget=None) -> InvarianceTrial:
    """Hausdorff value, exact counts for levels 1..l_max and the fitted slope for one assignment"""
    l_lo, l_hi = fit_levels
    variant = spec.with_signatures(signatures)
    series = exact_box_counts(variant, 1, l_hi, budget=budget)
    fit = fit_dimension_slope(series, variant.m, l_lo, l_hi)
    return InvarianceTrial(
        signatures=tuple((d.sx, d.sy) for d in variant.digits),
        hausdorff=hausdorff_dimension(row_profile(variant)),
        slope=fit.slope,
        counts=tuple(series.counts),
    )


def invariance_report(spec: CarpetSpec, trials: int, seed: int = 0, assignments=None,
                      fit_levels=DEFAULT_FIT_LEVELS, budget=None) -> InvarianceReport:
    """
    Compare `trials` random signature assignments on the spec's (i, j) set

    Args:
        spec (CarpetSpec): Base carpet (its own signatures are ignored)
        trials (int): Number of assignments (>= 2)
        seed (int): Seed of the assignment generator
        assignments (list | None): Explicit assignments instead of random ones
        fit_levels (tuple[int, int]): Slope fit window
        budget (int | None): Words per level allowed (defaults to config)

    Returns:
        InvarianceReport: Per-trial results and their comparison
    """
    if assignments is None:
        if trials < 2:
            raise CarpetLabError(f"need at least 2 trials, got {trials}")
        rng = np.random.default_rng(seed)
        assignments = [random_signatures(len(spec.digits), rng) for _ in range(trials)]
    elif len(assignments) < 2:
        raise CarpetLabError(f"need at least 2 assignments, got {len(assignments)}")

    logger.info("=" * 50)
    logger.info(f"INVARIANCE EXPERIMENT: {len(assignments)} trials, {spec.describe()}")
    logger.info("=" * 50)

    results = []
    for number, signatures in enumerate(assignments, start=1):
        trial = run_trial(spec, signatures, fit_levels, budget)
        logger.info(f"Trial {number}: hausdorff={trial.hausdorff:.12f}, slope={trial.slope:.6f}")
        results.append(trial)

    report = InvarianceReport(
        base_spec=spec.describe(),
        trials=tuple(results),
        fit_levels=tuple(fit_levels),
        seed=seed,
    )
    if not report.dimensions_identical:
        logger.error("Hausdorff values differ across signature assignments")
    logger.info(f"✅ Max slope deviation: {report.max_slope_deviation:.6f}, "
                f"counts differ: {report.counts_differ}")
    return report
