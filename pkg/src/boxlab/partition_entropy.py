"""
Partition Entropy Module
Shannon entropy of the approximate-square partition under the projected
Bernoulli measure, per level, with key collisions merged by mass
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from pathlib import Path
import sys

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.enumeration import PrefixEnumerator
from src.carpet.carpet_spec import CarpetSpec
from src.dimension.weights import Weights
from src.utils.errors import CarpetLabError, WeightsError
from src.utils.logger import get_logger
from src.utils.series_quality import validate_series

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class EntropySeries:
    """H_l, the estimate H_l / (l log m), key and collision counts per level"""

    frame: pd.DataFrame
    mass_totals: tuple[float, ...] = field(default=())

    @property
    def levels(self) -> list[int]:
        return [int(v) for v in self.frame['l']]

    def row(self, level: int) -> pd.Series:
        match = self.frame.loc[self.frame['l'] == level]
        if match.empty:
            raise KeyError(f"level {level} not in series")
        return match.iloc[0]

    def to_csv(self, path_or_buf=None):
        return self.frame[['l', 'H', 'estimate', 'collisions']].to_csv(
            path_or_buf, index=False, float_format='%.17g'
        )


def partition_entropy(masses: pd.Series) -> float:
    """-sum mass log mass over keys with positive mass"""
    values = masses.to_numpy(dtype=np.float64)
    values = values[values > 0]
    return float(-np.sum(values * np.log(values)))


def partition_entropy_series(spec: CarpetSpec, w: Weights, l_min: int, l_max: int,
                             budget: int | None = None) -> EntropySeries:
    """
    Partition entropy per level

    The mass of a key is the sum of mu[w] = prod p_{w_i} over every word with
    that key; collisions count the extra symbolic classes (prefix of length k,
    row word of length l-k) merged into a shared key.

    Args:
        spec (CarpetSpec): The carpet
        w (Weights): Digit weights (boundary weights allowed)
        l_min (int): First level
        l_max (int): Last level
        budget (int | None): Words per level allowed (defaults to config)

    Returns:
        EntropySeries: Columns l, k, H, estimate, keys, class_keys, collisions
    """
    if tuple(w.digit_rows) != tuple(d.j for d in spec.digits):
        raise WeightsError(f"weights do not match the {len(spec.digits)} digits of the spec")

    logger.info("=" * 50)
    logger.info(f"PARTITION ENTROPY: levels {l_min}..{l_max}, {spec.describe()}")
    logger.info("=" * 50)

    try:
        aggregates = PrefixEnumerator(spec, l_min, l_max, weights=w, budget=budget).run()
    except CarpetLabError as e:
        logger.error(f"❌ Partition entropy failed: {str(e)}")
        raise

    log_m = math.log(spec.m)
    records = []
    totals = []
    for level in sorted(aggregates):
        aggregate = aggregates[level]
        entropy = partition_entropy(aggregate.masses)
        total = float(aggregate.masses.sum())
        totals.append(total)
        if abs(total - 1.0) > 1e-9:
            logger.warning(f"Level {level}: key masses sum to {total!r}")
        records.append({
            'l': level,
            'k': aggregate.truncation,
            'H': entropy,
            'estimate': entropy / (level * log_m),
            'keys': int((aggregate.masses > 0).sum()),
            'class_keys': aggregate.class_keys,
            'collisions': aggregate.class_keys - aggregate.key_count,
        })
        logger.info(f"  l={level}: H={entropy:.9f}, collisions={records[-1]['collisions']}")

    frame = pd.DataFrame.from_records(records)
    validate_series(frame, 'partition_entropy')
    return EntropySeries(frame=frame, mass_totals=tuple(totals))
