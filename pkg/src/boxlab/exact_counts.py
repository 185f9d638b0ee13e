"""
Exact Box Counting Module
Counts the approximate squares (width n^-k, height m^-l, k = floor(l*beta))
met by the level-l cylinders, by exact integer deduplication
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
import sys

import pandas as pd

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.enumeration import PrefixEnumerator, truncation_level
from src.carpet.carpet_spec import CarpetSpec, worked_example_spec
from src.carpet.cylinders import cylinder_of_word
from src.utils.errors import CarpetLabError
from src.utils.logger import get_logger
from src.utils.series_quality import validate_series

logger = get_logger(__name__)


@dataclass(frozen=True)
class ApproxSquareKey:
    """The region [x n^-k, (x+1) n^-k] x [y m^-l, (y+1) m^-l]"""

    level: int
    truncation: int
    x: int
    y: int


@dataclass(frozen=True, eq=False)
class CountSeries:
    """Box counts per level with their provenance"""

    frame: pd.DataFrame
    provenance: dict = field(default_factory=dict)

    @property
    def levels(self) -> list[int]:
        return [int(v) for v in self.frame['l']]

    @property
    def counts(self) -> list[int]:
        return [int(v) for v in self.frame['count']]

    def count_at(self, level: int) -> int:
        match = self.frame.loc[self.frame['l'] == level, 'count']
        if match.empty:
            raise KeyError(f"level {level} not in series")
        return int(match.iloc[0])

    def to_csv(self, path_or_buf=None):
        return self.frame[['l', 'side', 'count']].to_csv(path_or_buf, index=False, float_format='%.17g')


def count_frame(levels, counts, m) -> pd.DataFrame:
    return pd.DataFrame({
        'l': pd.Series(levels, dtype='int64'),
        'side': pd.Series([float(m) ** -level for level in levels], dtype='float64'),
        'count': pd.Series(counts, dtype='int64'),
    })


def approx_square_key(spec: CarpetSpec, word) -> ApproxSquareKey:
    """
    Approximate square containing the cylinder of a word of length l >= 1

    Args:
        spec (CarpetSpec): The carpet
        word (Sequence[Digit | int]): Word of length l

    Returns:
        ApproxSquareKey: x = level-k ancestor of the cylinder's x cell, y = its level-l row cell
    """
    level = len(word)
    if level < 1:
        raise CarpetLabError("approximate squares need a word of length >= 1")
    rect = cylinder_of_word(spec, word)
    k = truncation_level(level, spec.n, spec.m)
    return ApproxSquareKey(
        level=level,
        truncation=k,
        x=rect.x.index // spec.n ** (level - k),
        y=rect.y.index,
    )


def exact_box_counts(spec: CarpetSpec, l_min: int, l_max: int, budget: int | None = None) -> CountSeries:
    """
    Number of distinct approximate-square keys over all |D|^l words

    Args:
        spec (CarpetSpec): The carpet
        l_min (int): First level (>= 1)
        l_max (int): Last level
        budget (int | None): Words per level allowed (defaults to config)

    Returns:
        CountSeries: Exact counts N_l

    Raises:
        BudgetExceededError: Naming the first level over budget
    """
    logger.info("=" * 50)
    logger.info(f"EXACT BOX COUNTS: levels {l_min}..{l_max}, {spec.describe()}")
    logger.info("=" * 50)

    try:
        aggregates = PrefixEnumerator(spec, l_min, l_max, budget=budget).run()
    except CarpetLabError as e:
        logger.error(f"❌ Exact box counting failed: {str(e)}")
        raise

    levels = sorted(aggregates)
    counts = [aggregates[level].key_count for level in levels]
    frame = count_frame(levels, counts, spec.m)
    validate_series(frame, 'exact_counts', growth_bound=len(spec.digits))

    for level, count in zip(levels, counts):
        logger.info(f"  l={level}: k={aggregates[level].truncation}, N={count}")

    return CountSeries(frame=frame, provenance={'method': 'exact', 'digits': len(spec.digits)})


def main():
    """Print the exact counts of the worked example"""
    series = exact_box_counts(worked_example_spec(), 1, 6)
    print("\n=== Exact counts (worked example) ===")
    print(series.to_csv())


if __name__ == "__main__":
    main()
