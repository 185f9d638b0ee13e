"""
Sampled Box Counting Module
Occupied cells of the uniform m^-l square grid over chaos-game points
"""

from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.exact_counts import CountSeries, count_frame
from src.carpet.chaos_game import SampleSet
from src.utils.errors import CarpetLabError
from src.utils.logger import get_logger
from src.utils.series_quality import validate_series

logger = get_logger(__name__)


def grid_cells(coords: np.ndarray, cells: int) -> np.ndarray:
    """floor(coord * cells), with coordinate 1.0 clamped into the last cell"""
    index = np.floor(coords * cells).astype(np.int64)
    return np.clip(index, 0, cells - 1)


def occupied_cells(points: np.ndarray, level: int, m: int) -> np.ndarray:
    """Distinct (cx, cy) cells of side m^-l hit by the points, sorted"""
    cells = m ** level
    cx = grid_cells(points[:, 0], cells)
    cy = grid_cells(points[:, 1], cells)
    return np.unique(np.column_stack((cx, cy)), axis=0)


def sampled_box_counts(points: SampleSet, l_min: int, l_max: int, m: int) -> CountSeries:
    """
    Grid-occupancy counts of a sample set

    Args:
        points (SampleSet): Chaos-game sample (non-empty)
        l_min (int): First level
        l_max (int): Last level (m^l_max must fit a 64-bit cell index)
        m (int): Vertical subdivision of the carpet; grid side is m^-l

    Returns:
        CountSeries: Sampled counts with the sample's provenance
    """
    if len(points) == 0:
        raise CarpetLabError("cannot count boxes of an empty sample set")
    if l_min < 0 or l_max < l_min:
        raise CarpetLabError(f"need 0 <= l_min <= l_max, got l_min={l_min}, l_max={l_max}")
    if m ** l_max >= 2 ** 62:
        raise CarpetLabError(f"grid of side {m}^-{l_max} is finer than 64-bit cell indices allow")

    logger.info(f"Counting occupied cells of {len(points)} points, levels {l_min}..{l_max}")
    levels = list(range(l_min, l_max + 1))
    counts = [int(len(occupied_cells(points.points, level, m))) for level in levels]
    frame = count_frame(levels, counts, m)
    validate_series(frame, 'sampled_counts')

    return CountSeries(frame=frame, provenance={
        'method': 'sampled',
        'points': len(points),
        'depth': points.depth,
        'seed': points.seed,
    })
