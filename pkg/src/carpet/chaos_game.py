"""
Chaos Game Module
Samples points of the projected Bernoulli measure by composing the maps of
i.i.d. digit words of length T, applied to the start point (1/2, 1/2)
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
import sys

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent.parent))
from config.carpet_config import carpet_config
from src.carpet.carpet_spec import CarpetSpec
from src.dimension.weights import Weights
from src.utils.errors import CarpetLabError, DepthOverflowError, WeightsError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_DEPTH = 40
MAX_FLOAT_DEPTH = 128
START_POINT = (0.5, 0.5)
# Points per counter-based substream; changing it changes every seeded sample
SAMPLE_PARTITION = 65536


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Chaos-game points with the parameters that produced them"""

    points: np.ndarray
    weights: Weights
    depth: int
    seed: int

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'x': self.x, 'y': self.y})


def substream(seed: int, partition: int) -> np.random.Generator:
    """
    Counter-based generator for one partition of a sampling run

    Philox keyed by the seed; each partition starts 2^128 counter steps apart,
    so partitions never overlap and the union does not depend on worker count.
    """
    return np.random.Generator(np.random.Philox(key=seed, counter=partition << 128))


def _sample_partition(arrays, n, m, p, depth, seed, partition, size):
    rng = substream(seed, partition)
    draws = rng.choice(p.size, size=(size, depth), p=p)

    x = np.full(size, START_POINT[0])
    y = np.full(size, START_POINT[1])
    # Innermost map first: the word is w1 ... wT with w1 outermost
    for step in range(depth - 1, -1, -1):
        d = draws[:, step]
        x = (arrays['sx'][d] * x + arrays['dx'][d]) / n
        y = (arrays['sy'][d] * y + arrays['dy'][d]) / m
    return np.column_stack((x, y))


def sample_points(spec: CarpetSpec, w: Weights, count: int, depth: int = DEFAULT_DEPTH,
                  seed: int = 0) -> SampleSet:
    """
    Draw `count` chaos-game points

    Args:
        spec (CarpetSpec): The carpet
        w (Weights): Digit weights (boundary weights allowed)
        count (int): Number of points; 0 gives an empty set
        depth (int): Truncation depth T, 1 <= T <= 128
        seed (int): 64-bit seed

    Returns:
        SampleSet: Deterministic given the seed, whatever the worker count
    """
    if len(w.p) != len(spec.digits) or tuple(w.digit_rows) != tuple(d.j for d in spec.digits):
        raise WeightsError(f"weights do not match the {len(spec.digits)} digits of the spec")
    if count < 0:
        raise CarpetLabError(f"point count must be non-negative, got {count}")
    if depth < 1:
        raise CarpetLabError(f"depth T={depth} must be at least 1")
    if depth > MAX_FLOAT_DEPTH:
        raise DepthOverflowError(f"depth T={depth} exceeds the floating-point capacity of {MAX_FLOAT_DEPTH}")
    if not 0 <= seed < 2 ** 64:
        raise CarpetLabError(f"seed {seed} is not a 64-bit unsigned integer")

    sizes = [min(SAMPLE_PARTITION, count - start) for start in range(0, count, SAMPLE_PARTITION)]
    arrays = spec.arrays()
    p = np.asarray(w.p, dtype=np.float64)

    logger.info(f"Sampling {count} points (T={depth}, seed={seed}, {len(sizes)} partitions)")
    if not sizes:
        return SampleSet(points=np.empty((0, 2)), weights=w, depth=depth, seed=seed)

    workers = carpet_config.worker_count(len(sizes))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(
            lambda item: _sample_partition(arrays, spec.n, spec.m, p, depth, seed, item[0], item[1]),
            enumerate(sizes),
        ))

    points = np.concatenate(parts, axis=0)
    logger.info(f"✅ Sampled {len(points)} points")
    return SampleSet(points=points, weights=w, depth=depth, seed=seed)
