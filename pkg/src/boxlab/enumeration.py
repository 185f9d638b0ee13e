"""
Word Enumeration Module
Vectorized breadth-first enumeration of all digit words, partitioned by the
first digit. Each partition is aggregated on its own and the partial results
are merged in first-digit order, so the output is the same for any worker count.
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
from src.carpet.cylinders import max_depth
from src.utils.errors import BudgetExceededError, CarpetLabError, DepthOverflowError
from src.utils.logger import get_logger

logger = get_logger(__name__)

INT64_SAFE = 2 ** 62


def truncation_level(level: int, n: int, m: int) -> int:
    """k = floor(l * log m / log n), computed exactly as the largest k with n^k <= m^l"""
    k = 0
    target = m ** level
    while n ** (k + 1) <= target:
        k += 1
    return k


def check_budget(word_count: int, l_max: int, budget: int | None = None, l_min: int = 1):
    """
    Reject enumerations over the per-level word budget

    Raises:
        BudgetExceededError: Naming the first level over budget
    """
    budget = carpet_config.word_budget if budget is None else budget
    for level in range(l_min, l_max + 1):
        words = word_count ** level
        if words > budget:
            raise BudgetExceededError(level, words, budget)


def check_levels(spec: CarpetSpec, l_min: int, l_max: int):
    if l_min < 1 or l_max < l_min:
        raise CarpetLabError(f"need 1 <= l_min <= l_max, got l_min={l_min}, l_max={l_max}")
    depth = min(max_depth(spec.n), max_depth(spec.m))
    if l_max > depth:
        raise DepthOverflowError(f"level {l_max} exceeds the 128-bit index capacity (max depth {depth})")


def _index_dtype(spec: CarpetSpec, l_max: int):
    # Key codes combine x (< n^k <= m^l) and y (< m^l) into one integer
    limit = max(spec.n ** l_max, spec.m ** (2 * l_max))
    return np.int64 if limit < INT64_SAFE else object


@dataclass
class WordStates:
    """Per-word state arrays for every word of one level in one partition"""

    level: int
    x: np.ndarray
    y: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    digit_code: np.ndarray
    row_code: np.ndarray
    mass: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.x)


def root_states(spec: CarpetSpec, first: int, dtype, p=None) -> WordStates:
    """States of the single level-1 word (first,)"""
    d = spec.digits[first]
    return WordStates(
        level=1,
        x=np.array([d.i], dtype=dtype),
        y=np.array([d.j], dtype=dtype),
        sx=np.array([d.sx], dtype=np.int64),
        sy=np.array([d.sy], dtype=np.int64),
        digit_code=np.array([first], dtype=np.int64),
        row_code=np.array([d.j], dtype=dtype),
        mass=None if p is None else np.array([p[first]], dtype=np.float64),
    )


def extend_states(states: WordStates, spec: CarpetSpec, arrays, p=None) -> WordStates:
    """
    Extend every word by every digit (parent-major order)

    Per axis: A' = A*b + (c if sign == +1 else b-1-c), sign' = sign * s.
    """
    count = len(spec.digits)
    parents = len(states)
    n, m = spec.n, spec.m

    col = np.tile(arrays['i'], parents)
    row = np.tile(arrays['j'], parents)
    parent_sx = np.repeat(states.sx, count)
    parent_sy = np.repeat(states.sy, count)

    x = np.repeat(states.x, count) * n + np.where(parent_sx == 1, col, n - 1 - col)
    y = np.repeat(states.y, count) * m + np.where(parent_sy == 1, row, m - 1 - row)
    mass = None
    if p is not None:
        mass = np.repeat(states.mass, count) * np.tile(p, parents)

    return WordStates(
        level=states.level + 1,
        x=x,
        y=y,
        sx=parent_sx * np.tile(arrays['sx'], parents),
        sy=parent_sy * np.tile(arrays['sy'], parents),
        digit_code=np.repeat(states.digit_code, count) * count + np.tile(np.arange(count, dtype=np.int64), parents),
        row_code=np.repeat(states.row_code, count) * m + row,
        mass=mass,
    )


def key_codes(states: WordStates, spec: CarpetSpec):
    """
    Approximate-square keys of every word at the states' level

    Returns:
        tuple: (k, key code array) with key code = x_k * m^l + y_l
    """
    level = states.level
    k = truncation_level(level, spec.n, spec.m)
    x_k = states.x // spec.n ** (level - k)
    return k, x_k * spec.m ** level + states.y


def class_codes(states: WordStates, spec: CarpetSpec, k: int):
    """Symbolic class of each word: (first k digits, rows of the remaining l-k digits)"""
    tail = states.level - k
    count = len(spec.digits)
    prefix = (states.digit_code // count ** tail).astype(states.row_code.dtype)
    suffix_rows = states.row_code % spec.m ** tail
    return prefix * spec.m ** tail + suffix_rows


@dataclass
class LevelAggregate:
    """Merged enumeration result for one level

    class_keys counts distinct (symbolic class, key) pairs; it exceeds the key
    count by the number of classes merged into a shared key.
    """

    level: int
    truncation: int
    words: int
    keys: np.ndarray
    class_keys: int | None = None
    masses: pd.Series | None = None

    @property
    def key_count(self) -> int:
        return int(len(self.keys))


class PrefixEnumerator:
    """Enumerates all words of levels l_min..l_max, one partition per first digit"""

    def __init__(self, spec: CarpetSpec, l_min: int, l_max: int, weights=None, budget=None):
        check_levels(spec, l_min, l_max)
        check_budget(len(spec.digits), l_max, budget, l_min)
        self.spec = spec
        self.l_min = l_min
        self.l_max = l_max
        self.p = None if weights is None else np.asarray(weights.p, dtype=np.float64)
        self.dtype = _index_dtype(spec, l_max)
        self.arrays = spec.arrays()

    def _partition(self, first: int):
        results = {}
        states = root_states(self.spec, first, self.dtype, self.p)
        while True:
            if states.level >= self.l_min:
                results[states.level] = self._aggregate(states)
            if states.level == self.l_max:
                break
            states = extend_states(states, self.spec, self.arrays, self.p)
        return results

    def _aggregate(self, states: WordStates):
        k, keys = key_codes(states, self.spec)
        partial = {'k': k, 'words': len(states), 'keys': np.unique(keys)}
        if self.p is not None:
            partial['pairs'] = pd.DataFrame({
                'cls': class_codes(states, self.spec, k),
                'key': keys,
            }).drop_duplicates()
            partial['masses'] = pd.Series(states.mass).groupby(keys).sum()
        return partial

    def run(self) -> dict[int, LevelAggregate]:
        """
        Enumerate and merge

        Returns:
            dict[int, LevelAggregate]: One merged aggregate per level
        """
        count = len(self.spec.digits)
        workers = carpet_config.worker_count(count)
        logger.info(
            f"Enumerating levels {self.l_min}..{self.l_max} over {count} first-digit partitions "
            f"({workers} workers)"
        )
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(self._partition, range(count)))

        merged = {}
        for level in range(self.l_min, self.l_max + 1):
            parts = [partial[level] for partial in partials]
            aggregate = LevelAggregate(
                level=level,
                truncation=parts[0]['k'],
                words=sum(part['words'] for part in parts),
                keys=np.unique(np.concatenate([part['keys'] for part in parts])),
            )
            if self.p is not None:
                # Short words (k = 0) share keys across first digits
                pairs = pd.concat([part['pairs'] for part in parts], ignore_index=True)
                aggregate.class_keys = int(len(pairs.drop_duplicates()))
                aggregate.masses = pd.concat([part['masses'] for part in parts]).groupby(level=0).sum()
            merged[level] = aggregate
            logger.debug(f"Level {level}: k={aggregate.truncation}, {aggregate.words} words, "
                         f"{aggregate.key_count} keys")
        return merged


def cylinder_arrays(spec: CarpetSpec, level: int, budget=None) -> WordStates:
    """
    All level-`level` cylinders as index/orientation arrays (level 0 = unit square)

    Raises:
        BudgetExceededError: When |D|^level exceeds the budget
    """
    if level == 0:
        dtype = np.int64
        zero = np.zeros(1, dtype=dtype)
        one = np.ones(1, dtype=np.int64)
        return WordStates(level=0, x=zero, y=zero.copy(), sx=one, sy=one.copy(),
                          digit_code=zero.copy(), row_code=zero.copy())
    check_levels(spec, level, level)
    check_budget(len(spec.digits), level, budget, level)
    dtype = _index_dtype(spec, level)
    arrays = spec.arrays()
    parts = []
    for first in range(len(spec.digits)):
        states = root_states(spec, first, dtype)
        while states.level < level:
            states = extend_states(states, spec, arrays)
        parts.append(states)
    return WordStates(
        level=level,
        x=np.concatenate([s.x for s in parts]),
        y=np.concatenate([s.y for s in parts]),
        sx=np.concatenate([s.sx for s in parts]),
        sy=np.concatenate([s.sy for s in parts]),
        digit_code=np.concatenate([s.digit_code for s in parts]),
        row_code=np.concatenate([s.row_code for s in parts]),
    )
