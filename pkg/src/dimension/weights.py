"""
Bernoulli Weights Module
Probability vector p over digits and its row marginal q
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json
from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.utils.errors import WeightsError

NORMALIZATION_TOLERANCE = 1e-12


def row_marginal(p, digit_rows, m):
    """q_j = sum of p over the digits in row j"""
    return np.bincount(np.asarray(digit_rows, dtype=np.int64), weights=p, minlength=m)


@dataclass(frozen=True, eq=False)
class Weights:
    """Weights p over digits (spec order) with derived row marginal q"""

    p: np.ndarray
    q: np.ndarray
    digit_rows: tuple[int, ...] = field(repr=False)
    strict: bool = True

    @classmethod
    def from_rows(cls, p, digit_rows, m, strict=True) -> "Weights":
        """
        Validate p and derive q

        Args:
            p (array-like): One weight per digit
            digit_rows (Sequence[int]): Row index of each digit
            m (int): Number of grid rows
            strict (bool): Require p_d > 0 (boundary measures pass strict=False)

        Raises:
            WeightsError: On wrong length, negative/zero entries or bad normalization
        """
        p = np.array(p, dtype=np.float64).reshape(-1)
        digit_rows = tuple(int(j) for j in digit_rows)
        if p.size != len(digit_rows):
            raise WeightsError(f"expected {len(digit_rows)} weights, got {p.size}")
        if not np.all(np.isfinite(p)):
            raise WeightsError("weights must be finite")
        if strict and np.any(p <= 0):
            bad = int(np.flatnonzero(p <= 0)[0])
            raise WeightsError(f"weight #{bad} is {p[bad]!r}; weights must be strictly positive")
        if np.any(p < 0):
            bad = int(np.flatnonzero(p < 0)[0])
            raise WeightsError(f"weight #{bad} is negative ({p[bad]!r})")
        total = float(np.sum(p))
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise WeightsError(f"weights sum to {total!r}, not 1 within {NORMALIZATION_TOLERANCE}")
        p.setflags(write=False)
        q = row_marginal(p, digit_rows, m)
        q.setflags(write=False)
        return cls(p=p, q=q, digit_rows=digit_rows, strict=strict)

    @classmethod
    def for_spec(cls, spec, p, strict=True) -> "Weights":
        return cls.from_rows(p, [d.j for d in spec.digits], spec.m, strict=strict)

    @classmethod
    def uniform(cls, spec) -> "Weights":
        count = len(spec.digits)
        return cls.for_spec(spec, np.full(count, 1.0 / count))

    @classmethod
    def limit(cls, spec, p) -> "Weights":
        """Boundary measure: zero entries allowed (0 log 0 = 0 convention)"""
        return cls.for_spec(spec, p, strict=False)

    @classmethod
    def point_mass(cls, spec, index) -> "Weights":
        p = np.zeros(len(spec.digits))
        p[index] = 1.0
        return cls.limit(spec, p)

    @property
    def m(self) -> int:
        return self.q.size

    def as_list(self):
        return [float(v) for v in self.p]


def load_weights(path, spec) -> Weights:
    """
    Read a weights file: a JSON list, or a JSON object with key "p"

    Args:
        path (str | Path): Weights document
        spec (CarpetSpec): Spec giving the digit order

    Returns:
        Weights: Validated (strict) weights
    """
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            document = json.load(handle)
    except json.JSONDecodeError as exc:
        raise WeightsError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})")
    if isinstance(document, dict):
        if 'p' not in document:
            raise WeightsError(f"{path}: expected key 'p'")
        document = document['p']
    if not isinstance(document, list):
        raise WeightsError(f"{path}: expected a list of weights")
    return Weights.for_spec(spec, document)
