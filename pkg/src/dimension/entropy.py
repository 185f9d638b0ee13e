"""
Shannon entropy in nats with the 0 log 0 = 0 convention
"""

from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.utils.errors import WeightsError

NORMALIZATION_TOLERANCE = 1e-12


def shannon_entropy(v) -> float:
    """
    -sum v_i log v_i (natural log)

    Args:
        v (array-like): Probability vector

    Raises:
        WeightsError: On negative entries or a sum away from 1 by more than 1e-12
    """
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if np.any(v < 0):
        raise WeightsError(f"probability vector has a negative entry ({float(v.min())!r})")
    total = float(np.sum(v))
    if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
        raise WeightsError(f"probability vector sums to {total!r}, not 1")
    positive = v[v > 0]
    return float(-np.sum(positive * np.log(positive)))


def conditional_entropy(p, digit_rows, q) -> float:
    """
    H(X | Y) = sum_j q_j H(X | Y = j) for digit weights p grouped by row

    Args:
        p (array-like): Digit weights
        digit_rows (Sequence[int]): Row of each digit
        q (array-like): Row marginal of p
    """
    p = np.asarray(p, dtype=np.float64)
    rows = np.asarray(digit_rows, dtype=np.int64)
    q = np.asarray(q, dtype=np.float64)
    total = 0.0
    for j in np.flatnonzero(q > 0):
        within = p[rows == j] / q[j]
        positive = within[within > 0]
        total += float(q[j]) * float(-np.sum(positive * np.log(positive)))
    return total
