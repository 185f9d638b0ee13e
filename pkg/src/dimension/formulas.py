"""
Dimension Formulas Module
Row profile, closed-form Hausdorff dimension, dimension of Bernoulli
measures, and the closed-form optimal weights
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.carpet.carpet_spec import CarpetSpec, worked_example_spec
from src.dimension.entropy import conditional_entropy, shannon_entropy
from src.dimension.weights import Weights
from src.utils.errors import WeightsError
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RowProfile:
    """Row counts and exponents of a carpet; signatures play no part"""

    n: int
    m: int
    t: tuple[int, ...]
    digit_rows: tuple[int, ...]

    @property
    def r(self) -> int:
        return sum(1 for count in self.t if count > 0)

    @property
    def N(self) -> int:
        return sum(self.t)

    @property
    def beta(self) -> float:
        return math.log(self.m) / math.log(self.n)

    @property
    def lambda1(self) -> float:
        return -math.log(self.m)

    @property
    def lambda2(self) -> float:
        return -math.log(self.n)

    def nonempty_counts(self) -> np.ndarray:
        counts = np.asarray(self.t, dtype=np.float64)
        return counts[counts > 0]

    def power_sum(self) -> float:
        """S = sum over non-empty rows of t_j^beta"""
        return float(np.sum(np.power(self.nonempty_counts(), self.beta)))


@dataclass(frozen=True)
class DimensionReport:
    """Everything derived in closed form from a row profile"""

    hausdorff: float
    box_closed_form: float
    S: float
    beta: float
    t: tuple[int, ...]
    optimal: Weights
    entropy_p: float
    entropy_q: float
    lagrange_multiplier: float

    @property
    def box_equals_hausdorff(self) -> bool:
        return abs(self.box_closed_form - self.hausdorff) <= 1e-12

    def as_dict(self):
        return {
            'hausdorff_dimension': self.hausdorff,
            'box_dimension_closed_form': self.box_closed_form,
            'box_equals_hausdorff': self.box_equals_hausdorff,
            'S': self.S,
            'beta': self.beta,
            't': list(self.t),
            'optimal_q': [float(v) for v in self.optimal.q],
            'optimal_p': self.optimal.as_list(),
            'entropy_p': self.entropy_p,
            'entropy_q': self.entropy_q,
            'lagrange_multiplier': self.lagrange_multiplier,
        }


def row_profile(spec: CarpetSpec) -> RowProfile:
    """
    Count the digits in each row

    Args:
        spec (CarpetSpec): Validated spec

    Returns:
        RowProfile: t_j per row plus the digit-to-row map
    """
    rows = tuple(d.j for d in spec.digits)
    counts = np.bincount(np.asarray(rows, dtype=np.int64), minlength=spec.m)
    return RowProfile(n=spec.n, m=spec.m, t=tuple(int(c) for c in counts), digit_rows=rows)


def hausdorff_dimension(profile: RowProfile) -> float:
    """(1/log m) * log(sum_j t_j^beta), empty rows excluded"""
    return math.log(profile.power_sum()) / math.log(profile.m)


def box_dimension_closed_form(profile: RowProfile) -> float:
    """log r / log m + log(N / r) / log n, the classical grid-carpet box dimension"""
    return math.log(profile.r) / math.log(profile.m) + math.log(profile.N / profile.r) / math.log(profile.n)


def _check_compatible(profile: RowProfile, w: Weights):
    if tuple(w.digit_rows) != tuple(profile.digit_rows):
        raise WeightsError(
            f"weights are for {len(w.digit_rows)} digits with rows {list(w.digit_rows)}, "
            f"profile has rows {list(profile.digit_rows)}"
        )


def ly_dimension(profile: RowProfile, w: Weights) -> float:
    """
    Dimension of the Bernoulli measure with weights w

    Returns:
        float: H(q)/log m + (H(p) - H(q))/log n
    """
    _check_compatible(profile, w)
    h_p = shannon_entropy(w.p)
    h_q = shannon_entropy(w.q)
    return h_q / math.log(profile.m) + (h_p - h_q) / math.log(profile.n)


def conditional_form_dimension(profile: RowProfile, w: Weights) -> float:
    """Same value as ly_dimension, via (1/log m)(H(q) + beta * H(p|q))"""
    _check_compatible(profile, w)
    h_q = shannon_entropy(w.q)
    h_cond = conditional_entropy(w.p, w.digit_rows, w.q)
    return (h_q + profile.beta * h_cond) / math.log(profile.m)


def optimal_weights(profile: RowProfile) -> Weights:
    """
    Closed-form maximizer of ly_dimension

    q_j = t_j^beta / S on non-empty rows, p_(i,j) = q_j / t_j.
    """
    counts = np.asarray(profile.t, dtype=np.float64)
    # 0^beta = 0 for beta > 0, so empty rows get q_j = 0
    powers = np.power(counts, profile.beta)
    q = powers / np.sum(powers)
    rows = np.asarray(profile.digit_rows, dtype=np.int64)
    p = q[rows] / counts[rows]
    # Renormalize to clear rounding drift
    p = p / np.sum(p)
    return Weights.from_rows(p, profile.digit_rows, profile.m)


def lagrange_multiplier(profile: RowProfile) -> float:
    """Multiplier of the row-weight optimization, 1 - log S"""
    return 1.0 - math.log(profile.power_sum())


def dimension_report(profile: RowProfile) -> DimensionReport:
    """
    Collect the closed-form quantities of a profile

    Args:
        profile (RowProfile): Row profile of the carpet

    Returns:
        DimensionReport: Hausdorff value, S, optimal weights and their entropies
    """
    optimal = optimal_weights(profile)
    report = DimensionReport(
        hausdorff=hausdorff_dimension(profile),
        box_closed_form=box_dimension_closed_form(profile),
        S=profile.power_sum(),
        beta=profile.beta,
        t=profile.t,
        optimal=optimal,
        entropy_p=shannon_entropy(optimal.p),
        entropy_q=shannon_entropy(optimal.q),
        lagrange_multiplier=lagrange_multiplier(profile),
    )
    if not report.box_equals_hausdorff:
        logger.debug(
            f"Row counts {list(profile.t)} are not uniform: box dimension {report.box_closed_form:.6f} "
            f"exceeds Hausdorff dimension {report.hausdorff:.6f}"
        )
    return report


def main():
    """Print the closed-form quantities of the worked example"""
    profile = row_profile(worked_example_spec())
    report = dimension_report(profile)

    print("\n=== Worked example (n=4, m=3) ===")
    for key, value in report.as_dict().items():
        print(f"{key}: {value}")


if __name__ == "__main__":
    main()
