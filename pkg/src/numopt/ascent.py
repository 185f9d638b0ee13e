"""
Numerical Ascent Module
Re-derives the optimal Bernoulli weights by exponentiated-gradient ascent of
H(q)/log m + (H(p) - H(q))/log n over the probability simplex
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from pathlib import Path
import sys

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.carpet.carpet_spec import worked_example_spec
from src.dimension.formulas import RowProfile, hausdorff_dimension, optimal_weights, row_profile
from src.dimension.weights import Weights, row_marginal
from src.utils.errors import AscentError
from src.utils.logger import get_logger

logger = get_logger(__name__)

MIN_STEP = 1e-20


@dataclass(frozen=True)
class AscentConfig:
    """Step size, stopping rule and backtracking factor of the ascent"""

    max_iterations: int = 10_000
    eta: float = 0.5
    tolerance: float = 1e-14
    backtracking: float = 0.5

    def __post_init__(self):
        if self.max_iterations < 1:
            raise AscentError(f"max_iterations must be positive, got {self.max_iterations}")
        if not self.eta > 0:
            raise AscentError(f"step size must be positive, got {self.eta}")
        if not self.tolerance >= np.finfo(np.float64).eps:
            raise AscentError(f"tolerance must be at least machine epsilon, got {self.tolerance}")
        if not 0 < self.backtracking < 1:
            raise AscentError(f"backtracking factor must lie in (0, 1), got {self.backtracking}")


@dataclass(frozen=True, eq=False)
class AscentTrace:
    """Accepted objective values, final weights and convergence status"""

    objectives: list[float]
    weights: Weights
    iterations: int
    converged: bool
    steps: list[float] = field(default_factory=list)
    # Weight vector behind each entry of objectives, starting point first
    history: list[np.ndarray] = field(default_factory=list)

    @property
    def final_objective(self) -> float:
        return self.objectives[-1]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'iter': np.arange(len(self.objectives), dtype=np.int64),
            'objective': np.asarray(self.objectives, dtype=np.float64),
        })


def _entropy_terms(p, rows, m):
    q = row_marginal(p, rows, m)
    positive_q = q[q > 0]
    h_p = float(-np.sum(p * np.log(p)))
    h_q = float(-np.sum(positive_q * np.log(positive_q)))
    return h_p, h_q, q


def dimension_objective(profile: RowProfile, p) -> float:
    """The ascent objective evaluated on a raw, strictly positive weight vector"""
    p = np.asarray(p, dtype=np.float64)
    h_p, h_q, _ = _entropy_terms(p, profile.digit_rows, profile.m)
    return h_q / math.log(profile.m) + (h_p - h_q) / math.log(profile.n)


def _gradient(profile: RowProfile, p):
    rows = np.asarray(profile.digit_rows, dtype=np.int64)
    q = row_marginal(p, rows, profile.m)
    inv_m = 1.0 / math.log(profile.m)
    inv_n = 1.0 / math.log(profile.n)
    return -(np.log(q[rows]) + 1.0) * (inv_m - inv_n) - (np.log(p) + 1.0) * inv_n


def objective_gradient(profile: RowProfile, w: Weights) -> np.ndarray:
    """
    Gradient of the objective in p, before projection onto the simplex

    Component d = (i, j): -(log q_j + 1)(1/log m - 1/log n) - (log p_d + 1)/log n.

    Raises:
        AscentError: When a weight is zero (log singularity)
    """
    p = np.asarray(w.p, dtype=np.float64)
    if np.any(p <= 0):
        raise AscentError("gradient undefined: weights must be strictly positive")
    return _gradient(profile, p)


def _multiplicative_step(p, g, eta):
    exponent = eta * g
    scaled = p * np.exp(exponent - np.max(exponent))
    return scaled / np.sum(scaled)


def maximize_dimension(profile: RowProfile, init: Weights, cfg: AscentConfig | None = None) -> AscentTrace:
    """
    Exponentiated-gradient ascent with backtracking

    p <- normalize(p * exp(eta * g)); eta is multiplied by the backtracking
    factor whenever the step would lower the objective. Stops once the
    objective changes by less than the tolerance, or after max_iterations.

    Args:
        profile (RowProfile): Row profile of the carpet
        init (Weights): Strictly positive starting weights
        cfg (AscentConfig | None): Ascent settings (defaults if omitted)

    Returns:
        AscentTrace: converged=False if max_iterations ran out
    """
    cfg = cfg or AscentConfig()
    p = np.array(init.p, dtype=np.float64)
    if p.size != len(profile.digit_rows) or tuple(init.digit_rows) != tuple(profile.digit_rows):
        raise AscentError("initial weights do not match the profile's digits")
    if np.any(p <= 0):
        raise AscentError("initial weights must be strictly positive")

    eta = cfg.eta
    current = dimension_objective(profile, p)
    objectives = [current]
    history = [p]
    steps = []
    converged = False
    iterations = 0

    logger.info(f"Starting ascent from objective {current:.15f} (eta={eta}, tol={cfg.tolerance})")

    while iterations < cfg.max_iterations:
        iterations += 1
        g = _gradient(profile, p)
        candidate = _multiplicative_step(p, g, eta)
        value = dimension_objective(profile, candidate)

        while value < current:
            if current - value < cfg.tolerance:
                # Rounding-level decrease at a stationary point
                value = current
                candidate = p
                break
            eta *= cfg.backtracking
            if eta < MIN_STEP:
                logger.warning("Step size underflow during backtracking")
                break
            candidate = _multiplicative_step(p, g, eta)
            value = dimension_objective(profile, candidate)

        if value < current:
            break

        assert np.all(candidate > 0), "multiplicative update left the simplex interior"
        change = value - current
        p, current = candidate, value
        objectives.append(current)
        history.append(p)
        steps.append(eta)

        if change < cfg.tolerance:
            converged = True
            break

    if converged:
        logger.info(f"✅ Ascent converged after {iterations} iterations, objective {current:.15f}")
    else:
        logger.warning(f"Ascent stopped after {iterations} iterations without meeting tol={cfg.tolerance}")

    p = p / np.sum(p)
    final = Weights.from_rows(p, profile.digit_rows, profile.m)
    return AscentTrace(objectives=objectives, weights=final, iterations=iterations,
                       converged=converged, steps=steps, history=history)


def distance_to_closed_form(profile: RowProfile, trace: AscentTrace) -> dict:
    """Max-norm weight distance and objective gap to the closed-form optimum"""
    closed = optimal_weights(profile)
    return {
        'max_weight_distance': float(np.max(np.abs(trace.weights.p - closed.p))),
        'objective_gap': hausdorff_dimension(profile) - trace.final_objective,
    }


def main():
    """Run the ascent on the worked example from uniform weights"""
    spec = worked_example_spec()
    profile = row_profile(spec)
    trace = maximize_dimension(profile, Weights.uniform(spec))

    print("\n=== Ascent on the worked example ===")
    print(f"iterations: {trace.iterations}")
    print(f"converged: {trace.converged}")
    print(f"objective: {trace.final_objective:.15f}")
    for key, value in distance_to_closed_form(profile, trace).items():
        print(f"{key}: {value:.3e}")


if __name__ == "__main__":
    main()
