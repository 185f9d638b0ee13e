"""
Series Quality Checker Module
Sanity checks on count and entropy series before they are reported
"""

from pathlib import Path
import sys

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.utils.logger import get_logger

logger = get_logger(__name__)


class SeriesQualityChecker:
    """Class for performing quality checks on a per-level series"""

    def __init__(self, dataframe, series_name):
        self.df = dataframe
        self.series_name = series_name
        self.issues = []

    def _issue(self, message, level='warning'):
        self.issues.append(message)
        getattr(logger, level)(f"[{self.series_name}] {message}")

    def check_level_count(self, expected_min=1):
        """Check the series has at least the expected number of levels"""
        level_count = len(self.df)
        if level_count < expected_min:
            self._issue(f"Level count ({level_count}) is below expected minimum ({expected_min})", 'error')
            return False
        logger.debug(f"[{self.series_name}] Level count: {level_count}")
        return True

    def check_null_values(self):
        """Check for null or non-finite values"""
        numeric = self.df.select_dtypes(include=[np.number])
        bad = (~np.isfinite(numeric.to_numpy(dtype=np.float64))).sum(axis=0)
        for col, count in zip(numeric.columns, bad):
            if count > 0:
                self._issue(f"Column '{col}' has {int(count)} null or non-finite values")
        return int(bad.sum()) if len(bad) else 0

    def check_duplicate_levels(self):
        """Check that no level appears twice"""
        duplicate_count = int(self.df['l'].duplicated().sum())
        if duplicate_count > 0:
            self._issue(f"Found {duplicate_count} duplicate levels")
        return duplicate_count

    def check_monotone_counts(self, growth_bound=None):
        """
        Check N_l <= N_(l+1) and, if given, N_(l+1) <= growth_bound * N_l

        Args:
            growth_bound (int | None): Digit count |D| for exact series
        """
        if 'count' not in self.df.columns or len(self.df) < 2:
            return True
        counts = self.df.sort_values('l')['count'].to_numpy()
        ok = True
        for before, after in zip(counts[:-1], counts[1:]):
            if after < before:
                self._issue(f"Count decreases from {before} to {after}")
                ok = False
            if growth_bound is not None and after > growth_bound * before:
                self._issue(f"Count grows from {before} to {after}, above {growth_bound}x")
                ok = False
        return ok

    def check_entropy_bounds(self):
        """Check 0 <= H_l <= log(#keys) for entropy series"""
        if 'H' not in self.df.columns or 'keys' not in self.df.columns:
            return True
        ok = True
        for _, row in self.df.iterrows():
            upper = float(np.log(row['keys'])) + 1e-9
            if row['H'] < -1e-12 or row['H'] > upper:
                self._issue(f"Level {int(row['l'])}: H={row['H']:.6f} outside [0, log #keys]")
                ok = False
        return ok

    def run_all_checks(self, expected_min=1, growth_bound=None):
        """Run all quality checks and return True if no issue was found"""
        logger.debug(f"Starting series quality checks for {self.series_name}")

        self.check_level_count(expected_min)
        self.check_null_values()
        self.check_duplicate_levels()
        self.check_monotone_counts(growth_bound)
        self.check_entropy_bounds()

        if not self.issues:
            logger.info(f"[{self.series_name}] ✅ All series checks passed")
            return True
        logger.warning(f"[{self.series_name}] ⚠️  Found {len(self.issues)} series issues")
        return False

    def get_summary(self):
        """Return a summary dictionary"""
        return {
            'series': self.series_name,
            'levels': len(self.df),
            'issues': list(self.issues),
            'passed': not self.issues,
        }


def validate_series(df: pd.DataFrame, series_name, expected_min=1, growth_bound=None):
    """
    Convenience function to validate a series

    Args:
        df (pd.DataFrame): Series with an 'l' column
        series_name (str): Name used in log lines
        expected_min (int): Minimum number of levels
        growth_bound (int | None): Digit count for the exact-count growth bound

    Returns:
        dict: Quality check summary
    """
    checker = SeriesQualityChecker(df, series_name)
    checker.run_all_checks(expected_min, growth_bound)
    return checker.get_summary()
