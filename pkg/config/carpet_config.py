"""
Configuration Module
Reads carpetlab settings from the environment (optionally a .env file)
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

BASE_DIR = Path(__file__).parent.parent


def _int_from_env(name, default):
    """Read an integer environment variable, falling back to the default"""
    raw = os.getenv(name, '')
    if not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {raw!r}")


class CarpetLabConfig:
    """Configuration class for carpetlab runs"""

    def __init__(self):
        self.threads = _int_from_env('CARPETLAB_THREADS', os.cpu_count() or 1)
        self.word_budget = _int_from_env('CARPETLAB_WORD_BUDGET', 10_000_000)
        self.log_level = os.getenv('CARPETLAB_LOG_LEVEL', 'INFO').upper()
        self.log_dir = Path(os.getenv('CARPETLAB_LOG_DIR', str(BASE_DIR / 'logs')))
        self.log_to_file = os.getenv('CARPETLAB_LOG_TO_FILE', '1').strip() not in ('0', 'false', 'no')
        self.output_dir = Path(os.getenv('CARPETLAB_OUTPUT_DIR', str(BASE_DIR / 'data' / 'output')))

        # 0 or negative means available parallelism
        if self.threads < 1:
            self.threads = os.cpu_count() or 1

    def worker_count(self, tasks):
        """
        Number of workers to use for a given number of independent tasks

        Args:
            tasks (int): Number of partitions available

        Returns:
            int: Worker count, never more than the number of tasks
        """
        return max(1, min(self.threads, tasks))

    def resolve_output(self, path):
        """
        Resolve an output path; bare file names land in the output directory

        Args:
            path (str): Path given on the command line

        Returns:
            Path: Resolved output path (parent directory created)
        """
        target = Path(path)
        if target.parent == Path('.') and not target.is_absolute():
            target = self.output_dir / target
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def as_dict(self):
        """Return settings as a plain dictionary (used in run reports)"""
        return {
            'threads': self.threads,
            'word_budget': self.word_budget,
            'log_level': self.log_level,
        }


# Create a singleton instance
carpet_config = CarpetLabConfig()


if __name__ == "__main__":
    print("carpetlab configuration:")
    for key, value in carpet_config.as_dict().items():
        print(f"  {key}: {value}")
    print(f"  log_dir: {carpet_config.log_dir}")
    print(f"  output_dir: {carpet_config.output_dir}")
