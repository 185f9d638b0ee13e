"""
carpetlab entry point
Runs one subcommand: dim, weights, lydim, optimize, boxcount, entropy, render, invariance, sample
"""

import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent))

from src.cli.commands import run_command


def main():
    """Main execution function"""
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
