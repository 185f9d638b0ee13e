"""
Logging Utility Module
Provides consistent logging configuration across carpetlab
"""

import logging
import sys
from datetime import datetime
from pathlib import Path

import colorlog

sys.path.append(str(Path(__file__).parent.parent.parent))
from config.carpet_config import carpet_config


class CarpetLogger:
    """Logger with a colored stderr console handler and a dated file handler"""

    def __init__(self, name, log_level=None):
        level = log_level or getattr(logging, carpet_config.log_level, logging.INFO)
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)

        # Add handlers if not already added
        if self.logger.handlers:
            return

        # Console handler on stderr so stdout stays clean for CSV output
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(colorlog.ColoredFormatter(
            '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S',
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'bold_red',
            },
        ))
        self.logger.addHandler(console_handler)

        if carpet_config.log_to_file:
            log_dir = carpet_config.log_dir
            log_dir.mkdir(parents=True, exist_ok=True)
            log_file = log_dir / f"carpetlab_{datetime.now().strftime('%Y%m%d')}.log"

            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            ))
            self.logger.addHandler(file_handler)

        self.logger.propagate = False

    def get_logger(self):
        """Return the configured logger"""
        return self.logger


def get_logger(name):
    """
    Convenience function to get a logger

    Args:
        name (str): Name of the logger (usually __name__)

    Returns:
        logging.Logger: Configured logger instance
    """
    return CarpetLogger(name).get_logger()
