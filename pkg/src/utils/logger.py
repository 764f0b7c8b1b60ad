#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Logging functionality.

This module provides functions for setting up and configuring
the logging system of the command-line tool.
"""

import os
import sys
import logging
import datetime
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(log_level: int = logging.INFO, log_to_file: bool = True,
                 logs_dir: Optional[str] = None) -> logging.Logger:
    """
    Set up and configure the root logger.

    Console output goes to stderr so that stdout only carries the
    requested artifact.

    Args:
        log_level: Logging level (default: INFO)
        log_to_file: Also write a dated log file under logs/
        logs_dir: Directory for the log file (default: <project>/logs)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger()
    logger.setLevel(log_level)

    # Remove existing handlers to avoid duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_to_file:
        if logs_dir is None:
            logs_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "logs")
        os.makedirs(logs_dir, exist_ok=True)
        current_date = datetime.datetime.now().strftime("%Y-%m-%d")
        file_handler = logging.FileHandler(os.path.join(logs_dir, f"wakimoto_{current_date}.log"))
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.debug("Logger initialized")
    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the specified name.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return logging.getLogger(name)
