#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Functions for loading and validating JSON configurations.

This module provides functionality to load and validate the
computation and verification settings used by the command-line tool.
"""

import os
import json
import logging
from typing import Dict, Any, Optional

# Logger setup
logger = logging.getLogger(__name__)

CONFIG_FILES = {
    "computation": "computation.json",
    "verification": "verification.json",
}

TARGETS = ("ZZ", "QQ", "GF")


def default_config_dir() -> str:
    return os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "config")


def load_config(file_path: str) -> Optional[Dict[str, Any]]:
    """
    Load a JSON configuration file.

    Args:
        file_path: Path to the JSON file

    Returns:
        Dictionary containing the configuration or None if error
    """
    try:
        if not os.path.exists(file_path):
            logger.warning(f"Configuration file not found: {file_path}")
            return None

        with open(file_path, 'r', encoding='utf-8') as f:
            config = json.load(f)

        logger.debug(f"Loaded configuration from {file_path}")
        return config
    except json.JSONDecodeError as e:
        logger.error(f"Error parsing JSON file {file_path}: {str(e)}")
        return None
    except Exception as e:
        logger.error(f"Error loading configuration file {file_path}: {str(e)}")
        return None


def load_all_configs(config_dir: Optional[str] = None) -> Dict[str, Any]:
    """
    Load all configuration files, recreating missing or invalid ones
    from the defaults.

    Args:
        config_dir: Directory holding the JSON files (default: <project>/config)

    Returns:
        Dictionary mapping configuration type to its content
    """
    config_dir = config_dir or default_config_dir()
    os.makedirs(config_dir, exist_ok=True)

    configs = {}
    for config_type, file_name in CONFIG_FILES.items():
        file_path = os.path.join(config_dir, file_name)
        config = load_config(file_path)

        if config is None:
            config = create_default_config(config_type)
            save_config(file_path, config)
        elif not validate_config(config, config_type):
            logger.warning(f"Invalid {config_type} configuration in {file_path}, using defaults")
            config = create_default_config(config_type)

        configs[config_type] = config

    logger.debug(f"Loaded {len(configs)} configuration files")
    return configs


def create_default_config(config_type: str) -> Dict[str, Any]:
    """
    Create a default configuration.

    Args:
        config_type: "computation" or "verification"

    Returns:
        Dictionary containing the default configuration
    """
    if config_type == "computation":
        return {
            "graded_cutoff": 20,
            "default_point": [2, 2],
            "leibniz_rule": "right",
            "weight_rule_predict": "distinct",
            "weight_rule_verify": "block",
            "jobs": 1,
            "identity_grid_margin": 2,
        }
    elif config_type == "verification":
        return {
            "n_max": 8,
            "specializations": [
                {"target": "ZZ", "point": [2, 2]},
                {"target": "GF", "p": 2, "point": [2, 2]},
                {"target": "GF", "p": 3, "point": [2, 2]},
                {"target": "GF", "p": 5, "point": [2, 2]},
                {"target": "QQ", "point": [2, 2]},
                {"target": "ZZ", "point": [3, 3]},
            ],
            "char0_n_max": 8,
            "pascal_rows": 7,
            "table_rows": 12,
        }
    else:
        logger.warning(f"Unknown configuration type: {config_type}")
        return {}


def save_config(file_path: str, config: Dict[str, Any]) -> bool:
    """
    Save a configuration to a JSON file.

    Args:
        file_path: Path to save the JSON file
        config: Dictionary containing the configuration

    Returns:
        True if successful, False otherwise
    """
    try:
        os.makedirs(os.path.dirname(file_path), exist_ok=True)

        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(config, f, indent=4, ensure_ascii=False)

        logger.debug(f"Saved configuration to {file_path}")
        return True
    except Exception as e:
        logger.error(f"Error saving configuration to {file_path}: {str(e)}")
        return False


def _valid_specialization(entry: Any) -> bool:
    if not isinstance(entry, dict) or entry.get("target") not in TARGETS:
        return False
    point = entry.get("point", [2, 2])
    if not isinstance(point, list) or len(point) != 2 or not all(isinstance(v, int) for v in point):
        return False
    return entry["target"] != "GF" or isinstance(entry.get("p"), int)


def validate_config(config: Dict[str, Any], config_type: str) -> bool:
    """
    Validate a configuration.

    Args:
        config: Dictionary containing the configuration
        config_type: Type of configuration to validate

    Returns:
        True if valid, False otherwise
    """
    if not isinstance(config, dict):
        return False
    if config_type == "computation":
        defaults = create_default_config("computation")
        if any(key not in config for key in defaults):
            return False
        point = config["default_point"]
        return (isinstance(point, list) and len(point) == 2
                and config["leibniz_rule"] in ("right", "left")
                and config["weight_rule_predict"] in ("distinct", "block")
                and config["weight_rule_verify"] in ("distinct", "block")
                and isinstance(config["jobs"], int) and config["jobs"] >= 1
                and isinstance(config["graded_cutoff"], int)
                and isinstance(config["identity_grid_margin"], int) and config["identity_grid_margin"] >= 0)
    elif config_type == "verification":
        if not isinstance(config.get("n_max"), int) or not isinstance(config.get("specializations"), list):
            return False
        return all(_valid_specialization(entry) for entry in config["specializations"])
    else:
        logger.warning(f"Unknown configuration type: {config_type}")
        return False
