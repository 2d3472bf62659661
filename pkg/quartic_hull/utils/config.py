"""Configuration utilities for Quartic-Hull."""

import json
import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

# Load environment variables from .env file
load_dotenv()

ENV_PREFIX = "QUARTIC_HULL_"

DEFAULTS: Dict[str, Any] = {
    "precision": 128,
    "max_cells": 64,
    "unit_radius": 60,
    "unit_radius_doublings": 3,
    "pivot_max_steps": 200,
    "log_level": "INFO",
}


class Settings(BaseModel):
    """Snapshot of the effective numeric settings."""

    precision: int = Field(default=128, ge=16)
    max_cells: int = Field(default=64, ge=1)
    unit_radius: int = Field(default=60, ge=1)
    unit_radius_doublings: int = Field(default=3, ge=0)
    pivot_max_steps: int = Field(default=200, ge=1)
    log_level: str = "INFO"


class Config:
    """Configuration manager for Quartic-Hull."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize the configuration manager.

        Args:
            config_path: Path to a configuration file
        """
        self.config: Dict[str, Any] = dict(DEFAULTS)

        # Load config from file if provided
        if config_path:
            self.load_from_file(config_path)

        # Environment variables win over the file
        self.load_from_env()

        logger.debug("Configuration loaded")

    def load_from_file(self, config_path: str) -> None:
        """Load configuration from a JSON or YAML file.

        Args:
            config_path: Path to the configuration file
        """
        if not os.path.exists(config_path):
            logger.warning(f"Configuration file {config_path} not found")
            return

        _, ext = os.path.splitext(config_path)
        try:
            with open(config_path, "r") as f:
                if ext.lower() == ".json":
                    file_config = json.load(f)
                elif ext.lower() in [".yml", ".yaml"]:
                    file_config = yaml.safe_load(f)
                else:
                    logger.warning(f"Unsupported configuration file format: {ext}")
                    return

                self.config.update(file_config or {})
                logger.info(f"Loaded configuration from {config_path}")
        except (OSError, ValueError, yaml.YAMLError) as e:
            logger.error(f"Error loading configuration from {config_path}: {str(e)}")

    def load_from_env(self) -> None:
        """Load configuration from environment variables with QUARTIC_HULL_ prefix."""
        for key, value in os.environ.items():
            if key.startswith(ENV_PREFIX):
                config_key = key[len(ENV_PREFIX):].lower()
                self.config[config_key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value.

        Args:
            key: The configuration key
            default: The default value to return if the key is not found

        Returns:
            The configuration value
        """
        return self.config.get(key, default)

    def get_int(self, key: str, default: Optional[int] = None) -> int:
        """Get a configuration value coerced to ``int``.

        Environment variables arrive as strings, so every numeric key goes
        through here.
        """
        value = self.config.get(key, default if default is not None else DEFAULTS.get(key))
        try:
            return int(value)
        except (TypeError, ValueError):
            logger.warning(f"Invalid integer for configuration {key}: {value!r}; using default")
            return int(DEFAULTS[key])

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value.

        Args:
            key: The configuration key
            value: The configuration value
        """
        self.config[key] = value
        logger.debug(f"Set configuration {key}")

    def settings(self) -> Settings:
        """Return the typed snapshot of the numeric settings."""
        return Settings(
            precision=self.get_int("precision"),
            max_cells=self.get_int("max_cells"),
            unit_radius=self.get_int("unit_radius"),
            unit_radius_doublings=self.get_int("unit_radius_doublings"),
            pivot_max_steps=self.get_int("pivot_max_steps"),
            log_level=str(self.get("log_level", "INFO")).upper(),
        )

    def __str__(self) -> str:
        """Get a string representation of the configuration.

        Returns:
            String representation
        """
        return str(self.config)


# Global configuration instance
config = Config()
