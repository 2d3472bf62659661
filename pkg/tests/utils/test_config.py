"""Unit tests for the configuration manager."""

import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

import yaml

from quartic_hull.utils.config import DEFAULTS, Config


class TestConfig(unittest.TestCase):
    """Test cases for the Config class."""

    def setUp(self):
        """Set up a temporary directory for configuration files."""
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up after tests."""
        shutil.rmtree(self.test_dir)

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            cfg = Config()
        settings = cfg.settings()
        self.assertEqual(settings.max_cells, DEFAULTS["max_cells"])
        self.assertEqual(settings.precision, 128)
        self.assertEqual(settings.log_level, "INFO")

    def test_environment_override(self):
        """QUARTIC_HULL_* variables arrive as strings and are coerced."""
        with patch.dict(os.environ, {"QUARTIC_HULL_MAX_CELLS": "12", "QUARTIC_HULL_LOG_LEVEL": "debug"}):
            cfg = Config()
        self.assertEqual(cfg.get_int("max_cells"), 12)
        self.assertEqual(cfg.settings().log_level, "DEBUG")

    def test_invalid_integer_falls_back(self):
        with patch.dict(os.environ, {"QUARTIC_HULL_UNIT_RADIUS": "wide"}):
            cfg = Config()
        self.assertEqual(cfg.get_int("unit_radius"), DEFAULTS["unit_radius"])

    def test_yaml_file(self):
        path = os.path.join(self.test_dir, "hull.yaml")
        with open(path, "w") as f:
            yaml.dump({"precision": 96, "max_cells": 20}, f)
        with patch.dict(os.environ, {}, clear=True):
            cfg = Config(path)
        self.assertEqual(cfg.settings().precision, 96)
        self.assertEqual(cfg.get_int("max_cells"), 20)

    def test_environment_wins_over_file(self):
        path = os.path.join(self.test_dir, "hull.json")
        with open(path, "w") as f:
            json.dump({"max_cells": 20}, f)
        with patch.dict(os.environ, {"QUARTIC_HULL_MAX_CELLS": "7"}):
            cfg = Config(path)
        self.assertEqual(cfg.get_int("max_cells"), 7)

    def test_yaml_file(self):
        path = os.path.join(self.test_dir, "saved.yaml")
        with open(path, "w") as f:
            f.write("pivot_max_steps: 50\n")
        with patch.dict(os.environ, {}, clear=True):
            reloaded = Config(path)
        self.assertEqual(reloaded.get_int("pivot_max_steps"), 50)

    def test_missing_and_unsupported_files(self):
        cfg = Config()
        cfg.load_from_file(os.path.join(self.test_dir, "missing.yaml"))
        path = os.path.join(self.test_dir, "hull.ini")
        with open(path, "w") as f:
            f.write("max_cells = 3\n")
        cfg.load_from_file(path)
        self.assertNotEqual(cfg.get("max_cells"), "3")


if __name__ == "__main__":
    unittest.main()
