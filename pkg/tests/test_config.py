from __future__ import annotations

import os
import unittest
from pathlib import Path
from unittest.mock import patch

from concom.config import ConcomConfig


class ConcomConfigTests(unittest.TestCase):
    def test_defaults(self) -> None:
        cfg = ConcomConfig()
        self.assertEqual(cfg.backend, "rational")
        self.assertEqual(cfg.trials, 100)
        self.assertEqual(cfg.lorentz_trials, 200)
        self.assertEqual(cfg.tolerance, 1e-12)
        self.assertEqual(cfg.workers, 0)
        self.assertIsNone(cfg.log_path)

    def test_resolved_workers(self) -> None:
        self.assertEqual(ConcomConfig(workers=3).resolved_workers, 3)
        with patch("concom.config.os.cpu_count", return_value=None):
            self.assertEqual(ConcomConfig().resolved_workers, 1)
        with patch("concom.config.os.cpu_count", return_value=6):
            self.assertEqual(ConcomConfig().resolved_workers, 6)

    def test_real_trials_follow_trials(self) -> None:
        self.assertEqual(ConcomConfig(trials=7).effective_real_trials, 7)
        self.assertEqual(ConcomConfig(trials=7, real_trials=2).effective_real_trials, 2)
        self.assertEqual(ConcomConfig(trials=7, real_trials=0).effective_real_trials, 0)

    def test_backend_aliases(self) -> None:
        self.assertEqual(ConcomConfig(backend="double").backend, "float")
        self.assertEqual(ConcomConfig(backend="EXACT").backend, "rational")
        with self.assertRaises(ValueError):
            ConcomConfig(backend="quad")

    def test_validation(self) -> None:
        for kwargs in (
            {"trials": -1},
            {"lorentz_trials": -1},
            {"real_trials": -1},
            {"tolerance": -1e-12},
            {"max_speed": 1.0},
            {"workers": -1},
        ):
            with self.assertRaises(ValueError, msg=str(kwargs)):
                ConcomConfig(**kwargs)

    def test_with_overrides_skips_none(self) -> None:
        cfg = ConcomConfig(trials=5, seed=3)
        updated = cfg.with_overrides(trials=None, seed=9, backend="float")
        self.assertEqual(updated.trials, 5)
        self.assertEqual(updated.seed, 9)
        self.assertEqual(updated.backend, "float")
        self.assertEqual(cfg.seed, 3)

    def test_with_overrides_validates(self) -> None:
        with self.assertRaises(ValueError):
            ConcomConfig().with_overrides(trials=-2)


class ConcomConfigEnvTests(unittest.TestCase):
    def test_empty_env_gives_defaults(self) -> None:
        with patch.dict(os.environ, {}, clear=True):
            cfg = ConcomConfig.from_env()
        self.assertEqual(cfg.backend, "rational")
        self.assertEqual(cfg.trials, 100)
        self.assertIsNone(cfg.real_trials)

    def test_env_values(self) -> None:
        env = {
            "CONCOM_BACKEND": " Float ",
            "CONCOM_SEED": "11",
            "CONCOM_TRIALS": "12",
            "CONCOM_TOLERANCE": "1e-10",
            "CONCOM_LORENTZ_TRIALS": "3",
            "CONCOM_REAL_TRIALS": "4",
            "CONCOM_WORKERS": "2",
            "CONCOM_LOG_PATH": "/tmp/concom-verify.jsonl",
        }
        with patch.dict(os.environ, env, clear=True):
            cfg = ConcomConfig.from_env()
        self.assertEqual(cfg.backend, "float")
        self.assertEqual(cfg.seed, 11)
        self.assertEqual(cfg.trials, 12)
        self.assertEqual(cfg.tolerance, 1e-10)
        self.assertEqual(cfg.lorentz_trials, 3)
        self.assertEqual(cfg.effective_real_trials, 4)
        self.assertEqual(cfg.workers, 2)
        self.assertEqual(cfg.log_path, Path("/tmp/concom-verify.jsonl"))

    def test_whitespace_only_treated_as_unset(self) -> None:
        with patch.dict(os.environ, {"CONCOM_TRIALS": "   ", "CONCOM_BACKEND": "  "}, clear=True):
            cfg = ConcomConfig.from_env()
        self.assertEqual(cfg.trials, 100)
        self.assertEqual(cfg.backend, "rational")

    def test_invalid_numbers(self) -> None:
        with patch.dict(os.environ, {"CONCOM_SEED": "x"}, clear=True):
            with self.assertRaises(ValueError):
                ConcomConfig.from_env()
        with patch.dict(os.environ, {"CONCOM_TOLERANCE": "tiny"}, clear=True):
            with self.assertRaises(ValueError):
                ConcomConfig.from_env()

    def test_unknown_backend(self) -> None:
        with patch.dict(os.environ, {"CONCOM_BACKEND": "quad"}, clear=True):
            with self.assertRaises(ValueError):
                ConcomConfig.from_env()


if __name__ == "__main__":
    unittest.main()
