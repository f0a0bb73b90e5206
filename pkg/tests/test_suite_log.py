"""Tests for the JSONL verification trace."""

from __future__ import annotations

import math
import tempfile
import unittest
from pathlib import Path

from conftest import _read_records
from concom.suite_log import SuiteLogger

CONVENTION = {"signature": "+---", "epsilon_upper_0123": -1}


class SuiteLoggerUnitTests(unittest.TestCase):
    def test_write_header(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            logger = SuiteLogger(path=p)
            logger.write_header(
                backend="rational", seed=4, trials=10, tolerance=1e-12, convention=CONVENTION
            )
            records = _read_records(p)
            self.assertEqual(len(records), 1)
            r = records[0]
            self.assertEqual(r["type"], "header")
            self.assertEqual(r["run_id"], "root")
            self.assertEqual(r["backend"], "rational")
            self.assertEqual(r["seed"], 4)
            self.assertEqual(r["trials"], 10)
            self.assertEqual(r["convention"], CONVENTION)
            self.assertIn("ts", r)

    def test_header_extra_fields(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            SuiteLogger(path=p).write_header(
                backend="float",
                seed=0,
                trials=1,
                tolerance=1e-9,
                convention=CONVENTION,
                extra={"note": "flipped"},
            )
            self.assertEqual(_read_records(p)[0]["note"], "flipped")

    def test_check_sequence(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            logger = SuiteLogger(path=p)
            logger.log_check(name="a", passed=True, trials=3, worst_residual=1e-15, elapsed_sec=0.12345)
            logger.log_check(name="b", passed=False, trials=1, detail="T2 symmetric")
            records = _read_records(p)
            self.assertEqual([r["seq"] for r in records], [0, 1])
            self.assertEqual(records[0]["elapsed_sec"], 0.123)
            self.assertNotIn("detail", records[0])
            self.assertEqual(records[1]["detail"], "T2 symmetric")
            self.assertFalse(records[1]["passed"])

    def test_infinite_residual_is_serialized(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            SuiteLogger(path=p).log_check(name="crash", passed=False, trials=1, worst_residual=math.inf)
            self.assertTrue(math.isinf(_read_records(p)[0]["worst_residual"]))

    def test_summary(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            logger = SuiteLogger(path=p)
            logger.write_summary(passed=20, failed=1, completeness={"union": 36})
            logger.write_summary(passed=1, failed=0)
            records = _read_records(p)
            self.assertEqual(records[0]["completeness"], {"union": 36})
            self.assertNotIn("completeness", records[1])

    def test_child_run_ids(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "verify.jsonl"
            root = SuiteLogger(path=p)
            child = root.child("float")
            grandchild = child.child("flipped")
            self.assertEqual(child.run_id, "root/float")
            self.assertEqual(grandchild.run_id, "root/float/flipped")
            root.log_check(name="a", passed=True, trials=1)
            child.log_check(name="a", passed=True, trials=1)
            records = _read_records(p)
            self.assertEqual([r["run_id"] for r in records], ["root", "root/float"])
            self.assertEqual([r["seq"] for r in records], [0, 0])

    def test_creates_parent_directories(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "logs" / "deep" / "verify.jsonl"
            SuiteLogger(path=p).write_summary(passed=0, failed=0)
            self.assertTrue(p.exists())


if __name__ == "__main__":
    unittest.main()
