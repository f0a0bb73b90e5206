from __future__ import annotations

import contextlib
import io
import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from conftest import _write_json
from concom.concomitants import ALL_TAGS, TPRIME
from concom.__main__ import (
    EXIT_BAD_SELECTION,
    EXIT_INTERNAL_ERROR,
    EXIT_NOT_ANTISYMMETRIC,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_PROPERTY_FAILURE,
    build_parser,
    main,
)


def _run(argv: list[str], env: dict[str, str] | None = None) -> tuple[int, str]:
    out = io.StringIO()
    err = io.StringIO()
    with patch.dict(os.environ, env or {}, clear=True):
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                main(argv)
            except SystemExit as exc:
                return int(exc.code or 0), out.getvalue()
    return EXIT_OK, out.getvalue()


class ParserTests(unittest.TestCase):
    def test_subcommands(self) -> None:
        parser = build_parser()
        args = parser.parse_args(["compute", "f.json", "--exact", "--select", "Lplus"])
        self.assertEqual(args.command, "compute")
        self.assertTrue(args.exact)
        args = parser.parse_args(["verify", "--trials", "5", "--backend", "float"])
        self.assertEqual(args.trials, 5)
        args = parser.parse_args(["synth", "out.csv"])
        self.assertEqual(args.polarization, "circular-left")
        self.assertEqual(args.frequency, 8.0)

    def test_missing_subcommand(self) -> None:
        code, _ = _run([])
        self.assertEqual(code, EXIT_PARSE_ERROR)


class ComputeCommandTests(unittest.TestCase):
    def test_exact_to_stdout(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", {"E": ["1/2", 0, 0], "B": [0, 0, 0]})
            code, out = _run(["compute", str(src), "--exact", "--select", "Lplus,T2"])
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(doc["concomitants"]["Lplus"], "1/8")
        self.assertEqual(sorted(doc["concomitants"]), ["Lplus", "T2"])
        self.assertTrue(doc["exact"])

    def test_exact_complex_field_full_document(self) -> None:
        field = {"E": ["1/2", ["0", "1/3"], 0], "B": [0, 0, ["-1", "2"]]}
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", field)
            code, out = _run(["compute", str(src), "--exact"])
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(set(doc["concomitants"]), set(ALL_TAGS))
        tprime = doc["concomitants"][TPRIME]
        self.assertEqual([len(tprime), len(tprime[0]), len(tprime[0][0]), len(tprime[0][0][0])], [4, 4, 4, 4])

    def test_output_file_and_duality_signs(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", {"E": [1, 0, 0], "B": [0, 0, 0]})
            dest = Path(tmpdir) / "out.json"
            code, out = _run(["compute", str(src), "--output", str(dest), "--duality-signs"])
            doc = json.loads(dest.read_text(encoding="utf-8"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        self.assertEqual(doc["backend"], "rational")
        self.assertEqual(doc["concomitants"]["Lplus"], 0.5)
        self.assertEqual(doc["duality_signs"]["Lplus"], -1)
        self.assertEqual(doc["duality_signs"]["T2"], 1)

    def test_backend_from_environment(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", {"E": [1, 0, 0], "B": [0, 0, 0]})
            code, out = _run(["compute", str(src)], env={"CONCOM_BACKEND": "float"})
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["backend"], "float")

    def test_not_antisymmetric(self) -> None:
        f = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", {"F": f})
            code, _ = _run(["compute", str(src)])
        self.assertEqual(code, EXIT_NOT_ANTISYMMETRIC)

    def test_bad_selection(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            src = _write_json(Path(tmpdir) / "f.json", {"E": [1, 0, 0], "B": [0, 0, 0]})
            code, _ = _run(["compute", str(src), "--select", "energy"])
        self.assertEqual(code, EXIT_BAD_SELECTION)

    def test_parse_errors(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            code, _ = _run(["compute", str(root / "missing.json")])
            self.assertEqual(code, EXIT_PARSE_ERROR)
            (root / "bad.json").write_text("[", encoding="utf-8")
            code, _ = _run(["compute", str(root / "bad.json")])
            self.assertEqual(code, EXIT_PARSE_ERROR)
            _write_json(root / "short.json", {"E": [1, 0], "B": [0, 0, 0]})
            code, _ = _run(["compute", str(root / "short.json")])
            self.assertEqual(code, EXIT_PARSE_ERROR)


class VerifyCommandTests(unittest.TestCase):
    def test_structural_run_writes_report(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            report = Path(tmpdir) / "report.json"
            log = Path(tmpdir) / "verify.jsonl"
            code, _ = _run(
                [
                    "verify",
                    "--trials",
                    "0",
                    "--backend",
                    "float",
                    "--report",
                    str(report),
                    "--log",
                    str(log),
                    "--quiet",
                ]
            )
            payload = json.loads(report.read_text(encoding="utf-8"))
            self.assertTrue(log.exists())
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(payload["passed"])
        self.assertEqual(payload["completeness"]["union"], 36)

    def test_flipped_epsilon_is_a_property_failure(self) -> None:
        code, _ = _run(["verify", "--trials", "0", "--backend", "float", "--quiet", "--flip-epsilon"])
        self.assertEqual(code, EXIT_PROPERTY_FAILURE)

    def test_negative_trials(self) -> None:
        code, _ = _run(["verify", "--trials", "-1", "--quiet"])
        self.assertEqual(code, EXIT_PARSE_ERROR)

    def test_bad_environment_value(self) -> None:
        code, _ = _run(["verify", "--quiet"], env={"CONCOM_TRIALS": "many"})
        self.assertEqual(code, EXIT_PARSE_ERROR)

    def test_negative_workers(self) -> None:
        code, _ = _run(["verify", "--trials", "0", "--workers", "-1", "--quiet"])
        self.assertEqual(code, EXIT_PARSE_ERROR)


class SignalCommandTests(unittest.TestCase):
    def test_synth_then_signal(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            field = Path(tmpdir) / "field.csv"
            series = Path(tmpdir) / "series.csv"
            code, _ = _run(["synth", str(field), "--samples", "256", "--sample-rate", "256"])
            self.assertEqual(code, EXIT_OK)
            code, _ = _run(["signal", str(field), "--select", "T00,Q30", "--output", str(series)])
            self.assertEqual(code, EXIT_OK)
            lines = series.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "t,T00,Q30")
        self.assertEqual(len(lines), 257)
        t00, q30 = (float(x) for x in lines[10].split(",")[1:])
        self.assertAlmostEqual(t00, 2.0, places=9)
        self.assertAlmostEqual(q30, 2.0, places=9)

    def test_signal_to_stdout(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            field = Path(tmpdir) / "field.csv"
            _run(["synth", str(field), "--samples", "64", "--sample-rate", "64", "--polarization", "linear"])
            code, out = _run(["signal", str(field)])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("t,T00,T10,T20,T30,Q00,Q10,Q20,Q30,Lplus,Lminus\n"))

    def test_signal_bad_selection(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            field = Path(tmpdir) / "field.csv"
            _run(["synth", str(field), "--samples", "64", "--sample-rate", "64"])
            code, _ = _run(["signal", str(field), "--select", "T44"])
        self.assertEqual(code, EXIT_BAD_SELECTION)

    def test_signal_bad_input(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            field = Path(tmpdir) / "field.csv"
            field.write_text("t,Ex\n0,1\n", encoding="utf-8")
            code, _ = _run(["signal", str(field)])
        self.assertEqual(code, EXIT_PARSE_ERROR)

    def test_synth_rejects_nyquist(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            code, _ = _run(["synth", str(Path(tmpdir) / "f.csv"), "--frequency", "600"])
        self.assertEqual(code, EXIT_PARSE_ERROR)


class TableCommandTests(unittest.TestCase):
    def test_float_table(self) -> None:
        code, out = _run(["table", "--backend", "float", "--trials", "1"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("union rank 36", out)
        self.assertIn("real restriction 21", out)


class UnexpectedErrorTests(unittest.TestCase):
    def test_crash_has_its_own_exit_code(self) -> None:
        with patch("concom.__main__.cmd_compute", side_effect=RuntimeError("boom")):
            code, out = _run(["compute", "field.json"])
        self.assertEqual(code, EXIT_INTERNAL_ERROR)
        self.assertNotEqual(code, EXIT_PROPERTY_FAILURE)
        self.assertEqual(out, "")

    def test_crash_is_reported_on_stderr(self) -> None:
        err = io.StringIO()
        with patch("concom.__main__.cmd_table", side_effect=KeyError("lost")):
            with contextlib.redirect_stderr(err), self.assertRaises(SystemExit) as ctx:
                main(["table"])
        self.assertEqual(ctx.exception.code, EXIT_INTERNAL_ERROR)
        self.assertIn("KeyError", err.getvalue())


if __name__ == "__main__":
    unittest.main()
