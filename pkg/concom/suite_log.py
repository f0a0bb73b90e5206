"""JSONL trace of verification-suite runs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any


@dataclass
class SuiteLogger:
    """Appends one JSON record per line for every suite event.

    A run writes a ``header`` record, then one ``check`` record per property,
    then a ``summary``. Sub-runs (e.g. a second backend in a comparison) use
    :meth:`child` so their records stay distinguishable in the same file.
    """

    path: Path
    run_id: str = "root"
    _seq: int = field(default=0, init=False)

    def child(self, label: str) -> "SuiteLogger":
        return SuiteLogger(path=self.path, run_id=f"{self.run_id}/{label}")

    def write_header(
        self,
        *,
        backend: str,
        seed: int,
        trials: int,
        tolerance: float,
        convention: dict[str, Any],
        extra: dict[str, Any] | None = None,
    ) -> None:
        record: dict[str, Any] = {
            "type": "header",
            "run_id": self.run_id,
            "ts": datetime.now(timezone.utc).isoformat(),
            "backend": backend,
            "seed": seed,
            "trials": trials,
            "tolerance": tolerance,
            "convention": convention,
        }
        if extra:
            record.update(extra)
        self._append(record)

    def log_check(
        self,
        *,
        name: str,
        passed: bool,
        trials: int,
        worst_residual: float = 0.0,
        elapsed_sec: float = 0.0,
        detail: str = "",
    ) -> None:
        record: dict[str, Any] = {
            "type": "check",
            "run_id": self.run_id,
            "seq": self._seq,
            "name": name,
            "passed": passed,
            "trials": trials,
            "worst_residual": worst_residual,
            "elapsed_sec": round(elapsed_sec, 3),
        }
        if detail:
            record["detail"] = detail
        self._seq += 1
        self._append(record)

    def write_summary(
        self, *, passed: int, failed: int, completeness: dict[str, Any] | None = None
    ) -> None:
        record: dict[str, Any] = {
            "type": "summary",
            "run_id": self.run_id,
            "passed": passed,
            "failed": failed,
        }
        if completeness is not None:
            record["completeness"] = completeness
        self._append(record)

    def _append(self, record: dict[str, Any]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=True, default=str) + "\n")
