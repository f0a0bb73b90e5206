"""Shared test helpers for the concom test suite."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from concom.bivector import Bivector
from concom.config import ConcomConfig
from concom.scalar import FLOAT, RATIONAL, GaussianRational


def _gr(re: Any = 0, im: Any = 0) -> GaussianRational:
    """Shorthand for an exact complex scalar; strings like "1/2" are accepted."""
    return GaussianRational(re, im)


def _bv(e: tuple, b: tuple = (0, 0, 0), backend: str = RATIONAL) -> Bivector:
    return Bivector(tuple(e), tuple(b), backend)


def _circular_bivector(backend: str = RATIONAL) -> Bivector:
    """E = (1, -i, 0), B = z x E = (i, 1, 0): the analytic circular wave at t = 0."""
    if backend == FLOAT:
        return Bivector((1.0, -1j, 0.0), (1j, 1.0, 0.0), FLOAT)
    return Bivector((1, _gr(0, -1), 0), (_gr(0, 1), 1, 0), RATIONAL)


def _small_config(**overrides: Any) -> ConcomConfig:
    base = dict(trials=2, lorentz_trials=2, real_trials=2, random_phases=2)
    base.update(overrides)
    return ConcomConfig(**base)


def _write_json(path: Path, payload: Any) -> Path:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def _read_records(path: Path) -> list[dict]:
    lines = path.read_text(encoding="utf-8").strip().splitlines()
    return [json.loads(line) for line in lines]
