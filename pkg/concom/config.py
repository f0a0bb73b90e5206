from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

from .scalar import normalize_backend


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}") from None


@dataclass(slots=True)
class ConcomConfig:
    backend: str = "rational"
    seed: int = 0
    trials: int = 100
    tolerance: float = 1e-12
    lorentz_tolerance: float = 1e-9
    lorentz_trials: int = 200
    real_trials: int | None = None  # None follows `trials`.
    random_phases: int = 16
    max_speed: float = 0.9
    workers: int = 0  # 0 sizes the pool from the CPU count.
    log_path: Path | None = None

    def __post_init__(self) -> None:
        self.backend = normalize_backend(self.backend)
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if self.lorentz_trials < 0:
            raise ValueError(f"lorentz_trials must be >= 0, got {self.lorentz_trials}")
        if self.real_trials is not None and self.real_trials < 0:
            raise ValueError(f"real_trials must be >= 0, got {self.real_trials}")
        if self.tolerance < 0 or self.lorentz_tolerance < 0:
            raise ValueError("tolerances must be non-negative")
        if not 0.0 <= self.max_speed < 1.0:
            raise ValueError(f"max_speed must be in [0, 1), got {self.max_speed}")
        if self.workers < 0:
            raise ValueError(f"workers must be >= 0, got {self.workers}")

    @property
    def effective_real_trials(self) -> int:
        return self.trials if self.real_trials is None else self.real_trials

    @property
    def resolved_workers(self) -> int:
        return self.workers or os.cpu_count() or 1

    def with_overrides(self, **changes: object) -> "ConcomConfig":
        """Copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @classmethod
    def from_env(cls) -> "ConcomConfig":
        real_raw = os.getenv("CONCOM_REAL_TRIALS", "").strip()
        log_raw = os.getenv("CONCOM_LOG_PATH", "").strip()
        return cls(
            backend=os.getenv("CONCOM_BACKEND", "rational").strip().lower() or "rational",
            seed=_env_int("CONCOM_SEED", 0),
            trials=_env_int("CONCOM_TRIALS", 100),
            tolerance=_env_float("CONCOM_TOLERANCE", 1e-12),
            lorentz_tolerance=_env_float("CONCOM_LORENTZ_TOLERANCE", 1e-9),
            lorentz_trials=_env_int("CONCOM_LORENTZ_TRIALS", 200),
            real_trials=_env_int("CONCOM_REAL_TRIALS", 0) if real_raw else None,
            workers=_env_int("CONCOM_WORKERS", 0),
            log_path=Path(log_raw).expanduser() if log_raw else None,
        )
