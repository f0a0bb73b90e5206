"""Real field time series -> analytic bivector series -> concomitant columns."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd
from scipy.signal import hilbert

from .bivector import Bivector
from .concomitants import D2IRR, LMINUS, LPLUS, Q2, T2, X2IRR, eb_components
from .documents import atomic_write_text
from .scalar import FLOAT

FIELD_COLUMNS = ("t", "Ex", "Ey", "Ez", "Bx", "By", "Bz")
COMPLEX_COLUMNS = ("t",) + tuple(
    f"{name}_{part}" for name in FIELD_COLUMNS[1:] for part in ("re", "im")
)
MIN_SAMPLES = 4
UNIFORM_RTOL = 1e-9

LINEAR = "linear"
CIRCULAR_LEFT = "circular-left"
CIRCULAR_RIGHT = "circular-right"
POLARIZATIONS = (LINEAR, CIRCULAR_LEFT, CIRCULAR_RIGHT)

# propagation axis -> (u, v) with u x v = k
_TRANSVERSE = {
    "x": (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])),
    "y": (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])),
    "z": (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])),
}


class SignalError(ValueError):
    pass


class SelectionError(SignalError):
    """Unknown or empty column selection."""


def _build_registry() -> dict[str, tuple[str, tuple[int, int] | None]]:
    registry: dict[str, tuple[str, tuple[int, int] | None]] = {}
    for prefix, tag in (("T", T2), ("Q", Q2)):
        for a in range(4):
            for b in range(4):
                registry[f"{prefix}{a}{b}"] = (tag, (a, b))
    for prefix, tag in (("D", D2IRR), ("X", X2IRR)):
        for a in range(4):
            for b in range(4):
                if a != b:
                    registry[f"{prefix}{a}{b}"] = (tag, (a, b))
    registry["Lplus"] = (LPLUS, None)
    registry["Lminus"] = (LMINUS, None)
    return registry


# Column name -> (concomitant tag, contravariant index). T and Q are the
# symmetric stress tensors, D and X the antisymmetric irreducible pair.
COLUMN_REGISTRY = _build_registry()
DEFAULT_SELECTION = ("T00", "T10", "T20", "T30", "Q00", "Q10", "Q20", "Q30", "Lplus", "Lminus")


def _check_times(t: np.ndarray) -> None:
    if t.ndim != 1 or t.size < MIN_SAMPLES:
        raise SignalError(f"Need at least {MIN_SAMPLES} samples, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise SignalError("Sample times must be finite")
    dt = np.diff(t)
    if np.any(dt <= 0):
        raise SignalError("Sample times must be strictly increasing")
    mean = float(dt.mean())
    if float(np.max(np.abs(dt - mean))) > UNIFORM_RTOL * mean:
        raise SignalError("Sample times are not uniformly spaced")


def _check_channels(t: np.ndarray, values: np.ndarray, name: str) -> None:
    if values.shape != (t.size, 3):
        raise SignalError(f"{name} must have shape ({t.size}, 3), got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise SignalError(f"{name} contains non-finite samples")


@dataclass(frozen=True, slots=True)
class FieldSampleSeries:
    t: np.ndarray
    e: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=np.float64)
        e = np.asarray(self.e, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        _check_times(t)
        _check_channels(t, e, "E")
        _check_channels(t, b, "B")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "b", b)

    def __len__(self) -> int:
        return int(self.t.size)

    @property
    def sample_rate(self) -> float:
        return 1.0 / float(np.diff(self.t).mean())


@dataclass(frozen=True, slots=True)
class AnalyticBivectorSeries:
    t: np.ndarray
    e: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=np.float64)
        e = np.asarray(self.e, dtype=np.complex128)
        b = np.asarray(self.b, dtype=np.complex128)
        _check_times(t)
        _check_channels(t, e, "E")
        _check_channels(t, b, "B")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "b", b)

    def __len__(self) -> int:
        return int(self.t.size)

    def bivector(self, k: int) -> Bivector:
        return Bivector(tuple(self.e[k]), tuple(self.b[k]), FLOAT)

    def bivectors(self) -> list[Bivector]:
        return [self.bivector(k) for k in range(len(self))]

    def real_part(self) -> FieldSampleSeries:
        return FieldSampleSeries(self.t, self.e.real, self.b.real)


@dataclass(frozen=True, slots=True)
class ConcomitantSeries:
    t: np.ndarray
    columns: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        for name, values in self.columns.items():
            if values.shape != self.t.shape:
                raise SignalError(f"Column {name} has {values.size} samples, expected {self.t.size}")
            if not np.all(np.isfinite(values)):
                raise SignalError(f"Column {name} contains non-finite values")

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"t": self.t})
        for name, values in self.columns.items():
            frame[name] = values
        return frame


def analytic_signal(series: FieldSampleSeries) -> AnalyticBivectorSeries:
    """One-sided-spectrum complexification of every Cartesian channel.

    DC and (even length) Nyquist bins keep unit weight, positive bins are
    doubled and negative bins dropped, so the real part is the input.
    """
    return AnalyticBivectorSeries(
        t=series.t,
        e=hilbert(series.e, axis=0),
        b=hilbert(series.b, axis=0),
    )


def parse_selection(raw: str | Iterable[str] | None) -> list[str]:
    if raw is None:
        return list(DEFAULT_SELECTION)
    names = raw.split(",") if isinstance(raw, str) else list(raw)
    names = [n.strip() for n in names if n.strip()]
    if not names:
        raise SelectionError("Column selection is empty")
    unknown = [n for n in names if n not in COLUMN_REGISTRY]
    if unknown:
        raise SelectionError(f"Unknown column(s): {', '.join(unknown)}")
    return names


def concomitant_series(
    series: AnalyticBivectorSeries, selection: Sequence[str] | str | None = None
) -> ConcomitantSeries:
    names = parse_selection(selection)
    comps = eb_components(series.e, series.b, FLOAT)
    columns: dict[str, np.ndarray] = {}
    for name in names:
        tag, index = COLUMN_REGISTRY[name]
        values = comps[tag] if index is None else comps[tag][:, index[0], index[1]]
        # every registered concomitant is real
        columns[name] = np.real(values).astype(np.float64)
    return ConcomitantSeries(t=series.t.copy(), columns=columns)


def synth_plane_wave(
    *,
    amplitude: float = 1.0,
    frequency: float,
    polarization: str = LINEAR,
    axis: str = "z",
    n: int = 1024,
    sample_rate: float = 1024.0,
    phase: float = 0.0,
) -> FieldSampleSeries:
    """Monochromatic plane wave sampled at the origin, with B = k x E.

    ``circular-left`` turns E from u toward v (u x v = k); ``circular-right``
    turns the other way.
    """
    if polarization not in POLARIZATIONS:
        raise SignalError(f"Unknown polarization {polarization!r}; expected one of {POLARIZATIONS}")
    if axis not in _TRANSVERSE:
        raise SignalError(f"Unknown propagation axis {axis!r}")
    if sample_rate <= 0 or n < MIN_SAMPLES:
        raise SignalError("Need a positive sample rate and at least four samples")
    if not 0.0 <= frequency < sample_rate / 2:
        raise SignalError(f"Frequency {frequency} must lie in [0, Nyquist={sample_rate / 2})")
    u, v, k = _TRANSVERSE[axis]
    t = np.arange(n, dtype=np.float64) / sample_rate
    theta = 2.0 * math.pi * frequency * t + phase
    e = amplitude * np.cos(theta)[:, None] * u
    if polarization == CIRCULAR_LEFT:
        e = e + amplitude * np.sin(theta)[:, None] * v
    elif polarization == CIRCULAR_RIGHT:
        e = e - amplitude * np.sin(theta)[:, None] * v
    b = np.cross(k, e)
    return FieldSampleSeries(t=t, e=e, b=b)


# -- CSV ------------------------------------------------------------------------


def _read_frame(path: Path, expected: tuple[str, ...]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, encoding="utf-8")
    except FileNotFoundError:
        raise SignalError(f"No such file: {path}") from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise SignalError(f"Malformed CSV {path}: {exc}") from None
    header = tuple(str(c).strip() for c in frame.columns)
    if header != expected:
        raise SignalError(f"CSV header must be {','.join(expected)}, got {','.join(header)}")
    try:
        return frame.astype(np.float64)
    except (TypeError, ValueError) as exc:
        raise SignalError(f"Non-numeric value in {path}: {exc}") from None


def read_field_csv(path: str | Path) -> FieldSampleSeries:
    frame = _read_frame(Path(path), FIELD_COLUMNS)
    return FieldSampleSeries(
        t=frame["t"].to_numpy(),
        e=frame[["Ex", "Ey", "Ez"]].to_numpy(),
        b=frame[["Bx", "By", "Bz"]].to_numpy(),
    )


def read_complex_csv(path: str | Path) -> AnalyticBivectorSeries:
    """Pre-complexified input: ``t`` then re/im pairs for each field channel."""
    frame = _read_frame(Path(path), COMPLEX_COLUMNS)

    def channel(names: tuple[str, ...]) -> np.ndarray:
        re = frame[[f"{n}_re" for n in names]].to_numpy()
        im = frame[[f"{n}_im" for n in names]].to_numpy()
        return re + 1j * im

    return AnalyticBivectorSeries(
        t=frame["t"].to_numpy(),
        e=channel(("Ex", "Ey", "Ez")),
        b=channel(("Bx", "By", "Bz")),
    )


def field_frame(series: FieldSampleSeries) -> pd.DataFrame:
    data = {"t": series.t}
    for j, axis in enumerate("xyz"):
        data[f"E{axis}"] = series.e[:, j]
    for j, axis in enumerate("xyz"):
        data[f"B{axis}"] = series.b[:, j]
    return pd.DataFrame(data, columns=list(FIELD_COLUMNS))


def frame_to_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_series_csv(series: ConcomitantSeries, path: str | Path) -> Path:
    target = Path(path)
    atomic_write_text(target, frame_to_csv(series.to_frame()))
    return target


def write_field_csv(series: FieldSampleSeries, path: str | Path) -> Path:
    target = Path(path)
    atomic_write_text(target, frame_to_csv(field_frame(series)))
    return target
