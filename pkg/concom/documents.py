"""JSON documents for single bivectors and their concomitants."""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .bivector import Bivector, from_matrix
from .concomitants import ALL_TAGS, ConcomitantSet
from .scalar import FLOAT, RATIONAL, GaussianRational, Scalar, format_exact, normalize_backend
from .tensor import SIGNATURE, UPPER, SmallTensor, epsilon_upper_0123

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    pass


def atomic_write_text(path: Path, text: str) -> None:
    """Write via a temp file in the destination directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def dump_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write_json_document(path: Path, payload: dict[str, Any]) -> None:
    atomic_write_text(path, dump_json(payload))


def read_json_document(path: Path) -> dict[str, Any]:
    try:
        parsed = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DocumentError(f"No such file: {path}") from None
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"Cannot parse {path}: {exc}") from None
    if not isinstance(parsed, dict):
        raise DocumentError(f"{path} must contain a JSON object")
    return parsed


def convention_block() -> dict[str, Any]:
    return {"signature": SIGNATURE, "epsilon_upper_0123": epsilon_upper_0123()}


# -- scalar encoding ------------------------------------------------------------


def _exact_part(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise DocumentError(f"{where}: expected a number or 'p/q' string, got {value!r}")
    if isinstance(value, float) and not math.isfinite(value):
        raise DocumentError(f"{where}: non-finite number {value!r}")
    try:
        return Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: cannot read {value!r} as a rational number") from None


def decode_scalar(value: Any, where: str = "value") -> GaussianRational:
    """``x`` or ``[re, im]``; parts are numbers or ``"p/q"`` strings."""
    if isinstance(value, list):
        if len(value) != 2:
            raise DocumentError(f"{where}: complex entries are [re, im] pairs")
        return GaussianRational(_exact_part(value[0], where), _exact_part(value[1], where))
    return GaussianRational(_exact_part(value, where))


def encode_scalar(value: Scalar, exact: bool) -> Any:
    if exact:
        return format_exact(value)
    z = complex(value)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def _encode_array(values: np.ndarray, exact: bool) -> Any:
    def walk(node: Any) -> Any:
        if isinstance(node, list):
            return [walk(child) for child in node]
        return encode_scalar(node, exact)

    # tolist() yields bare scalars at the leaves for object and complex dtypes alike
    return walk(np.asarray(values).tolist())


def _decode_array(payload: Any, rank: int, where: str) -> np.ndarray:
    out = np.empty((4,) * rank, dtype=object)

    def fill(node: Any, prefix: tuple[int, ...]) -> None:
        if len(prefix) == rank:
            out[prefix] = decode_scalar(node, where)
            return
        if not isinstance(node, list) or len(node) != 4:
            raise DocumentError(f"{where}: expected a nested 4-component array")
        for i, child in enumerate(node):
            fill(child, prefix + (i,))

    fill(payload, ())
    return out


# -- bivector input -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BivectorDocument:
    e: tuple[GaussianRational, GaussianRational, GaussianRational]
    b: tuple[GaussianRational, GaussianRational, GaussianRational]
    backend: str | None = None

    @classmethod
    def from_json(cls, payload: Any) -> "BivectorDocument":
        """Read ``{"E": [...], "B": [...]}`` or a 4x4 ``{"F": [[...]]}`` matrix.

        A matrix that is not antisymmetric raises ``NotAntisymmetricError``.
        """
        if not isinstance(payload, dict):
            raise DocumentError("Bivector document must be a JSON object")
        hint = payload.get("backend")
        try:
            backend = normalize_backend(hint) if hint is not None else None
        except ValueError as exc:
            raise DocumentError(str(exc)) from None
        if "F" in payload:
            matrix = SmallTensor(_decode_array(payload["F"], 2, "F"), (UPPER, UPPER), RATIONAL)
            f = from_matrix(matrix)
            return cls(f.e, f.b, backend)  # type: ignore[arg-type]
        e = cls._triple(payload.get("E"), "E")
        b = cls._triple(payload.get("B"), "B")
        return cls(e, b, backend)

    @staticmethod
    def _triple(values: Any, name: str) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
        if not isinstance(values, list) or len(values) != 3:
            raise DocumentError(f"{name} must be an array of exactly 3 entries")
        return tuple(decode_scalar(v, f"{name}[{i}]") for i, v in enumerate(values))  # type: ignore[return-value]

    @classmethod
    def read(cls, path: Path) -> "BivectorDocument":
        return cls.from_json(read_json_document(path))

    @classmethod
    def from_bivector(cls, f: Bivector) -> "BivectorDocument":
        exact = f if f.backend == RATIONAL else Bivector(f.e, f.b, RATIONAL)
        return cls(exact.e, exact.b, f.backend)  # type: ignore[arg-type]

    def to_bivector(self, backend: str | None = None) -> Bivector:
        chosen = normalize_backend(backend or self.backend or RATIONAL)
        return Bivector(self.e, self.b, chosen)

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "E": [[str(z.real), str(z.imag)] for z in self.e],
            "B": [[str(z.real), str(z.imag)] for z in self.b],
        }
        if self.backend:
            payload["backend"] = self.backend
        return payload


# -- concomitant output ---------------------------------------------------------


@dataclass(slots=True)
class ConcomitantDocument:
    backend: str
    exact: bool
    source: dict[str, Any]
    concomitants: dict[str, Any]
    convention: dict[str, Any] = field(default_factory=convention_block)
    duality_signs: dict[str, int | str] | None = None
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def build(
        cls,
        cs: ConcomitantSet,
        selection: Iterable[str] | None = None,
        *,
        exact: bool = False,
        duality_signs: dict[str, int | str] | None = None,
    ) -> "ConcomitantDocument":
        members = cs.members()
        names = list(selection) if selection is not None else list(ALL_TAGS)
        unknown = [n for n in names if n not in members]
        if unknown:
            raise DocumentError(f"Unknown concomitant(s): {', '.join(unknown)}")
        if exact and cs.convention.backend == FLOAT:
            raise DocumentError("Exact output needs the rational backend")
        return cls(
            backend=cs.convention.backend,
            exact=exact,
            source=BivectorDocument.from_bivector(cs.source).to_json(),
            concomitants={n: _encode_array(members[n].components, exact) for n in names},
            convention={
                "signature": cs.convention.signature,
                "epsilon_upper_0123": cs.convention.epsilon_upper_0123,
            },
            duality_signs=duality_signs,
        )

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "schema_version": self.schema_version,
            "convention": self.convention,
            "backend": self.backend,
            "exact": self.exact,
            "input": self.source,
            "concomitants": self.concomitants,
        }
        if self.duality_signs is not None:
            payload["duality_signs"] = self.duality_signs
        return payload

    def to_text(self) -> str:
        return dump_json(self.to_json())

    @classmethod
    def from_json(cls, payload: Any) -> "ConcomitantDocument":
        if not isinstance(payload, dict):
            raise DocumentError("Concomitant document must be a JSON object")
        version = payload.get("schema_version")
        if version != SCHEMA_VERSION:
            raise DocumentError(f"Unsupported schema_version {version!r}")
        for key in ("convention", "backend", "input", "concomitants"):
            if key not in payload:
                raise DocumentError(f"Concomitant document is missing {key!r}")
        if not isinstance(payload["concomitants"], dict):
            raise DocumentError("'concomitants' must be an object")
        return cls(
            backend=str(payload["backend"]),
            exact=bool(payload.get("exact", False)),
            source=dict(payload["input"]),
            concomitants=dict(payload["concomitants"]),
            convention=dict(payload["convention"]),
            duality_signs=payload.get("duality_signs"),
            schema_version=int(version),
        )

    @classmethod
    def read(cls, path: Path) -> "ConcomitantDocument":
        return cls.from_json(read_json_document(path))

    def write(self, path: Path) -> None:
        atomic_write_text(path, self.to_text())

    def value(self, tag: str) -> SmallTensor:
        """Decode one stored concomitant back into an exact tensor."""
        if tag not in self.concomitants:
            raise DocumentError(f"Document has no {tag!r}")
        node = self.concomitants[tag]
        rank = 0
        cursor = node
        while isinstance(cursor, list) and len(cursor) == 4:
            rank += 1
            cursor = cursor[0]
        return SmallTensor(_decode_array(node, rank, tag), (UPPER,) * rank, RATIONAL)
