"""Dense rank 0-4 tensors over 4-D Minkowski space.

Signature is (+, -, -, -) and the alternating tensor is normalized to
epsilon^{0123} = -1. Every slot carries an ``upper``/``lower`` variance tag
and contractions refuse to pair two slots of the same variance.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Sequence

import numpy as np

from .scalar import (
    FLOAT,
    RATIONAL,
    Scalar,
    arrays_close,
    as_scalar,
    conj,
    full,
    imag_part,
    is_zero,
    map_elements,
    max_abs,
    real_part,
    to_backend_array,
)

DIM = 4
MAX_RANK = 4
UPPER = "upper"
LOWER = "lower"
SIGNATURE = "+---"
METRIC_DIAGONAL = (1, -1, -1, -1)
DEFAULT_TOLERANCE = 1e-12

_EPSILON_UPPER_0123: ContextVar[int] = ContextVar("epsilon_upper_0123", default=-1)


class TensorError(ValueError):
    pass


def epsilon_upper_0123() -> int:
    return _EPSILON_UPPER_0123.get()


@contextmanager
def flipped_epsilon() -> Iterator[None]:
    """Temporarily reverse the sign convention of the alternating tensor.

    Exists so the verification suite can prove it detects a broken convention.
    """
    token = _EPSILON_UPPER_0123.set(-_EPSILON_UPPER_0123.get())
    try:
        yield
    finally:
        _EPSILON_UPPER_0123.reset(token)


@dataclass(frozen=True, slots=True, eq=False)
class SmallTensor:
    components: np.ndarray
    variance: tuple[str, ...]
    backend: str = RATIONAL

    def __post_init__(self) -> None:
        variance = tuple(self.variance)
        if len(variance) > MAX_RANK:
            raise TensorError(f"Rank {len(variance)} exceeds the maximum of {MAX_RANK}")
        for tag in variance:
            if tag not in (UPPER, LOWER):
                raise TensorError(f"Unknown variance tag: {tag!r}")
        comps = np.asarray(self.components)
        if comps.shape != (DIM,) * len(variance):
            raise TensorError(
                f"Components of shape {comps.shape} do not match rank {len(variance)}"
            )
        if self.backend == RATIONAL:
            if comps.dtype != object:
                comps = to_backend_array(comps, RATIONAL)
            else:
                comps = comps.copy()
        elif self.backend == FLOAT:
            if comps.dtype == object:
                comps = map_elements(complex, comps, np.complex128)
            else:
                comps = comps.astype(np.complex128)
        else:
            raise TensorError(f"Unknown backend: {self.backend!r}")
        comps.flags.writeable = False
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "variance", variance)

    @classmethod
    def zeros(cls, variance: Sequence[str], backend: str = RATIONAL) -> "SmallTensor":
        return cls(full((DIM,) * len(variance), 0, backend), tuple(variance), backend)

    @classmethod
    def from_values(
        cls, values: Any, variance: Sequence[str], backend: str = RATIONAL
    ) -> "SmallTensor":
        return cls(to_backend_array(values, backend), tuple(variance), backend)

    @classmethod
    def scalar_value(cls, value: Any, backend: str = RATIONAL) -> "SmallTensor":
        return cls(to_backend_array(value, backend), (), backend)

    @property
    def rank(self) -> int:
        return len(self.variance)

    def __getitem__(self, index: tuple[int, ...] | int) -> Scalar:
        return self.components[index]

    def scalar(self) -> Scalar:
        if self.rank != 0:
            raise TensorError(f"Rank-{self.rank} tensor is not a scalar")
        return self.components[()]

    # -- arithmetic ------------------------------------------------------

    def _check_compatible(self, other: "SmallTensor") -> None:
        if not isinstance(other, SmallTensor):
            raise TensorError(f"Expected SmallTensor, got {type(other).__name__}")
        if other.variance != self.variance:
            raise TensorError(f"Variance mismatch: {self.variance} vs {other.variance}")
        if other.backend != self.backend:
            raise TensorError(f"Backend mismatch: {self.backend} vs {other.backend}")

    def __add__(self, other: "SmallTensor") -> "SmallTensor":
        self._check_compatible(other)
        return SmallTensor(self.components + other.components, self.variance, self.backend)

    def __sub__(self, other: "SmallTensor") -> "SmallTensor":
        self._check_compatible(other)
        return SmallTensor(self.components - other.components, self.variance, self.backend)

    def __neg__(self) -> "SmallTensor":
        return SmallTensor(-self.components, self.variance, self.backend)

    def scale(self, factor: Any) -> "SmallTensor":
        return SmallTensor(
            self.components * as_scalar(factor, self.backend), self.variance, self.backend
        )

    __mul__ = scale
    __rmul__ = scale

    def conj(self) -> "SmallTensor":
        return SmallTensor(conj(self.components), self.variance, self.backend)

    def real_part(self) -> "SmallTensor":
        return SmallTensor(real_part(self.components), self.variance, self.backend)

    def imag_part(self) -> "SmallTensor":
        return SmallTensor(imag_part(self.components), self.variance, self.backend)

    def transpose(self, order: Sequence[int]) -> "SmallTensor":
        order = tuple(order)
        if sorted(order) != list(range(self.rank)):
            raise TensorError(f"Invalid slot permutation {order} for rank {self.rank}")
        return SmallTensor(
            np.transpose(self.components, order),
            tuple(self.variance[i] for i in order),
            self.backend,
        )

    def swap(self, slot_a: int, slot_b: int) -> "SmallTensor":
        order = list(range(self.rank))
        order[slot_a], order[slot_b] = order[slot_b], order[slot_a]
        return self.transpose(order)

    def to_float(self) -> "SmallTensor":
        if self.backend == FLOAT:
            return self
        return SmallTensor(self.components, self.variance, FLOAT)

    # -- comparison ------------------------------------------------------

    def is_zero(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return is_zero(self.components, tolerance)

    def is_real(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return is_zero(imag_part(self.components), tolerance)

    def max_abs(self) -> float:
        return max_abs(self.components)

    def residual(self, other: "SmallTensor") -> float:
        self._check_compatible(other)
        diff = np.asarray(self.components - other.components, dtype=self.components.dtype)
        return max_abs(diff)

    def equals(self, other: "SmallTensor", tolerance: float = DEFAULT_TOLERANCE) -> bool:
        if not isinstance(other, SmallTensor) or other.variance != self.variance:
            return False
        return arrays_close(self.components, other.components, tolerance)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SmallTensor):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SmallTensor(rank={self.rank}, variance={self.variance}, backend={self.backend!r})"


# -- constants ------------------------------------------------------------------


def metric(variance: Sequence[str] = (UPPER, UPPER), backend: str = RATIONAL) -> SmallTensor:
    """g^{ab}, g_{ab} = diag(+1,-1,-1,-1); mixed variance gives the identity."""
    variance = tuple(variance)
    if len(variance) != 2:
        raise TensorError("The metric has rank 2")
    if variance[0] == variance[1]:
        values = np.diag(METRIC_DIAGONAL)
    else:
        values = np.eye(DIM, dtype=int)
    return SmallTensor.from_values(values, variance, backend)


def _permutation_parity(perm: Sequence[int]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _levi_civita(variance: tuple[str, ...], backend: str, sign: int) -> SmallTensor:
    values = np.zeros((DIM,) * 4, dtype=int)
    for perm in itertools.permutations(range(DIM)):
        values[perm] = _permutation_parity(perm) * sign
    eps = SmallTensor.from_values(values, (UPPER,) * 4, backend)
    for slot, tag in enumerate(variance):
        eps = adjust_index(eps, slot, tag)
    return eps


def levi_civita4(variance: str | Sequence[str] = UPPER, backend: str = RATIONAL) -> SmallTensor:
    """The alternating tensor, all-upper or all-lower (or any explicit mix).

    Lower slots come from metric contractions of the contravariant form.
    """
    if isinstance(variance, str):
        variance = (variance,) * 4
    variance = tuple(variance)
    if len(variance) != 4:
        raise TensorError("The alternating tensor has rank 4")
    return _levi_civita(variance, backend, epsilon_upper_0123())


# -- index gymnastics -----------------------------------------------------------


def _check_slot(t: SmallTensor, slot: int) -> None:
    if not 0 <= slot < t.rank:
        raise TensorError(f"Slot {slot} out of range for rank-{t.rank} tensor")


def adjust_index(t: SmallTensor, slot: int, to: str) -> SmallTensor:
    """Raise or lower one slot by contracting it with the metric."""
    _check_slot(t, slot)
    if to not in (UPPER, LOWER):
        raise TensorError(f"Unknown variance tag: {to!r}")
    if t.variance[slot] == to:
        return t
    # diag(+,-,-,-) is its own inverse, so raising and lowering share one sign vector
    signs = np.array(METRIC_DIAGONAL, dtype=int)
    shape = [1] * t.rank
    shape[slot] = DIM
    comps = t.components * signs.reshape(shape)
    variance = list(t.variance)
    variance[slot] = to
    return SmallTensor(comps, tuple(variance), t.backend)


def contract(t: SmallTensor, slot_a: int, slot_b: int) -> SmallTensor:
    """Trace over two slots of opposite variance."""
    _check_slot(t, slot_a)
    _check_slot(t, slot_b)
    if slot_a == slot_b:
        raise TensorError("Cannot contract a slot with itself")
    if t.variance[slot_a] == t.variance[slot_b]:
        raise TensorError(
            f"Slots {slot_a} and {slot_b} are both {t.variance[slot_a]}; adjust one index first"
        )
    traced = np.trace(t.components, axis1=slot_a, axis2=slot_b)
    variance = tuple(v for i, v in enumerate(t.variance) if i not in (slot_a, slot_b))
    return SmallTensor(np.asarray(traced, dtype=t.components.dtype), variance, t.backend)


def outer(a: SmallTensor, b: SmallTensor) -> SmallTensor:
    if a.rank + b.rank > MAX_RANK:
        raise TensorError(f"Outer product rank {a.rank + b.rank} exceeds {MAX_RANK}")
    if a.backend != b.backend:
        raise TensorError(f"Backend mismatch: {a.backend} vs {b.backend}")
    comps = np.multiply.outer(a.components, b.components)
    return SmallTensor(comps, a.variance + b.variance, a.backend)


def contract_product(
    a: SmallTensor, b: SmallTensor, pairs: Sequence[tuple[int, int]]
) -> SmallTensor:
    """Contract slots of ``a`` against slots of ``b`` without forming ``a (x) b``.

    The product may exceed rank 4 before contraction; the result may not.
    Result slots are the free slots of ``a`` followed by those of ``b``.
    """
    if a.backend != b.backend:
        raise TensorError(f"Backend mismatch: {a.backend} vs {b.backend}")
    for slot_a, slot_b in pairs:
        _check_slot(a, slot_a)
        _check_slot(b, slot_b)
        if a.variance[slot_a] == b.variance[slot_b]:
            raise TensorError(
                f"Slots {slot_a} and {slot_b} are both {a.variance[slot_a]}; adjust one index first"
            )
    axes_a = [p[0] for p in pairs]
    axes_b = [p[1] for p in pairs]
    free_a = tuple(v for i, v in enumerate(a.variance) if i not in axes_a)
    free_b = tuple(v for i, v in enumerate(b.variance) if i not in axes_b)
    if len(free_a) + len(free_b) > MAX_RANK:
        raise TensorError(f"Contracted product has rank {len(free_a) + len(free_b)} > {MAX_RANK}")
    comps = np.tensordot(a.components, b.components, axes=(axes_a, axes_b))
    return SmallTensor(np.asarray(comps, dtype=a.components.dtype), free_a + free_b, a.backend)


def relabel(t: SmallTensor, source: str, target: str) -> SmallTensor:
    """Reorder slots by index names.

    ``relabel(w, "bgda", "abgd")`` reads ``w`` as w^{b g d a} and returns the
    tensor indexed in (a, b, g, d) order.
    """
    if sorted(source) != sorted(target) or len(source) != t.rank or len(set(source)) != t.rank:
        raise TensorError(f"Cannot relabel {source!r} as {target!r} for rank {t.rank}")
    return t.transpose([source.index(name) for name in target])


def lorentz_apply(t: SmallTensor, matrix: np.ndarray) -> SmallTensor:
    """Apply Lambda^a_m to every slot of an all-contravariant tensor (float backend)."""
    if any(v != UPPER for v in t.variance):
        raise TensorError("Lorentz action is defined here for all-contravariant tensors")
    comps = t.to_float().components
    lam = np.asarray(matrix, dtype=np.float64)
    for slot in range(t.rank):
        comps = np.moveaxis(np.tensordot(lam, comps, axes=([1], [slot])), 0, slot)
    return SmallTensor(comps, t.variance, FLOAT)
