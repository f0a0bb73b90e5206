"""Scalar backends: exact Gaussian rationals and double-precision complex.

Every tensor in the package stores its components in a numpy array whose
dtype identifies the backend: ``object`` arrays of :class:`GaussianRational`
for the exact backend, ``complex128`` for the float backend.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Union

import numpy as np

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)

_BACKEND_ALIASES: dict[str, str] = {
    "rational": RATIONAL,
    "exact": RATIONAL,
    "float": FLOAT,
    "double": FLOAT,
    "complex": FLOAT,
}


def normalize_backend(value: str | None) -> str:
    if value is None:
        return RATIONAL
    key = str(value).strip().lower()
    if not key:
        return RATIONAL
    try:
        return _BACKEND_ALIASES[key]
    except KeyError:
        raise ValueError(
            f"Unknown backend {value!r}; expected one of: {', '.join(BACKENDS)}"
        ) from None


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(float(value)):
            raise ValueError(f"Non-finite value cannot be made exact: {value!r}")
        return Fraction(float(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty string is not a rational number")
        return Fraction(text)
    raise TypeError(f"Cannot convert {type(value).__name__} to a rational number")


class GaussianRational:
    """Complex number with rational parts, stored as ``(re + im*i) / den``.

    The triple is kept normalized (``den > 0`` and ``gcd(re, im, den) == 1``)
    so equality is a tuple comparison.
    """

    __slots__ = ("_re", "_im", "_den")

    def __init__(self, re: Any = 0, im: Any = 0) -> None:
        fr = _to_fraction(re)
        fi = _to_fraction(im)
        den = math.lcm(fr.denominator, fi.denominator)
        self._re, self._im, self._den = _normalized(
            fr.numerator * (den // fr.denominator),
            fi.numerator * (den // fi.denominator),
            den,
        )

    @classmethod
    def _make(cls, re: int, im: int, den: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._re, obj._im, obj._den = _normalized(re, im, den)
        return obj

    # -- accessors -------------------------------------------------------

    @property
    def real(self) -> Fraction:
        return Fraction(self._re, self._den)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._im, self._den)

    @property
    def denominator(self) -> int:
        return self._den

    def is_real(self) -> bool:
        return self._im == 0

    def is_unit(self) -> bool:
        return self._re * self._re + self._im * self._im == self._den * self._den

    def norm2(self) -> Fraction:
        return Fraction(self._re * self._re + self._im * self._im, self._den * self._den)

    def conjugate(self) -> "GaussianRational":
        obj = object.__new__(GaussianRational)
        obj._re, obj._im, obj._den = self._re, -self._im, self._den
        return obj

    def reciprocal(self) -> "GaussianRational":
        n2 = self._re * self._re + self._im * self._im
        if n2 == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._make(self._den * self._re, -self._den * self._im, n2)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o._re and not o._im:
            return self
        if not self._re and not self._im:
            return o
        if self._den == o._den:
            return GaussianRational._make(self._re + o._re, self._im + o._im, self._den)
        return GaussianRational._make(
            self._re * o._den + o._re * self._den,
            self._im * o._den + o._im * self._den,
            self._den * o._den,
        )

    __radd__ = __add__

    def __sub__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not (self._re or self._im) or not (o._re or o._im):
            return _ZERO
        return GaussianRational._make(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
            self._den * o._den,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other: Any) -> "GaussianRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __neg__(self) -> "GaussianRational":
        obj = object.__new__(GaussianRational)
        obj._re, obj._im, obj._den = -self._re, -self._im, self._den
        return obj

    def __pos__(self) -> "GaussianRational":
        return self

    def __abs__(self) -> float:
        return math.hypot(self._re / self._den, self._im / self._den)

    def __bool__(self) -> bool:
        return bool(self._re or self._im)

    def __complex__(self) -> complex:
        return complex(self._re / self._den, self._im / self._den)

    def __eq__(self, other: Any) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self._re, self._im, self._den) == (o._re, o._im, o._den)

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(Fraction(self._re, self._den))
        return hash((self._re, self._im, self._den))

    def __repr__(self) -> str:
        return f"GaussianRational('{self.real}', '{self.imag}')"

    def __str__(self) -> str:
        re, im = self.real, self.imag
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}i"


def _normalized(re: int, im: int, den: int) -> tuple[int, int, int]:
    if den < 0:
        re, im, den = -re, -im, -den
    g = math.gcd(math.gcd(re, im), den)
    if g > 1:
        return re // g, im // g, den // g
    return re, im, den


def _coerce(value: Any) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (bool, int, np.integer, Fraction)):
        f = _to_fraction(value)
        return GaussianRational._make(f.numerator, 0, f.denominator)
    if isinstance(value, (float, np.floating)):
        return GaussianRational(value)
    if isinstance(value, (complex, np.complexfloating)):
        return GaussianRational(float(value.real), float(value.imag))
    return None


_ZERO = GaussianRational._make(0, 0, 1)

Scalar = Union[GaussianRational, complex]


# -- backend-aware helpers --------------------------------------------------


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"p/q"``, ``"1.5"`` or a ``[re, im]`` pair given as text parts."""
    return GaussianRational(_to_fraction(text))


def as_scalar(value: Any, backend: str) -> Scalar:
    if backend == RATIONAL:
        if isinstance(value, GaussianRational):
            return value
        coerced = _coerce(value)
        if coerced is not None:
            return coerced
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to an exact scalar")
    if isinstance(value, str):
        return complex(parse_scalar(value))
    return complex(value)


def zero(backend: str) -> Scalar:
    return _ZERO if backend == RATIONAL else 0j


def one(backend: str) -> Scalar:
    return as_scalar(1, backend)


def imag_unit(backend: str) -> Scalar:
    return GaussianRational(0, 1) if backend == RATIONAL else 1j


def map_elements(func: Callable[[Any], Any], array: Any, dtype: Any = object) -> np.ndarray:
    src = np.asarray(array, dtype=object)
    out = np.empty(src.shape, dtype=dtype)
    for idx in np.ndindex(src.shape):
        out[idx] = func(src[idx])
    return out


def to_backend_array(values: Any, backend: str) -> np.ndarray:
    if backend == RATIONAL:
        return map_elements(lambda v: as_scalar(v, RATIONAL), values, object)
    if isinstance(values, np.ndarray) and values.dtype != object:
        return values.astype(np.complex128)
    return map_elements(lambda v: as_scalar(v, FLOAT), values, np.complex128)


def full(shape: tuple[int, ...], value: Any, backend: str) -> np.ndarray:
    if backend == RATIONAL:
        return np.full(shape, as_scalar(value, RATIONAL), dtype=object)
    return np.full(shape, as_scalar(value, FLOAT), dtype=np.complex128)


def conj(array: np.ndarray) -> np.ndarray:
    if array.dtype == object:
        return map_elements(lambda z: z.conjugate(), array)
    return np.conj(array)


def real_part(array: np.ndarray) -> np.ndarray:
    """Real part, kept in the array's own backend dtype."""
    if array.dtype == object:
        return map_elements(lambda z: GaussianRational(z.real), array)
    return array.real.astype(np.complex128)


def imag_part(array: np.ndarray) -> np.ndarray:
    if array.dtype == object:
        return map_elements(lambda z: GaussianRational(z.imag), array)
    return array.imag.astype(np.complex128)


def max_abs(array: Any) -> float:
    array = np.asarray(array, dtype=object if isinstance(array, GaussianRational) else None)
    if array.size == 0:
        return 0.0
    if array.dtype == object:
        return max(abs(z) for z in array.flat)
    return float(np.max(np.abs(array)))


def is_zero(array: np.ndarray, tolerance: float = 0.0) -> bool:
    if array.dtype == object:
        return not any(array.flat)
    return max_abs(array) <= tolerance


def arrays_close(a: np.ndarray, b: np.ndarray, tolerance: float) -> bool:
    """Exact equality for object arrays; scaled tolerance for complex arrays."""
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object:
        return all(x == y for x, y in zip(a.flat, b.flat))
    a = map_elements(complex, a, np.complex128) if a.dtype == object else a
    b = map_elements(complex, b, np.complex128) if b.dtype == object else b
    scale = max(1.0, max_abs(a), max_abs(b))
    return max_abs(a - b) <= tolerance * scale


def real_value(value: Scalar) -> Fraction | float:
    """Real part of a backend scalar as a Fraction (exact) or float."""
    if isinstance(value, GaussianRational):
        return value.real
    return float(complex(value).real)


def format_exact(value: Scalar) -> str | list[str]:
    """Exact text form: ``"p/q"`` for real values, ``["re", "im"]`` otherwise."""
    if not isinstance(value, GaussianRational):
        value = as_scalar(value, RATIONAL)
    if value.is_real():
        return str(value.real)
    return [str(value.real), str(value.imag)]
