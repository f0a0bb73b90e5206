"""Complex bivectors F^{ab} held as a pair of complex 3-vectors (E, B)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .scalar import (
    FLOAT,
    RATIONAL,
    GaussianRational,
    Scalar,
    as_scalar,
    imag_unit,
    zero,
)
from .tensor import (
    DEFAULT_TOLERANCE,
    LOWER,
    UPPER,
    SmallTensor,
    adjust_index,
    contract_product,
    levi_civita4,
    outer,
)

# Sixtor slot A (0-based here) <-> antisymmetric index pair [ab]
SIXTOR_INDEX: tuple[tuple[int, int], ...] = ((1, 0), (2, 0), (3, 0), (3, 2), (1, 3), (2, 1))

EXACT_UNIT_PHASES: tuple[GaussianRational, ...] = (
    GaussianRational(0, 1),
    GaussianRational(Fraction(3, 5), Fraction(4, 5)),
    GaussianRational(Fraction(5, 13), Fraction(12, 13)),
)

RANDOM_MAX_DENOMINATOR = 16


class BivectorError(ValueError):
    pass


class NotAntisymmetricError(BivectorError):
    pass


def _triple(values: Sequence[Any], backend: str, name: str) -> tuple[Scalar, Scalar, Scalar]:
    items = list(values)
    if len(items) != 3:
        raise BivectorError(f"{name} must have exactly 3 components, got {len(items)}")
    return tuple(as_scalar(v, backend) for v in items)  # type: ignore[return-value]


@dataclass(frozen=True, slots=True)
class Bivector:
    e: tuple[Scalar, Scalar, Scalar]
    b: tuple[Scalar, Scalar, Scalar]
    backend: str = RATIONAL

    def __post_init__(self) -> None:
        if self.backend not in (RATIONAL, FLOAT):
            raise BivectorError(f"Unknown backend: {self.backend!r}")
        object.__setattr__(self, "e", _triple(self.e, self.backend, "E"))
        object.__setattr__(self, "b", _triple(self.b, self.backend, "B"))

    @classmethod
    def zero(cls, backend: str = RATIONAL) -> "Bivector":
        return cls((0, 0, 0), (0, 0, 0), backend)

    def conjugate(self) -> "Bivector":
        return Bivector(
            tuple(z.conjugate() for z in self.e),
            tuple(z.conjugate() for z in self.b),
            self.backend,
        )

    def scale(self, factor: Any) -> "Bivector":
        f = as_scalar(factor, self.backend)
        return Bivector(tuple(f * z for z in self.e), tuple(f * z for z in self.b), self.backend)

    def __add__(self, other: "Bivector") -> "Bivector":
        self._check(other)
        return Bivector(
            tuple(x + y for x, y in zip(self.e, other.e)),
            tuple(x + y for x, y in zip(self.b, other.b)),
            self.backend,
        )

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + (-other)

    def __neg__(self) -> "Bivector":
        return Bivector(tuple(-z for z in self.e), tuple(-z for z in self.b), self.backend)

    def _check(self, other: "Bivector") -> None:
        if not isinstance(other, Bivector):
            raise BivectorError(f"Expected Bivector, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BivectorError(f"Backend mismatch: {self.backend} vs {other.backend}")

    def components(self) -> tuple[Scalar, ...]:
        return self.e + self.b

    def is_real(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        if self.backend == RATIONAL:
            return all(z.is_real() for z in self.components())
        return all(abs(complex(z).imag) <= tolerance for z in self.components())

    def real_part(self) -> "Bivector":
        if self.backend == RATIONAL:
            return Bivector(
                tuple(z.real for z in self.e), tuple(z.real for z in self.b), self.backend
            )
        return Bivector(
            tuple(complex(z).real for z in self.e),
            tuple(complex(z).real for z in self.b),
            self.backend,
        )

    def to_float(self) -> "Bivector":
        if self.backend == FLOAT:
            return self
        return Bivector(
            tuple(complex(z) for z in self.e), tuple(complex(z) for z in self.b), FLOAT
        )

    def isclose(self, other: "Bivector", tolerance: float = DEFAULT_TOLERANCE) -> bool:
        self._check(other)
        if self.backend == RATIONAL:
            return self == other
        scale = max([1.0] + [abs(complex(z)) for z in self.components() + other.components()])
        diff = max(
            abs(complex(x) - complex(y)) for x, y in zip(self.components(), other.components())
        )
        return diff <= tolerance * scale

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        dtype = object if self.backend == RATIONAL else np.complex128
        e = np.empty(3, dtype=dtype)
        b = np.empty(3, dtype=dtype)
        for i in range(3):
            e[i] = self.e[i]
            b[i] = self.b[i]
        return e, b


@dataclass(frozen=True, slots=True)
class Sixtor:
    """F^1..F^6 (stored 0-based): F^1..F^3 = E, F^4..F^6 = B."""

    components: tuple[Scalar, Scalar, Scalar, Scalar, Scalar, Scalar]
    backend: str = RATIONAL

    def __post_init__(self) -> None:
        items = tuple(as_scalar(v, self.backend) for v in self.components)
        if len(items) != 6:
            raise BivectorError(f"A sixtor has 6 components, got {len(items)}")
        object.__setattr__(self, "components", items)

    def __getitem__(self, index: int) -> Scalar:
        return self.components[index]


@dataclass(frozen=True, slots=True)
class SelfDualParts:
    minus: Bivector
    plus: Bivector
    conj_minus: Bivector
    conj_plus: Bivector


@dataclass(frozen=True, slots=True)
class SelfDualProducts:
    """conj(minus)(x)minus, conj(plus)(x)plus, conj(minus)(x)plus, conj(plus)(x)minus."""

    mm: SmallTensor
    pp: SmallTensor
    mp: SmallTensor
    pm: SmallTensor


@dataclass(frozen=True, slots=True)
class LorentzTransform:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.matrix, dtype=np.float64)
        if lam.shape != (4, 4):
            raise BivectorError(f"Lorentz matrix must be 4x4, got {lam.shape}")
        g = np.diag([1.0, -1.0, -1.0, -1.0])
        if not np.allclose(lam.T @ g @ lam, g, rtol=0.0, atol=1e-9 * max(1.0, np.abs(lam).max() ** 2)):
            raise BivectorError("Matrix does not preserve the Minkowski metric")
        lam.flags.writeable = False
        object.__setattr__(self, "matrix", lam)

    @classmethod
    def identity(cls) -> "LorentzTransform":
        return cls(np.eye(4))

    def compose(self, other: "LorentzTransform") -> "LorentzTransform":
        """``self`` applied after ``other``."""
        return LorentzTransform(self.matrix @ other.matrix)

    def inverse(self) -> "LorentzTransform":
        g = np.diag([1.0, -1.0, -1.0, -1.0])
        return LorentzTransform(g @ self.matrix.T @ g)


# -- representations ------------------------------------------------------------


def matrix_form(f: Bivector) -> SmallTensor:
    comps = np.empty((4, 4), dtype=object)
    z = zero(f.backend)
    for idx in np.ndindex(4, 4):
        comps[idx] = z
    for i in range(3):
        comps[i + 1, 0] = f.e[i]
        comps[0, i + 1] = -f.e[i]
    for i, (a, b) in enumerate(SIXTOR_INDEX[3:]):
        comps[a, b] = f.b[i]
        comps[b, a] = -f.b[i]
    return SmallTensor(comps, (UPPER, UPPER), f.backend)


def from_matrix(t: SmallTensor, tolerance: float = DEFAULT_TOLERANCE) -> Bivector:
    if t.rank != 2:
        raise BivectorError(f"Expected a rank-2 tensor, got rank {t.rank}")
    for slot in range(2):
        t = adjust_index(t, slot, UPPER)
    if not (t + t.swap(0, 1)).is_zero(tolerance):
        raise NotAntisymmetricError("Matrix is not antisymmetric")
    c = t.components
    e = tuple(c[i + 1, 0] for i in range(3))
    b = tuple(c[a, bb] for a, bb in SIXTOR_INDEX[3:])
    return Bivector(e, b, t.backend)


def sixtor_form(f: Bivector) -> Sixtor:
    return Sixtor(f.e + f.b, f.backend)


def from_sixtor(s: Sixtor) -> Bivector:
    return Bivector(s.components[:3], s.components[3:], s.backend)


# -- duality --------------------------------------------------------------------


def dual(f: Bivector) -> Bivector:
    """*F^{ab} = 1/2 eps^{ab}_{mn} F^{mn}, via the tensor kernel."""
    eps = levi_civita4((UPPER, UPPER, LOWER, LOWER), f.backend)
    starred = contract_product(eps, matrix_form(f), [(2, 0), (3, 1)]).scale(Fraction(1, 2))
    return from_matrix(starred)


def duality_transform(f: Bivector) -> Bivector:
    """E -> -B, B -> E."""
    return Bivector(tuple(-z for z in f.b), f.e, f.backend)


def self_dual_parts(f: Bivector) -> SelfDualParts:
    i = imag_unit(f.backend)
    star = dual(f)
    half = Fraction(1, 2)
    minus = (f + star.scale(i)).scale(half)
    plus = (f - star.scale(i)).scale(half)
    fbar = f.conjugate()
    star_bar = dual(fbar)
    conj_minus = (fbar - star_bar.scale(i)).scale(half)
    conj_plus = (fbar + star_bar.scale(i)).scale(half)
    return SelfDualParts(minus=minus, plus=plus, conj_minus=conj_minus, conj_plus=conj_plus)


def self_dual_products(f: Bivector) -> SelfDualProducts:
    parts = self_dual_parts(f)
    m = matrix_form(parts.minus)
    p = matrix_form(parts.plus)
    cm = matrix_form(parts.conj_minus)
    cp = matrix_form(parts.conj_plus)
    return SelfDualProducts(mm=outer(cm, m), pp=outer(cp, p), mp=outer(cm, p), pm=outer(cp, m))


def phase_rotate(f: Bivector, phase: Any) -> Bivector:
    """Multiply F by a unit phase.

    Real numbers are angles (radians); complex numbers and Gaussian rationals
    are the unit factor itself. The exact backend accepts only exact unit
    factors (and the angle 0).
    """
    if isinstance(phase, (int, float, Fraction)) and not isinstance(phase, bool):
        if f.backend == RATIONAL:
            if phase != 0:
                raise BivectorError("Exact backend needs a unit Gaussian rational, not an angle")
            return f
        return f.scale(cmath.exp(1j * float(phase)))
    factor = as_scalar(phase, f.backend)
    if f.backend == RATIONAL:
        if not factor.is_unit():
            raise BivectorError(f"Phase factor {factor} does not have unit modulus")
    elif abs(abs(complex(factor)) - 1.0) > DEFAULT_TOLERANCE:
        raise BivectorError(f"Phase factor {factor} does not have unit modulus")
    return f.scale(factor)


# -- Lorentz group --------------------------------------------------------------


def make_boost(velocity: Sequence[float]) -> LorentzTransform:
    v = np.asarray(velocity, dtype=np.float64)
    if v.shape != (3,):
        raise BivectorError("Boost velocity must be a 3-vector")
    speed2 = float(v @ v)
    if speed2 >= 1.0:
        raise BivectorError(f"Boost speed {math.sqrt(speed2):.6g} must be below 1")
    lam = np.eye(4)
    if speed2 == 0.0:
        return LorentzTransform(lam)
    gamma = 1.0 / math.sqrt(1.0 - speed2)
    lam[0, 0] = gamma
    lam[0, 1:] = -gamma * v
    lam[1:, 0] = -gamma * v
    lam[1:, 1:] = np.eye(3) + (gamma - 1.0) * np.outer(v, v) / speed2
    return LorentzTransform(lam)


def make_rotation(axis: Sequence[float], angle: float) -> LorentzTransform:
    n = np.asarray(axis, dtype=np.float64)
    norm = float(np.linalg.norm(n))
    if n.shape != (3,) or norm == 0.0:
        raise BivectorError("Rotation axis must be a nonzero 3-vector")
    n = n / norm
    k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    rot = np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)
    lam = np.eye(4)
    lam[1:, 1:] = rot
    return LorentzTransform(lam)


def lorentz_transform(f: Bivector, transform: LorentzTransform) -> Bivector:
    """F'^{ab} = L^a_m L^b_n F^{mn} (float backend)."""
    lam = transform.matrix
    comps = lam @ matrix_form(f.to_float()).components @ lam.T
    return from_matrix(SmallTensor(comps, (UPPER, UPPER), FLOAT))


# -- generators -----------------------------------------------------------------


def random_bivector(seed: int, backend: str = RATIONAL, *, real: bool = False) -> Bivector:
    """Deterministic pseudo-random bivector.

    Float components are uniform in [-1, 1] for both parts; exact components
    are p/q with 1 <= q <= 16 and |p| <= q.
    """
    rng = np.random.default_rng(seed)
    if backend == FLOAT:
        parts = rng.uniform(-1.0, 1.0, size=(2, 2, 3))
        if real:
            parts[1] = 0.0
        values = parts[0] + 1j * parts[1]
        return Bivector(tuple(values[0]), tuple(values[1]), FLOAT)
    den = rng.integers(1, RANDOM_MAX_DENOMINATOR + 1, size=(2, 2, 3))
    num = rng.integers(-den, den + 1)
    if real:
        num[1] = 0

    def entry(k: int, i: int) -> GaussianRational:
        return GaussianRational(
            Fraction(int(num[0, k, i]), int(den[0, k, i])),
            Fraction(int(num[1, k, i]), int(den[1, k, i])),
        )

    return Bivector(
        tuple(entry(0, i) for i in range(3)), tuple(entry(1, i) for i in range(3)), RATIONAL
    )


def random_lorentz(seed: int, max_speed: float = 0.9) -> LorentzTransform:
    """A boost of speed <= max_speed composed with a rotation."""
    rng = np.random.default_rng(seed)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    speed = rng.uniform(0.0, max_speed)
    boost = make_boost(speed * direction)
    rotation = make_rotation(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
    return rotation.compose(boost)
