"""Hermitian-form extraction and exact rank counting.

A real-valued bilinear concomitant component c(F) is a hermitian form
sum_AB conj(F^A) H_AB F^B on sixtors. ``H`` is recovered by polarization from
36 probe evaluations and stored alongside its coordinates in the 36-dimensional
real space of 6x6 hermitian matrices: the 6 diagonal entries, then Re H_AB and
Im H_AB for the 15 pairs A < B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .bivector import Bivector, Sixtor, from_sixtor, random_bivector
from .concomitants import (
    ALL_TAGS,
    D2IRR,
    D4IRR,
    DPRIME,
    LMINUS,
    LPLUS,
    Q2,
    QPRIME,
    T2,
    TPRIME,
    X2IRR,
    X4IRR,
    XPRIME,
    ConcomitantSet,
    compute_concomitants,
)
from .scalar import RATIONAL, GaussianRational, Scalar, as_scalar, real_value
from .tensor import DEFAULT_TOLERANCE, epsilon_upper_0123

SIXTOR_DIM = 6
FULL_DIM = 36
REAL_DIM = 21
FULL = "full"
REAL_BIVECTORS = "real-bivectors"

_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a in range(SIXTOR_DIM) for b in range(a + 1, SIXTOR_DIM)
)
VERIFY_TRIALS = 8
_VERIFY_SEED = 7919

# Independent-component counts; each alternative set swaps D for X at either valence.
REFERENCE_COUNTS: dict[str, int] = {LPLUS: 1, LMINUS: 1, T2: 9, Q2: 9, D2IRR: 6, D4IRR: 10}
COMPLETE_SET: tuple[str, ...] = (LPLUS, LMINUS, T2, Q2, D2IRR, D4IRR)
ALTERNATIVE_SETS: tuple[tuple[str, ...], ...] = (
    (LPLUS, LMINUS, T2, Q2, D2IRR, D4IRR),
    (LPLUS, LMINUS, T2, Q2, X2IRR, D4IRR),
    (LPLUS, LMINUS, T2, Q2, D2IRR, X4IRR),
    (LPLUS, LMINUS, T2, Q2, X2IRR, X4IRR),
)
REAL_SET: tuple[str, ...] = (LPLUS, LMINUS, T2, D4IRR)
RAW_PAIRS: dict[str, tuple[str, str]] = {
    "Tprime+Qprime": (TPRIME, QPRIME),
    "Dprime+Xprime": (DPRIME, XPRIME),
    "Tprime+Dprime": (TPRIME, DPRIME),
}


class HermitianFormError(RuntimeError):
    pass


@dataclass(frozen=True, slots=True)
class HermitianFormMatrix:
    matrix: np.ndarray
    label: str
    vector: tuple[Fraction | float, ...]

    @classmethod
    def from_vector(
        cls, vector: Sequence[Fraction | float], label: str, backend: str = RATIONAL
    ) -> "HermitianFormMatrix":
        if len(vector) != FULL_DIM:
            raise HermitianFormError(f"Expected {FULL_DIM} coordinates, got {len(vector)}")
        dtype = object if backend == RATIONAL else np.complex128
        h = np.empty((SIXTOR_DIM, SIXTOR_DIM), dtype=dtype)
        for a in range(SIXTOR_DIM):
            h[a, a] = as_scalar(vector[a], backend)
        for k, (a, b) in enumerate(_PAIRS):
            re = vector[SIXTOR_DIM + k]
            im = vector[SIXTOR_DIM + len(_PAIRS) + k]
            if backend == RATIONAL:
                h[a, b] = GaussianRational(re, im)
            else:
                h[a, b] = complex(re, im)
            h[b, a] = h[a, b].conjugate()
        h.flags.writeable = False
        return cls(matrix=h, label=label, vector=tuple(vector))

    def is_zero(self) -> bool:
        return not any(self.vector)

    def is_hermitian(self) -> bool:
        h = self.matrix
        return all(
            h[a, b] == h[b, a].conjugate()
            for a in range(SIXTOR_DIM)
            for b in range(SIXTOR_DIM)
        )

    def evaluate(self, sixtor: Sixtor) -> Scalar:
        """sum_AB conj(F^A) H_AB F^B."""
        f = sixtor.components
        total = as_scalar(0, sixtor.backend)
        for a in range(SIXTOR_DIM):
            for b in range(SIXTOR_DIM):
                total = total + f[a].conjugate() * as_scalar(self.matrix[a, b], sixtor.backend) * f[b]
        return total

    def real_restriction(self) -> tuple[Fraction | float, ...]:
        """Coordinates that survive on real sixtors: diagonal and Re H_AB."""
        return self.vector[:REAL_DIM]


# -- probes ---------------------------------------------------------------------


def _basis_sixtor(backend: str, *terms: tuple[int, Scalar]) -> Bivector:
    values = [0] * SIXTOR_DIM
    for index, coefficient in terms:
        values[index] = coefficient
    return from_sixtor(Sixtor(tuple(values), backend))


def probe_bivectors(backend: str = RATIONAL) -> list[Bivector]:
    """e_A, then e_A + e_B, then e_A + i e_B for A < B."""
    i = GaussianRational(0, 1) if backend == RATIONAL else 1j
    probes = [_basis_sixtor(backend, (a, 1)) for a in range(SIXTOR_DIM)]
    probes += [_basis_sixtor(backend, (a, 1), (b, 1)) for a, b in _PAIRS]
    probes += [_basis_sixtor(backend, (a, 1), (b, i)) for a, b in _PAIRS]
    return probes


def _polarize(values: Sequence[Fraction | float]) -> list[Fraction | float]:
    d = values[:SIXTOR_DIM]
    s = values[SIXTOR_DIM : SIXTOR_DIM + len(_PAIRS)]
    t = values[SIXTOR_DIM + len(_PAIRS) :]
    half = Fraction(1, 2) if isinstance(d[0], Fraction) else 0.5
    re = [(s[k] - d[a] - d[b]) * half for k, (a, b) in enumerate(_PAIRS)]
    im = [(d[a] + d[b] - t[k]) * half for k, (a, b) in enumerate(_PAIRS)]
    return list(d) + re + im


def _gram_vector(f: Bivector) -> list[Fraction | float]:
    """w(F) with c(F) = v(H) . w(F) for every hermitian form H."""
    comps = f.e + f.b
    diag = [real_value(z.conjugate() * z) for z in comps]
    products = [comps[a].conjugate() * comps[b] for a, b in _PAIRS]
    if f.backend == RATIONAL:
        re = [2 * z.real for z in products]
        im = [-2 * z.imag for z in products]
    else:
        re = [2.0 * complex(z).real for z in products]
        im = [-2.0 * complex(z).imag for z in products]
    return diag + re + im


def _dot(v: Sequence[Fraction | float], w: Sequence[Fraction | float]) -> Fraction | float:
    return sum((x * y for x, y in zip(v, w)), Fraction(0) if isinstance(v[0], Fraction) else 0.0)


def _real_of(value: Scalar, backend: str, tolerance: float, label: str) -> Fraction | float:
    if backend == RATIONAL:
        z = as_scalar(value, RATIONAL)
        if not z.is_real():
            raise HermitianFormError(f"{label} returned a non-real value {z}")
        return z.real
    z = complex(value)
    if abs(z.imag) > tolerance * max(1.0, abs(z)):
        raise HermitianFormError(f"{label} returned a non-real value {z}")
    return z.real


def hermitian_form_matrix(
    component: Callable[[Bivector], Scalar],
    label: str = "",
    backend: str = RATIONAL,
    *,
    verify_trials: int = VERIFY_TRIALS,
    seed: int = _VERIFY_SEED,
    tolerance: float = DEFAULT_TOLERANCE,
) -> HermitianFormMatrix:
    """Recover H from a real-valued component by polarization, then check it."""
    values = [_real_of(component(p), backend, tolerance, label) for p in probe_bivectors(backend)]
    form = HermitianFormMatrix.from_vector(_polarize(values), label, backend)
    for k in range(verify_trials):
        f = random_bivector(seed + k, backend)
        expected = _real_of(component(f), backend, tolerance, label)
        _check_reconstruction(form, _gram_vector(f), expected, tolerance)
    return form


def _check_reconstruction(
    form: HermitianFormMatrix,
    gram: Sequence[Fraction | float],
    expected: Fraction | float,
    tolerance: float,
) -> None:
    got = _dot(form.vector, gram)
    if isinstance(got, Fraction):
        ok = got == expected
    else:
        ok = abs(got - float(expected)) <= tolerance * max(1.0, abs(float(expected)))
    if not ok:
        raise HermitianFormError(
            f"{form.label or 'component'} is not a hermitian form: "
            f"reconstruction gives {got}, direct evaluation {expected}"
        )


@lru_cache(maxsize=8)
def _probe_sets(backend: str, epsilon_sign: int) -> tuple[ConcomitantSet, ...]:
    return tuple(compute_concomitants(p) for p in probe_bivectors(backend))


@lru_cache(maxsize=8)
def _verification_sets(
    backend: str, epsilon_sign: int, trials: int, seed: int
) -> tuple[tuple[list[Fraction | float], ConcomitantSet], ...]:
    sets = (compute_concomitants(random_bivector(seed + k, backend)) for k in range(trials))
    return tuple((_gram_vector(s.source), s) for s in sets)


def _index_label(tag: str, index: tuple[int, ...], part: str) -> str:
    suffix = "" if part == "re" else ".im"
    if not index:
        return tag + suffix
    inner = ",".join(str(i) for i in index)
    return f"{tag}[{inner}]{suffix}"


def _part(value: Scalar, part: str, backend: str) -> Fraction | float:
    if backend == RATIONAL:
        z = as_scalar(value, RATIONAL)
        return z.real if part == "re" else z.imag
    z = complex(value)
    return z.real if part == "re" else z.imag


@lru_cache(maxsize=64)
def _cached_forms(
    tag: str,
    backend: str,
    epsilon_sign: int,
    verify_trials: int,
    seed: int,
    tolerance: float,
    include_zero: bool,
) -> tuple[HermitianFormMatrix, ...]:
    probes = [s.tensor(tag).components for s in _probe_sets(backend, epsilon_sign)]
    checks = [
        (gram, s.tensor(tag).components)
        for gram, s in _verification_sets(backend, epsilon_sign, verify_trials, seed)
    ]
    forms: list[HermitianFormMatrix] = []
    for index in np.ndindex(probes[0].shape):
        for part in ("re", "im"):
            values = [_part(p[index], part, backend) for p in probes]
            vector = _polarize(values)
            if not include_zero and not any(vector):
                continue
            form = HermitianFormMatrix.from_vector(vector, _index_label(tag, index, part), backend)
            for gram, comps in checks:
                _check_reconstruction(form, gram, _part(comps[index], part, backend), tolerance)
            forms.append(form)
    return tuple(forms)


def extract_hermitian_forms(
    tag: str,
    backend: str = RATIONAL,
    *,
    verify_trials: int = VERIFY_TRIALS,
    seed: int = _VERIFY_SEED,
    tolerance: float = DEFAULT_TOLERANCE,
    include_zero: bool = False,
) -> list[HermitianFormMatrix]:
    """Forms of every component of one concomitant.

    Complex-valued tensors contribute the real and imaginary part of each
    component as separate forms. Results are memoized per tag, backend and
    Levi-Civita sign, so repeated counts share one extraction.
    """
    if tag not in ALL_TAGS:
        raise HermitianFormError(f"Unknown concomitant: {tag!r}")
    return list(
        _cached_forms(
            tag, backend, epsilon_upper_0123(), verify_trials, seed, tolerance, include_zero
        )
    )


# -- rank -----------------------------------------------------------------------


def _integer_row(vector: Sequence[Fraction | int]) -> tuple[int, ...]:
    fractions = [Fraction(x) for x in vector]
    den = 1
    for x in fractions:
        den = math.lcm(den, x.denominator)
    row = [int(x * den) for x in fractions]
    g = 0
    for x in row:
        g = math.gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x:
            if x < 0:
                row = [-y for y in row]
            break
    return tuple(row)


def exact_rank(rows: Iterable[Sequence[Fraction | int]]) -> int:
    """Rank over Q by fraction-free elimination on integer rows."""
    unique = {_integer_row(r) for r in rows}
    basis: list[tuple[int, list[int]]] = []
    for candidate in unique:
        row = list(candidate)
        for pivot, b in basis:
            if row[pivot]:
                factor_row, factor_b = b[pivot], row[pivot]
                row = [factor_row * x - factor_b * y for x, y in zip(row, b)]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is not None:
            basis.append((lead, row))
    return len(basis)


def float_rank(rows: Iterable[Sequence[Fraction | float]], tolerance: float | None = None) -> int:
    data = [[float(x) for x in r] for r in rows]
    if not data:
        return 0
    return int(np.linalg.matrix_rank(np.array(data, dtype=np.float64), tol=tolerance))


def completeness_rank(
    forms: Sequence[HermitianFormMatrix], restriction: str = FULL, *, exact: bool = True
) -> int:
    if restriction == FULL:
        rows = [f.vector for f in forms]
    elif restriction == REAL_BIVECTORS:
        rows = [f.real_restriction() for f in forms]
    else:
        raise HermitianFormError(f"Unknown restriction: {restriction!r}")
    if not rows:
        return 0
    if exact and all(isinstance(x, Fraction) for x in rows[0]):
        return exact_rank(rows)
    return float_rank(rows)


def forms_for(tags: Iterable[str], backend: str = RATIONAL) -> list[HermitianFormMatrix]:
    forms: list[HermitianFormMatrix] = []
    for tag in tags:
        forms.extend(extract_hermitian_forms(tag, backend))
    return forms


def independent_component_count(tag: str, backend: str = RATIONAL) -> int:
    return completeness_rank(forms_for([tag], backend))


def raw_pair_ranks(backend: str = RATIONAL) -> dict[str, int]:
    return {
        name: completeness_rank(forms_for(pair, backend)) for name, pair in RAW_PAIRS.items()
    }
