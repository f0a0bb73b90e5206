"""Bilinear hermitian-form concomitants of a complex bivector.

Everything here is built twice: once through abstract-index operations on
:class:`SmallTensor` (``compute_concomitants``) and once from plain 3-vector
algebra on (E, B) (``eb_oracle``). The two paths share no code beyond the
scalar backend, which is what lets each check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .bivector import SIXTOR_INDEX, Bivector, dual, matrix_form
from .scalar import (
    RATIONAL,
    Scalar,
    as_scalar,
    conj,
    full,
    imag_part,
    imag_unit,
    real_part,
    to_backend_array,
)
from .tensor import (
    DEFAULT_TOLERANCE,
    LOWER,
    SIGNATURE,
    UPPER,
    SmallTensor,
    adjust_index,
    contract,
    contract_product,
    epsilon_upper_0123,
    levi_civita4,
    metric,
    outer,
    relabel,
)

LPLUS = "Lplus"
LMINUS = "Lminus"
T2 = "T2"
Q2 = "Q2"
D2RAW = "D2raw"
X2RAW = "X2raw"
D2IRR = "D2irr"
X2IRR = "X2irr"
TPRIME = "Tprime"
QPRIME = "Qprime"
DPRIME = "Dprime"
XPRIME = "Xprime"
D4IRR = "D4irr"
X4IRR = "X4irr"

VALENCE2_TAGS = (T2, Q2, D2RAW, X2RAW, D2IRR, X2IRR)
VALENCE4_TAGS = (TPRIME, QPRIME, DPRIME, XPRIME, D4IRR, X4IRR)
SCALAR_TAGS = (LPLUS, LMINUS)
ALL_TAGS = SCALAR_TAGS + VALENCE2_TAGS + VALENCE4_TAGS


class ConcomitantError(RuntimeError):
    pass


@dataclass(frozen=True, slots=True)
class Valence4Concomitant:
    tag: str
    tensor: SmallTensor

    def __post_init__(self) -> None:
        if self.tag not in VALENCE4_TAGS:
            raise ConcomitantError(f"Unknown valence-4 tag: {self.tag!r}")
        if self.tensor.variance != (UPPER,) * 4:
            raise ConcomitantError(f"{self.tag} must be a rank-4 contravariant tensor")


@dataclass(frozen=True, slots=True)
class Valence2Concomitant:
    tag: str
    tensor: SmallTensor

    def __post_init__(self) -> None:
        if self.tag not in VALENCE2_TAGS:
            raise ConcomitantError(f"Unknown valence-2 tag: {self.tag!r}")
        if self.tensor.variance != (UPPER, UPPER):
            raise ConcomitantError(f"{self.tag} must be a rank-2 contravariant tensor")


@dataclass(frozen=True, slots=True)
class InvariantScalars:
    lplus: Scalar
    lminus: Scalar


@dataclass(frozen=True, slots=True)
class Convention:
    signature: str
    epsilon_upper_0123: int
    backend: str

    @classmethod
    def current(cls, backend: str) -> "Convention":
        return cls(SIGNATURE, epsilon_upper_0123(), backend)

    def as_dict(self) -> dict[str, Any]:
        return {
            "signature": self.signature,
            "epsilon_upper_0123": self.epsilon_upper_0123,
            "backend": self.backend,
        }


@dataclass(frozen=True, slots=True)
class ConcomitantSet:
    source: Bivector
    scalars: InvariantScalars
    valence2: dict[str, Valence2Concomitant]
    valence2raw: dict[str, Valence2Concomitant]
    valence4raw: dict[str, Valence4Concomitant]
    valence4irr: dict[str, Valence4Concomitant]
    convention: Convention

    def members(self) -> dict[str, SmallTensor]:
        backend = self.convention.backend
        out: dict[str, SmallTensor] = {
            LPLUS: SmallTensor.scalar_value(self.scalars.lplus, backend),
            LMINUS: SmallTensor.scalar_value(self.scalars.lminus, backend),
        }
        for group in (self.valence2, self.valence2raw, self.valence4raw, self.valence4irr):
            for tag, item in group.items():
                out[tag] = item.tensor
        return out

    def tensor(self, tag: str) -> SmallTensor:
        members = self.members()
        if tag not in members:
            raise ConcomitantError(f"Unknown concomitant: {tag!r}")
        return members[tag]

    def difference(self, other: "ConcomitantSet") -> dict[str, float]:
        """Worst absolute component difference per member."""
        mine = self.members()
        theirs = other.members()
        out: dict[str, float] = {}
        for tag, tensor in mine.items():
            a, b = tensor, theirs[tag]
            if a.backend != b.backend:
                a, b = a.to_float(), b.to_float()
            out[tag] = a.residual(b)
        return out

    def matches(self, other: "ConcomitantSet", tolerance: float = DEFAULT_TOLERANCE) -> bool:
        theirs = other.members()
        for tag, tensor in self.members().items():
            other_tensor = theirs[tag]
            if tensor.backend != other_tensor.backend:
                tensor, other_tensor = tensor.to_float(), other_tensor.to_float()
            if not tensor.equals(other_tensor, tolerance):
                return False
        return True


@dataclass(frozen=True, slots=True)
class RealReferenceInvariants:
    lplus_r: Scalar
    lminus_r: Scalar
    stress: SmallTensor


# -- abstract-index construction ------------------------------------------------


def _half(backend: str) -> Scalar:
    return as_scalar(Fraction(1, 2), backend)


def valence4_set(f: Bivector) -> dict[str, Valence4Concomitant]:
    """T', Q', D', X' from F-bar (x) F products with the dual mixed in."""
    backend = f.backend
    fm = matrix_form(f)
    fs = matrix_form(dual(f))
    fb = fm.conj()
    fsb = fs.conj()
    half = _half(backend)
    i = imag_unit(backend)
    plain = outer(fb, fm)
    starred = outer(fsb, fs)
    mixed = outer(fb, fs)
    mixed_conj = outer(fsb, fm)
    return {
        TPRIME: Valence4Concomitant(TPRIME, (plain + starred).scale(half)),
        QPRIME: Valence4Concomitant(QPRIME, (mixed - mixed_conj).scale(i * half)),
        DPRIME: Valence4Concomitant(DPRIME, (plain - starred).scale(half)),
        XPRIME: Valence4Concomitant(XPRIME, (mixed + mixed_conj).scale(half)),
    }


def sixtor_matrix(t: Valence4Concomitant | SmallTensor) -> np.ndarray:
    """M^{AB} = t^{ab cd} with A <-> [ab], B <-> [cd]."""
    tensor = t.tensor if isinstance(t, Valence4Concomitant) else t
    if tensor.rank != 4:
        raise ConcomitantError(f"Sixtor matrices need a rank-4 tensor, got rank {tensor.rank}")
    comps = tensor.components
    out = np.empty((6, 6), dtype=comps.dtype)
    for row, (a, b) in enumerate(SIXTOR_INDEX):
        for col, (c, d) in enumerate(SIXTOR_INDEX):
            out[row, col] = comps[a, b, c, d]
    return out


def tensor_from_sixtor(matrix: np.ndarray, backend: str = RATIONAL) -> SmallTensor:
    """Inverse of :func:`sixtor_matrix` for tensors antisymmetric in each pair."""
    m = np.asarray(matrix)
    if m.shape != (6, 6):
        raise ConcomitantError(f"Sixtor matrix must be 6x6, got {m.shape}")
    comps = full((4, 4, 4, 4), 0, backend)
    for row, (a, b) in enumerate(SIXTOR_INDEX):
        for col, (c, d) in enumerate(SIXTOR_INDEX):
            value = as_scalar(m[row, col], backend)
            comps[a, b, c, d] = value
            comps[b, a, c, d] = -value
            comps[a, b, d, c] = -value
            comps[b, a, d, c] = value
    return SmallTensor(comps, (UPPER,) * 4, backend)


def middle_contraction(t: SmallTensor) -> SmallTensor:
    """t^{a m n b} g_{mn}."""
    return contract(adjust_index(t, 2, LOWER), 1, 2)


def contraction(t: SmallTensor, slot_a: int, slot_b: int) -> SmallTensor:
    """Metric trace of an all-contravariant tensor over any two slots."""
    return contract(adjust_index(t, slot_b, LOWER), slot_a, slot_b)


def valence2_set(f: Bivector) -> dict[str, Valence2Concomitant]:
    return _valence2_from(valence4_set(f))


def _valence2_from(v4: dict[str, Valence4Concomitant]) -> dict[str, Valence2Concomitant]:
    pairs = ((T2, TPRIME), (Q2, QPRIME), (D2RAW, DPRIME), (X2RAW, XPRIME))
    return {
        tag: Valence2Concomitant(tag, middle_contraction(v4[source].tensor))
        for tag, source in pairs
    }


def metric_trace(t: SmallTensor) -> Scalar:
    """t^{mn} g_{mn}."""
    if t.rank != 2:
        raise ConcomitantError(f"Metric trace needs a rank-2 tensor, got rank {t.rank}")
    return contraction(t, 0, 1).scalar()


def _is_zero_scalar(value: Any, tolerance: float, scale: float) -> bool:
    if isinstance(value, (complex, float)):
        return abs(value) <= tolerance * max(1.0, scale)
    return not value


def _scalars_from(
    v2: dict[str, Valence2Concomitant], tolerance: float = DEFAULT_TOLERANCE
) -> InvariantScalars:
    backend = v2[T2].tensor.backend
    quarter = as_scalar(Fraction(1, 4), backend)
    scale = max(item.tensor.max_abs() for item in v2.values())
    for tag in (T2, Q2):
        trace = metric_trace(v2[tag].tensor)
        if not _is_zero_scalar(trace, tolerance, scale):
            raise ConcomitantError(f"{tag} is not trace-free: trace = {trace}")
    lplus = metric_trace(v2[D2RAW].tensor) * quarter
    lminus = metric_trace(v2[X2RAW].tensor) * quarter
    for name, value in ((LPLUS, lplus), (LMINUS, lminus)):
        if not _is_zero_scalar(value.imag, tolerance, scale):
            raise ConcomitantError(f"{name} has a nonzero imaginary part: {value}")
    return InvariantScalars(lplus=lplus, lminus=lminus)


def scalar_invariants(f: Bivector, tolerance: float = DEFAULT_TOLERANCE) -> InvariantScalars:
    return _scalars_from(valence2_set(f), tolerance)


def _irreducible_v2_from(
    v2: dict[str, Valence2Concomitant], scalars: InvariantScalars
) -> dict[str, Valence2Concomitant]:
    backend = v2[T2].tensor.backend
    g = metric((UPPER, UPPER), backend)
    minus_i = -imag_unit(backend)
    d = (v2[D2RAW].tensor - g.scale(scalars.lplus)).scale(minus_i)
    x = (v2[X2RAW].tensor - g.scale(scalars.lminus)).scale(minus_i)
    return {D2IRR: Valence2Concomitant(D2IRR, d), X2IRR: Valence2Concomitant(X2IRR, x)}


def irreducible_v2(f: Bivector) -> tuple[Valence2Concomitant, Valence2Concomitant]:
    v2 = valence2_set(f)
    irr = _irreducible_v2_from(v2, _scalars_from(v2))
    return irr[D2IRR], irr[X2IRR]


def bracket_with_metric(a: SmallTensor) -> SmallTensor:
    """a^{ad}g^{gb} - a^{ag}g^{db} - a^{bd}g^{ga} + a^{bg}g^{da}.

    Four times the doubly antisymmetrized product a^{[a[d} g^{g]b]}.
    """
    if a.variance != (UPPER, UPPER):
        raise ConcomitantError("bracket_with_metric needs a rank-2 contravariant tensor")
    o = outer(a, metric((UPPER, UPPER), a.backend))
    return (
        relabel(o, "adgb", "abgd")
        - relabel(o, "agdb", "abgd")
        - relabel(o, "bdga", "abgd")
        + relabel(o, "bgda", "abgd")
    )


def metric_bracket(backend: str = RATIONAL) -> SmallTensor:
    """g^{ad}g^{gb} - g^{ag}g^{db}, i.e. 2 g^{a[d}g^{g]b}."""
    return bracket_with_metric(metric((UPPER, UPPER), backend)).scale(_half(backend))


def cyclic_epsilon_terms(a: SmallTensor) -> SmallTensor:
    """W^{abgd} - W^{bgda} - W^{gdab} + W^{dabg} with W^{abgd} = a^{am} eps_m^{bgd}."""
    if a.variance != (UPPER, UPPER):
        raise ConcomitantError("cyclic_epsilon_terms needs a rank-2 contravariant tensor")
    eps = levi_civita4(UPPER, a.backend)
    w = contract_product(adjust_index(a, 1, LOWER), eps, [(1, 0)])
    return (
        w
        - relabel(w, "bgda", "abgd")
        - relabel(w, "gdab", "abgd")
        + relabel(w, "dabg", "abgd")
    )


def _reconstruct(primary: SmallTensor, partner: SmallTensor) -> SmallTensor:
    backend = primary.backend
    quarter_i = imag_unit(backend) * as_scalar(Fraction(1, 4), backend)
    return bracket_with_metric(primary).scale(_half(backend)) - cyclic_epsilon_terms(
        partner
    ).scale(quarter_i)


def reconstruct_v4(
    primary: Valence2Concomitant, partner: Valence2Concomitant
) -> Valence4Concomitant:
    """Rebuild T' from (T2, Q2) or Q' from (Q2, T2).

    The metric part comes from ``primary``; the alternating-tensor part comes
    from ``partner``.
    """
    expected = {T2: (Q2, TPRIME), Q2: (T2, QPRIME)}
    if primary.tag not in expected:
        raise ConcomitantError(f"Only T2 and Q2 rebuild a valence-4 tensor, got {primary.tag}")
    partner_tag, result_tag = expected[primary.tag]
    if partner.tag != partner_tag:
        raise ConcomitantError(
            f"{primary.tag} must be paired with {partner_tag}, got {partner.tag}"
        )
    return Valence4Concomitant(result_tag, _reconstruct(primary.tensor, partner.tensor))


def _irreducible_v4_from(
    v4: dict[str, Valence4Concomitant],
    irr2: dict[str, Valence2Concomitant],
    scalars: InvariantScalars,
) -> dict[str, Valence4Concomitant]:
    backend = v4[DPRIME].tensor.backend
    half_i = imag_unit(backend) * _half(backend)
    third = as_scalar(Fraction(1, 3), backend)
    g2 = metric_bracket(backend)
    eps = levi_civita4(UPPER, backend)
    lp = scalars.lplus * third
    lm = scalars.lminus * third
    d4 = (
        v4[DPRIME].tensor
        - bracket_with_metric(irr2[D2IRR].tensor).scale(half_i)
        - g2.scale(lp)
        - eps.scale(lm)
    )
    x4 = (
        v4[XPRIME].tensor
        - bracket_with_metric(irr2[X2IRR].tensor).scale(half_i)
        - g2.scale(lm)
        + eps.scale(lp)
    )
    return {D4IRR: Valence4Concomitant(D4IRR, d4), X4IRR: Valence4Concomitant(X4IRR, x4)}


def irreducible_v4(f: Bivector) -> tuple[Valence4Concomitant, Valence4Concomitant]:
    cs = compute_concomitants(f)
    return cs.valence4irr[D4IRR], cs.valence4irr[X4IRR]


def rank2_dual(t: SmallTensor) -> SmallTensor:
    """1/2 eps^{ab}_{mn} t^{mn}."""
    if t.variance != (UPPER, UPPER):
        raise ConcomitantError("rank2_dual needs a rank-2 contravariant tensor")
    eps = levi_civita4((UPPER, UPPER, LOWER, LOWER), t.backend)
    return contract_product(eps, t, [(2, 0), (3, 1)]).scale(_half(t.backend))


def left_dual(t: SmallTensor) -> SmallTensor:
    """1/2 eps^{ab}_{mn} t^{mn gd}: the dual over the leftmost index pair."""
    if t.variance != (UPPER,) * 4:
        raise ConcomitantError("left_dual needs a rank-4 contravariant tensor")
    eps = levi_civita4((UPPER, UPPER, LOWER, LOWER), t.backend)
    return contract_product(eps, t, [(2, 0), (3, 1)]).scale(_half(t.backend))


def compute_concomitants(f: Bivector, tolerance: float = DEFAULT_TOLERANCE) -> ConcomitantSet:
    v4 = valence4_set(f)
    v2raw = _valence2_from(v4)
    scalars = _scalars_from(v2raw, tolerance)
    irr2 = _irreducible_v2_from(v2raw, scalars)
    irr4 = _irreducible_v4_from(v4, irr2, scalars)
    return ConcomitantSet(
        source=f,
        scalars=scalars,
        valence2={T2: v2raw[T2], Q2: v2raw[Q2], D2IRR: irr2[D2IRR], X2IRR: irr2[X2IRR]},
        valence2raw={D2RAW: v2raw[D2RAW], X2RAW: v2raw[X2RAW]},
        valence4raw=v4,
        valence4irr=irr4,
        convention=Convention.current(f.backend),
    )


# -- 3-vector formulas ----------------------------------------------------------
#
# Helpers below take E, B arrays of shape (..., 3) so the signal pipeline can
# evaluate whole time series at once.


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.stack(
        [
            a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
            a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
            a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
        ],
        axis=-1,
    )


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a * b).sum(axis=-1)


def _outer3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., :, None] * b[..., None, :]


def _eye3(value: np.ndarray) -> np.ndarray:
    return np.eye(3, dtype=int) * value[..., None, None]


def _assemble(
    c00: np.ndarray, col: np.ndarray, row: np.ndarray, space: np.ndarray, backend: str
) -> np.ndarray:
    """4x4 blocks: [0,0] = c00, [i,0] = col, [0,j] = row, [i,j] = space."""
    out = full(c00.shape + (4, 4), 0, backend)
    out[..., 0, 0] = c00
    out[..., 1:, 0] = col
    out[..., 0, 1:] = row
    out[..., 1:, 1:] = space
    return out


def _blocks(ul: np.ndarray, ur: np.ndarray, ll: np.ndarray, lr: np.ndarray) -> np.ndarray:
    top = np.concatenate([ul, ur], axis=-1)
    bottom = np.concatenate([ll, lr], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _field_arrays(e: Any, b: Any, backend: str) -> tuple[np.ndarray, np.ndarray, bool]:
    """Backend arrays of shape (n, 3); the flag marks a single (3,) input."""
    e_arr = to_backend_array(e, backend)
    b_arr = to_backend_array(b, backend)
    if e_arr.shape[-1:] != (3,) or b_arr.shape != e_arr.shape or e_arr.ndim > 2:
        raise ConcomitantError(
            f"E and B must be matching (3,) or (n, 3) arrays, got {e_arr.shape}, {b_arr.shape}"
        )
    single = e_arr.ndim == 1
    if single:
        e_arr, b_arr = e_arr[None, :], b_arr[None, :]
    return e_arr, b_arr, single


def _unbatch(values: dict[str, np.ndarray], single: bool) -> dict[str, Any]:
    if not single:
        return values
    return {tag: array[0] for tag, array in values.items()}


def eb_components(e: Any, b: Any, backend: str) -> dict[str, np.ndarray]:
    """Valence-2 and scalar concomitants from 3-vector algebra alone.

    Keys: ``T2``, ``Q2``, ``D2raw``, ``X2raw``, ``D2irr``, ``X2irr`` map to
    (n, 4, 4) arrays and ``Lplus``, ``Lminus`` to (n,) arrays; a single (3,)
    input drops the leading axis.
    """
    e, b, single = _field_arrays(e, b, backend)
    eb, bb = conj(e), conj(b)
    half = _half(backend)
    i = imag_unit(backend)

    t00 = (_dot(eb, e) + _dot(bb, b)) * half
    lplus = (_dot(eb, e) - _dot(bb, b)) * half
    lminus = -real_part(_dot(eb, b))
    q00 = imag_part(_dot(eb, b))

    poynting = _cross(eb, b)
    spin = (_cross(eb, e) + _cross(bb, b)) * (i * half)
    v = _cross(eb, e) - _cross(bb, b)
    n = _outer3(eb, e) - _outer3(bb, b)
    m = _outer3(eb, b) + _outer3(bb, e)
    sym_eb = _outer3(eb, b) + np.swapaxes(_outer3(eb, b), -1, -2)

    t_space = -real_part(_outer3(eb, e) + _outer3(bb, b)) + _eye3(t00)
    q_space = -imag_part(sym_eb) + _eye3(q00)
    re_poynting = real_part(poynting)
    im_poynting = imag_part(poynting)

    out = {
        T2: _assemble(t00, re_poynting, re_poynting, t_space, backend),
        Q2: _assemble(q00, spin, spin, q_space, backend),
        D2RAW: _assemble(
            lplus,
            -i * im_poynting,
            i * im_poynting,
            i * -imag_part(n) - _eye3(lplus),
            backend,
        ),
        X2RAW: _assemble(
            lminus, -v * half, v * half, i * imag_part(m) - _eye3(lminus), backend
        ),
        D2IRR: _assemble(
            full(lplus.shape, 0, backend), -im_poynting, im_poynting, -imag_part(n), backend
        ),
        X2IRR: _assemble(
            full(lplus.shape, 0, backend),
            v * (i * half),
            -v * (i * half),
            imag_part(m),
            backend,
        ),
        LPLUS: lplus,
        LMINUS: lminus,
    }
    return _unbatch(out, single)


def eb_sixtor_blocks(e: Any, b: Any, backend: str) -> dict[str, np.ndarray]:
    """6x6 sixtor matrices of every valence-4 concomitant from (E, B)."""
    e, b, single = _field_arrays(e, b, backend)
    eb, bb = conj(e), conj(b)
    half = _half(backend)
    i = imag_unit(backend)
    two_thirds = as_scalar(Fraction(2, 3), backend)

    s = _outer3(eb, e) + _outer3(bb, b)
    p = _outer3(eb, b) - _outer3(bb, e)
    n = _outer3(eb, e) - _outer3(bb, b)
    m = _outer3(eb, b) + _outer3(bb, e)
    lplus = (_dot(eb, e) - _dot(bb, b)) * half
    lminus = -real_part(_dot(eb, b))
    n_trace_free = real_part(n) - _eye3(lplus * two_thirds)
    m_trace_free = real_part(m) + _eye3(lminus * two_thirds)

    out = {
        TPRIME: _blocks(s, p, -p, s) * half,
        QPRIME: _blocks(-p, s, -s, -p) * (i * half),
        DPRIME: _blocks(n, m, m, -n) * half,
        XPRIME: _blocks(-m, n, n, m) * half,
        D4IRR: _blocks(n_trace_free, m_trace_free, m_trace_free, -n_trace_free) * half,
        X4IRR: _blocks(-m_trace_free, n_trace_free, n_trace_free, m_trace_free) * half,
    }
    return _unbatch(out, single)


def eb_oracle(f: Bivector) -> ConcomitantSet:
    """Every concomitant of ``f`` from dot, cross and outer products of E and B."""
    backend = f.backend
    e, b = f.as_arrays()
    comps = eb_components(e, b, backend)
    blocks = eb_sixtor_blocks(e, b, backend)

    def v2(tag: str) -> Valence2Concomitant:
        return Valence2Concomitant(tag, SmallTensor(comps[tag], (UPPER, UPPER), backend))

    def v4(tag: str) -> Valence4Concomitant:
        return Valence4Concomitant(tag, tensor_from_sixtor(blocks[tag], backend))

    return ConcomitantSet(
        source=f,
        scalars=InvariantScalars(lplus=comps[LPLUS], lminus=comps[LMINUS]),
        valence2={tag: v2(tag) for tag in (T2, Q2, D2IRR, X2IRR)},
        valence2raw={tag: v2(tag) for tag in (D2RAW, X2RAW)},
        valence4raw={tag: v4(tag) for tag in (TPRIME, QPRIME, DPRIME, XPRIME)},
        valence4irr={tag: v4(tag) for tag in (D4IRR, X4IRR)},
        convention=Convention.current(backend),
    )


# -- real bivectors -------------------------------------------------------------


def real_reference(f: Bivector, tolerance: float = DEFAULT_TOLERANCE) -> RealReferenceInvariants:
    """Classical invariants and stress tensor of a real field strength."""
    if not f.is_real(tolerance):
        raise ConcomitantError("real_reference needs a bivector with zero imaginary part")
    backend = f.backend
    fm = matrix_form(f.real_part())
    f_low = adjust_index(adjust_index(fm, 0, LOWER), 1, LOWER)
    quarter = as_scalar(Fraction(1, 4), backend)
    eighth = as_scalar(Fraction(1, 8), backend)

    lplus_r = contract_product(fm, f_low, [(0, 1), (1, 0)]).scalar() * quarter
    eps_low = levi_civita4(LOWER, backend)
    w = contract_product(fm, eps_low, [(0, 1), (1, 0)])
    lminus_r = contract_product(fm, w, [(0, 0), (1, 1)]).scalar() * eighth
    product = contract_product(adjust_index(fm, 1, LOWER), fm, [(1, 0)])
    stress = product - metric((UPPER, UPPER), backend).scale(lplus_r)
    return RealReferenceInvariants(lplus_r=lplus_r, lminus_r=lminus_r, stress=stress)
