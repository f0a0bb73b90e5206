"""Bilinear hermitian-form concomitants of a complex bivector."""

from .bivector import (
    Bivector,
    BivectorError,
    LorentzTransform,
    NotAntisymmetricError,
    dual,
    duality_transform,
    lorentz_transform,
    matrix_form,
    phase_rotate,
    random_bivector,
    self_dual_parts,
    sixtor_form,
)
from .concomitants import (
    ConcomitantError,
    ConcomitantSet,
    compute_concomitants,
    eb_oracle,
    irreducible_v2,
    irreducible_v4,
    reconstruct_v4,
    scalar_invariants,
    valence2_set,
    valence4_set,
)
from .config import ConcomConfig
from .documents import BivectorDocument, ConcomitantDocument, DocumentError
from .forms import (
    HermitianFormError,
    HermitianFormMatrix,
    completeness_rank,
    extract_hermitian_forms,
    hermitian_form_matrix,
    independent_component_count,
)
from .scalar import FLOAT, RATIONAL, GaussianRational
from .signal import SignalError, analytic_signal, concomitant_series, synth_plane_wave
from .suite_log import SuiteLogger
from .tensor import SmallTensor, TensorError
from .verify import PropertyReport, duality_eigenvalue, irreducibility_report, run_suite

__all__ = [
    "Bivector",
    "BivectorDocument",
    "BivectorError",
    "ConcomConfig",
    "ConcomitantDocument",
    "ConcomitantError",
    "ConcomitantSet",
    "DocumentError",
    "FLOAT",
    "GaussianRational",
    "HermitianFormError",
    "HermitianFormMatrix",
    "LorentzTransform",
    "NotAntisymmetricError",
    "PropertyReport",
    "RATIONAL",
    "SignalError",
    "SmallTensor",
    "SuiteLogger",
    "TensorError",
    "analytic_signal",
    "completeness_rank",
    "compute_concomitants",
    "concomitant_series",
    "dual",
    "duality_eigenvalue",
    "duality_transform",
    "eb_oracle",
    "extract_hermitian_forms",
    "hermitian_form_matrix",
    "independent_component_count",
    "irreducibility_report",
    "irreducible_v2",
    "irreducible_v4",
    "lorentz_transform",
    "matrix_form",
    "phase_rotate",
    "random_bivector",
    "reconstruct_v4",
    "run_suite",
    "scalar_invariants",
    "self_dual_parts",
    "sixtor_form",
    "synth_plane_wave",
    "valence2_set",
    "valence4_set",
]
