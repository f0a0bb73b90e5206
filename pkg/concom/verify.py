"""Property checks over the concomitant set and the verification suite."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from concurrent.futures.process import BrokenProcessPool
from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from rich.table import Table

from .bivector import (
    EXACT_UNIT_PHASES,
    Bivector,
    dual,
    duality_transform,
    lorentz_transform,
    matrix_form,
    phase_rotate,
    random_bivector,
    random_lorentz,
    self_dual_parts,
    self_dual_products,
)
from .concomitants import (
    ALL_TAGS,
    D2IRR,
    D2RAW,
    D4IRR,
    DPRIME,
    LMINUS,
    LPLUS,
    Q2,
    QPRIME,
    T2,
    TPRIME,
    VALENCE4_TAGS,
    X2IRR,
    X2RAW,
    X4IRR,
    XPRIME,
    ConcomitantError,
    ConcomitantSet,
    Valence2Concomitant,
    bracket_with_metric,
    compute_concomitants,
    contraction,
    cyclic_epsilon_terms,
    eb_oracle,
    left_dual,
    metric_trace,
    middle_contraction,
    rank2_dual,
    real_reference,
    reconstruct_v4,
    sixtor_matrix,
    tensor_from_sixtor,
)
from .config import ConcomConfig
from .forms import (
    ALTERNATIVE_SETS,
    COMPLETE_SET,
    FULL,
    RAW_PAIRS,
    REAL_BIVECTORS,
    REAL_SET,
    REFERENCE_COUNTS,
    completeness_rank,
    float_rank,
    forms_for,
)
from .scalar import FLOAT, RATIONAL, GaussianRational, Scalar, as_scalar, conj, imag_unit
from .suite_log import SuiteLogger
from .tensor import (
    DEFAULT_TOLERANCE,
    LOWER,
    SIGNATURE,
    UPPER,
    SmallTensor,
    contract_product,
    epsilon_upper_0123,
    flipped_epsilon,
    levi_civita4,
    lorentz_apply,
    outer,
)

EventCallback = Callable[[str], None]
# (check payloads, measured duality signs) from one chunk of trials
_ChunkOutcome = tuple[list[dict[str, Any]], dict[str, int | str | None]]

MIXED = "mixed"
UNDETERMINED = "undetermined"
# Measured by the suite; kept here so reports can flag a change.
EXPECTED_DUALITY_SIGNS: dict[str, int] = {
    LPLUS: -1,
    LMINUS: -1,
    T2: 1,
    Q2: 1,
    D2IRR: -1,
    X2IRR: -1,
    TPRIME: 1,
    QPRIME: 1,
    DPRIME: -1,
    XPRIME: -1,
    D4IRR: -1,
    X4IRR: -1,
}
COUNT_DEFINITION = (
    "real dimension of the span of the hermitian-form matrices of all real and "
    "imaginary parts of the concomitant's components, inside the 36-dimensional "
    "real space of 6x6 hermitian matrices"
)
RAW_COUNT_NOTE = (
    "each raw valence-4 tensor spans 18 real dimensions, i.e. half of the 36 real "
    "degrees of freedom of a 6x6 hermitian matrix"
)
# Smallest trial count an auto-sized pool (workers=0) is used for.
AUTO_PARALLEL_MIN_TRIALS = 50


# -- irreducibility -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IrreducibilityReport:
    rank: int
    residuals: dict[str, float]
    failures: tuple[str, ...]

    @property
    def certified(self) -> bool:
        return not self.failures


def _vanishes(t: SmallTensor, tolerance: float, scale: float) -> bool:
    if t.backend == RATIONAL:
        return t.is_zero()
    return t.max_abs() <= tolerance * max(1.0, scale)


def irreducibility_report(
    t: SmallTensor, tolerance: float = DEFAULT_TOLERANCE
) -> IrreducibilityReport:
    """Every trace and alternating-tensor contraction of ``t``."""
    if any(v != UPPER for v in t.variance):
        raise ConcomitantError("irreducibility_report expects an all-contravariant tensor")
    scale = t.max_abs()
    checks: dict[str, SmallTensor] = {}
    if t.rank == 2:
        checks["trace"] = SmallTensor.scalar_value(metric_trace(t), t.backend)
    elif t.rank == 4:
        for a in range(4):
            for b in range(a + 1, 4):
                checks[f"trace[{a},{b}]"] = contraction(t, a, b)
        eps = levi_civita4(LOWER, t.backend)
        checks["epsilon_full"] = contract_product(eps, t, [(0, 0), (1, 1), (2, 2), (3, 3)])
        for free in range(4):
            others = [s for s in range(4) if s != free]
            checks[f"epsilon_triple[{free}]"] = contract_product(
                eps, t, [(1, others[0]), (2, others[1]), (3, others[2])]
            )
    else:
        raise ConcomitantError(f"Irreducibility is defined for rank 2 or 4, got rank {t.rank}")
    residuals = {name: value.max_abs() for name, value in checks.items()}
    failures = tuple(
        name for name, value in checks.items() if not _vanishes(value, tolerance, scale)
    )
    return IrreducibilityReport(rank=t.rank, residuals=residuals, failures=failures)


# -- duality eigenvalues --------------------------------------------------------


def _sign_between(before: SmallTensor, after: SmallTensor, tolerance: float) -> int | None:
    """+1 or -1 if ``after`` is that multiple of ``before``; 0 if neither; None if both vanish."""
    if before.is_zero(tolerance) and after.is_zero(tolerance):
        return None
    if after.equals(before, tolerance):
        return 1
    if after.equals(-before, tolerance):
        return -1
    return 0


def _fold_sign(current: int | str | None, measured: int | None) -> int | str | None:
    if measured is None or current == MIXED:
        return current
    if measured == 0:
        return MIXED
    if current is None:
        return measured
    return current if current == measured else MIXED


def duality_eigenvalue(
    functional: Callable[[Bivector], SmallTensor],
    trials: int,
    seed: int = 0,
    backend: str = RATIONAL,
    tolerance: float = DEFAULT_TOLERANCE,
) -> int | str:
    """Sign by which ``functional`` changes under E -> -B, B -> E."""
    if trials < 1:
        raise ValueError("duality_eigenvalue needs at least one trial")
    sign: int | str | None = None
    for k in range(trials):
        f = random_bivector(seed + k, backend)
        sign = _fold_sign(sign, _sign_between(functional(f), functional(duality_transform(f)), tolerance))
    return MIXED if sign is None else sign


def duality_signs(
    f: Bivector, cs: ConcomitantSet | None = None, tolerance: float = DEFAULT_TOLERANCE
) -> dict[str, int | str]:
    """Per-concomitant sign under the duality transform, for one bivector."""
    before = (cs or compute_concomitants(f, tolerance)).members()
    after = compute_concomitants(duality_transform(f), tolerance).members()
    out: dict[str, int | str] = {}
    for tag in EXPECTED_DUALITY_SIGNS:
        sign = _sign_between(before[tag], after[tag], tolerance)
        out[tag] = UNDETERMINED if sign is None else (MIXED if sign == 0 else sign)
    return out


def duality_sign_table(
    trials: int, seed: int = 0, backend: str = RATIONAL, tolerance: float = DEFAULT_TOLERANCE
) -> dict[str, int | str]:
    """Fold ``duality_signs`` over seeded random bivectors."""
    if trials < 1:
        raise ValueError("duality_sign_table needs at least one trial")
    folded: dict[str, int | str | None] = {tag: None for tag in EXPECTED_DUALITY_SIGNS}
    for k in range(trials):
        for tag, sign in duality_signs(random_bivector(seed + k, backend), tolerance=tolerance).items():
            measured = None if sign == UNDETERMINED else (0 if sign == MIXED else int(sign))
            folded[tag] = _fold_sign(folded[tag], measured)
    return {tag: MIXED if sign is None else sign for tag, sign in folded.items()}


# -- reconstruction fit ---------------------------------------------------------


def _solve_exact(columns: list[list[GaussianRational]], rhs: list[GaussianRational]) -> list[GaussianRational]:
    width = len(columns)
    rows = [
        [col[r] for col in columns] + [rhs[r]]
        for r in range(len(rhs))
        if any(col[r] for col in columns) or rhs[r]
    ]
    top = 0
    for c in range(width):
        pivot = next((r for r in range(top, len(rows)) if rows[r][c]), None)
        if pivot is None:
            raise ConcomitantError("Reconstruction basis is degenerate for this bivector")
        rows[top], rows[pivot] = rows[pivot], rows[top]
        inv = rows[top][c].reciprocal()
        rows[top] = [x * inv for x in rows[top]]
        for r in range(len(rows)):
            if r != top and rows[r][c]:
                factor = rows[r][c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[top])]
        top += 1
    if any(row[width] for row in rows[top:]):
        raise ConcomitantError("Target is not in the span of the reconstruction basis")
    return [rows[c][width] for c in range(width)]


def fit_reconstruction(f: Bivector, target: str = TPRIME) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """Coefficients (a, b, c, d) with target = a K(T)/2 + b Y(T) + c K(Q)/2 + d Y(Q).

    K is the bracket with the metric and Y the cyclic alternating-tensor
    pattern. Solved exactly on the rational backend, by least squares on floats.
    """
    if target not in (TPRIME, QPRIME):
        raise ConcomitantError(f"fit_reconstruction targets Tprime or Qprime, got {target!r}")
    cs = compute_concomitants(f)
    half = as_scalar(Fraction(1, 2), f.backend)
    t2, q2 = cs.tensor(T2), cs.tensor(Q2)
    basis = [
        bracket_with_metric(t2).scale(half),
        cyclic_epsilon_terms(t2),
        bracket_with_metric(q2).scale(half),
        cyclic_epsilon_terms(q2),
    ]
    goal = cs.tensor(target)
    if f.backend == RATIONAL:
        columns = [list(b.components.flat) for b in basis]
        return tuple(_solve_exact(columns, list(goal.components.flat)))  # type: ignore[return-value]
    a = np.stack([b.components.reshape(-1) for b in basis], axis=1)
    solution, *_ = np.linalg.lstsq(a, goal.components.reshape(-1), rcond=None)
    return tuple(complex(x) for x in solution)  # type: ignore[return-value]


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PropertyResult:
    name: str
    passed: bool
    trials: int
    worst_residual: float = 0.0
    detail: str = ""
    elapsed_sec: float = 0.0

    def merge(self, other: "PropertyResult") -> "PropertyResult":
        if other.name != self.name:
            raise ValueError(f"Cannot merge {self.name} with {other.name}")
        details = "; ".join(d for d in (self.detail, other.detail) if d)
        return PropertyResult(
            name=self.name,
            passed=self.passed and other.passed,
            trials=self.trials + other.trials,
            worst_residual=max(self.worst_residual, other.worst_residual),
            detail=details,
            elapsed_sec=self.elapsed_sec + other.elapsed_sec,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "worst_residual": self.worst_residual,
            "detail": self.detail,
            "elapsed_sec": round(self.elapsed_sec, 3),
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> "PropertyResult":
        return cls(
            name=str(payload["name"]),
            passed=bool(payload["passed"]),
            trials=int(payload["trials"]),
            worst_residual=float(payload.get("worst_residual", 0.0)),
            detail=str(payload.get("detail", "")),
            elapsed_sec=float(payload.get("elapsed_sec", 0.0)),
        )


@dataclass(slots=True)
class PropertyReport:
    backend: str
    seed: int
    trials: int
    tolerance: float
    convention: dict[str, Any]
    results: list[PropertyResult] = field(default_factory=list)
    duality_signs: dict[str, int | str] = field(default_factory=dict)
    component_counts: dict[str, int] = field(default_factory=dict)
    completeness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def worst_residual(self) -> float:
        return max((r.worst_residual for r in self.results), default=0.0)

    def result(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "backend": self.backend,
            "seed": self.seed,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "convention": self.convention,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "properties": [r.to_json() for r in self.results],
            "duality_signs": self.duality_signs,
            "component_counts": self.component_counts,
            "completeness": self.completeness,
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> "PropertyReport":
        return cls(
            backend=str(payload["backend"]),
            seed=int(payload["seed"]),
            trials=int(payload["trials"]),
            tolerance=float(payload["tolerance"]),
            convention=dict(payload.get("convention", {})),
            results=[PropertyResult.from_json(p) for p in payload.get("properties", [])],
            duality_signs=dict(payload.get("duality_signs", {})),
            component_counts={k: int(v) for k, v in payload.get("component_counts", {}).items()},
            completeness=dict(payload.get("completeness", {})),
        )

    def to_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=True) + "\n"

    def render(self) -> Table:
        """A rich renderable summarizing every property."""
        table = Table(title=f"concom verify ({self.backend}, seed {self.seed}, {self.trials} trials)")
        table.add_column("property")
        table.add_column("result")
        table.add_column("trials", justify="right")
        table.add_column("worst residual", justify="right")
        table.add_column("detail", overflow="fold")
        for r in self.results:
            status = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
            table.add_row(r.name, status, str(r.trials), f"{r.worst_residual:.3g}", r.detail)
        return table


# -- the suite ------------------------------------------------------------------


@dataclass(slots=True)
class _Tally:
    name: str
    trials: int = 0
    passed: bool = True
    worst: float = 0.0
    detail: str = ""
    elapsed: float = 0.0

    def record(self, ok: bool, residual: float = 0.0, detail: str = "") -> None:
        self.trials += 1
        if math.isfinite(residual):
            self.worst = max(self.worst, residual)
        else:
            self.worst = math.inf
        if not ok:
            if self.passed and detail:
                self.detail = detail
            self.passed = False

    def result(self) -> PropertyResult:
        return PropertyResult(
            name=self.name,
            passed=self.passed,
            trials=self.trials,
            worst_residual=self.worst,
            detail=self.detail,
            elapsed_sec=self.elapsed,
        )

    @classmethod
    def from_result(cls, result: PropertyResult) -> "_Tally":
        return cls(
            name=result.name,
            trials=result.trials,
            passed=result.passed,
            worst=result.worst_residual,
            detail=result.detail,
            elapsed=result.elapsed_sec,
        )


Comparison = tuple[str, SmallTensor, SmallTensor]


def _compare(items: list[Comparison], tolerance: float) -> tuple[bool, float, str]:
    worst = 0.0
    failed: list[str] = []
    for label, a, b in items:
        if a.backend != b.backend:
            a, b = a.to_float(), b.to_float()
        if a.equals(b, tolerance):
            if a.backend == FLOAT:
                worst = max(worst, a.residual(b))
            continue
        worst = max(worst, a.residual(b))
        failed.append(label)
    return not failed, worst, ", ".join(failed)


def _scalar_tensor(value: Any, backend: str) -> SmallTensor:
    return SmallTensor.scalar_value(value, backend)


@dataclass(slots=True)
class _Trial:
    index: int
    source: Bivector
    concomitants: ConcomitantSet


def partition(count: int, parts: int) -> list[range]:
    """Split range(count) into ``parts`` contiguous runs, larger runs first."""
    size, extra = divmod(count, parts)
    bounds = [0]
    for k in range(parts):
        bounds.append(bounds[-1] + size + (1 if k < extra else 0))
    return [range(a, b) for a, b in zip(bounds, bounds[1:])]


def _run_chunk(
    config: ConcomConfig, epsilon_sign: int, trials: range, real: range, lorentz: range
) -> _ChunkOutcome:
    # spawned workers start from the default Levi-Civita sign
    scope = flipped_epsilon() if epsilon_sign != epsilon_upper_0123() else nullcontext()
    with scope:
        runner = SuiteRunner(config)
        runner._run_randomized(trials, real, lorentz)
    return [t.result().to_json() for t in runner._tallies.values()], dict(runner._signs)


class SuiteRunner:
    """Runs every property over seeded random bivectors."""

    def __init__(
        self,
        config: ConcomConfig,
        *,
        on_event: EventCallback | None = None,
        logger: SuiteLogger | None = None,
    ) -> None:
        self.config = config
        self.on_event = on_event
        self.logger = logger
        self.backend = config.backend
        self.tolerance = config.tolerance
        self._tallies: dict[str, _Tally] = {}
        self._signs: dict[str, int | str | None] = {tag: None for tag in EXPECTED_DUALITY_SIGNS}
        self.component_counts: dict[str, int] = {}
        self.completeness: dict[str, Any] = {}

    # -- plumbing ------------------------------------------------------

    def _emit(self, msg: str) -> None:
        if self.on_event:
            try:
                self.on_event(msg)
            except Exception:
                pass

    def _tally(self, name: str) -> _Tally:
        if name not in self._tallies:
            self._tallies[name] = _Tally(name)
        return self._tallies[name]

    def _run(self, name: str, check: Callable[[], tuple[bool, float, str]]) -> None:
        tally = self._tally(name)
        start = time.perf_counter()
        try:
            ok, residual, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            ok, residual, detail = False, math.inf, f"{type(exc).__name__}: {exc}"
        tally.elapsed += time.perf_counter() - start
        tally.record(ok, residual, detail)

    # -- entry point ---------------------------------------------------

    def run(self) -> PropertyReport:
        cfg = self.config
        convention = {"signature": SIGNATURE, "epsilon_upper_0123": epsilon_upper_0123()}
        if self.logger is not None:
            self.logger.write_header(
                backend=self.backend,
                seed=cfg.seed,
                trials=cfg.trials,
                tolerance=self.tolerance,
                convention=convention,
            )
        self._emit(f"[verify] backend={self.backend} seed={cfg.seed} trials={cfg.trials}")

        self._run("epsilon_convention", self._check_epsilon)
        if cfg.trials:
            workers = self._worker_count()
            if workers > 1:
                self._run_parallel(workers)
            else:
                self._run_randomized(
                    range(cfg.trials), range(cfg.effective_real_trials), range(cfg.lorentz_trials)
                )
            self._run("reconstruction_fit", self._check_reconstruction_fit)
            self._run("phase_invariance_float", self._check_float_phases)
            self._run("duality_signs", self._check_duality_signs)
            self._emit("[verify] randomized checks done")
        self._check_counts()

        results = [t.result() for t in self._tallies.values()]
        if self.logger is not None:
            for r in results:
                self.logger.log_check(
                    name=r.name,
                    passed=r.passed,
                    trials=r.trials,
                    worst_residual=r.worst_residual,
                    elapsed_sec=r.elapsed_sec,
                    detail=r.detail,
                )
        report = PropertyReport(
            backend=self.backend,
            seed=cfg.seed,
            trials=cfg.trials,
            tolerance=self.tolerance,
            convention=convention,
            results=results,
            duality_signs={
                tag: (MIXED if sign is None else sign) for tag, sign in self._signs.items()
            }
            if cfg.trials
            else {},
            component_counts=dict(self.component_counts),
            completeness=dict(self.completeness),
        )
        if self.logger is not None:
            failed = len(report.failures())
            self.logger.write_summary(
                passed=len(results) - failed, failed=failed, completeness=report.completeness
            )
        status = "all properties pass" if report.passed else f"{len(report.failures())} properties FAIL"
        self._emit(f"[verify] {status}")
        return report

    # -- randomized checks ---------------------------------------------

    def _worker_count(self) -> int:
        cfg = self.config
        if cfg.workers == 0 and cfg.trials < AUTO_PARALLEL_MIN_TRIALS:
            return 1
        return max(1, min(cfg.resolved_workers, cfg.trials))

    def _run_randomized(self, trials: range, real: range, lorentz: range) -> None:
        cfg = self.config
        for done, k in enumerate(trials, start=1):
            f = random_bivector(cfg.seed + k, self.backend)
            trial = _Trial(index=k, source=f, concomitants=compute_concomitants(f, self.tolerance))
            self._run_trial(trial)
            if done % 25 == 0:
                self._emit(f"[verify] {done}/{len(trials)} trials")
        for k in real:
            self._run("real_degeneration", lambda k=k: self._check_real(k))
        for k in lorentz:
            self._run("lorentz_covariance", lambda k=k: self._check_lorentz(k))

    def _run_parallel(self, workers: int) -> None:
        cfg = self.config
        chunks = list(
            zip(
                partition(cfg.trials, workers),
                partition(cfg.effective_real_trials, workers),
                partition(cfg.lorentz_trials, workers),
            )
        )
        sign = epsilon_upper_0123()
        self._emit(f"[verify] {cfg.trials} trials across {workers} workers")
        indexed: dict[int, _ChunkOutcome] = {}
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = {
                    pool.submit(_run_chunk, cfg, sign, trials, real, lorentz): idx
                    for idx, (trials, real, lorentz) in enumerate(chunks)
                }
                for future in as_completed(futures):
                    idx = futures[future]
                    indexed[idx] = future.result()
                    self._emit(f"[verify] chunk {len(indexed)}/{len(chunks)} done")
        except (OSError, BrokenProcessPool) as exc:
            self._emit(f"[verify] worker pool unavailable ({exc}); running in-process")
            for idx, (trials, real, lorentz) in enumerate(chunks):
                if idx not in indexed:
                    indexed[idx] = _run_chunk(cfg, sign, trials, real, lorentz)

        merged: dict[str, PropertyResult] = {}
        for idx in sorted(indexed):
            payloads, signs = indexed[idx]
            for payload in payloads:
                r = PropertyResult.from_json(payload)
                merged[r.name] = merged[r.name].merge(r) if r.name in merged else r
            for tag, value in signs.items():
                self._signs[tag] = _fold_sign(self._signs[tag], 0 if value == MIXED else value)
        for name, r in merged.items():
            self._tallies[name] = _Tally.from_result(r)

    def _run_trial(self, trial: _Trial) -> None:
        checks: list[tuple[str, Callable[[_Trial], tuple[bool, float, str]]]] = [
            ("matrix_antisymmetry", self._check_antisymmetry),
            ("dual_convention", self._check_dual_convention),
            ("self_dual_eigenvalues", self._check_self_dual_eigen),
            ("self_dual_reconstruction", self._check_self_dual_sum),
            ("self_dual_products", self._check_self_dual_products),
            ("valence4_symmetries", self._check_v4_symmetries),
            ("sixtor_hermitian", self._check_sixtor_hermitian),
            ("valence2_properties", self._check_v2_properties),
            ("irreducibility_v4", self._check_irreducible_v4),
            ("rank2_duality", self._check_rank2_duality),
            ("left_pair_duality", self._check_left_duality),
            ("phase_invariance", self._check_phase),
            ("duality_eigenvalues", self._measure_duality),
            ("reconstruction", self._check_reconstruction),
            ("non_reconstructibility", self._check_non_reconstructible),
            ("oracle_agreement", self._check_oracle),
            ("contraction_signs", self._check_contraction_signs),
            ("energy_dominance", self._check_energy),
        ]
        for name, check in checks:
            self._run(name, lambda check=check: check(trial))

    # -- structural ----------------------------------------------------

    def _check_epsilon(self) -> tuple[bool, float, str]:
        upper = levi_civita4(UPPER, self.backend)
        lower = levi_civita4(LOWER, self.backend)
        full = contract_product(upper, lower, [(0, 0), (1, 1), (2, 2), (3, 3)]).scalar()
        items = [
            ("eps^0123", _scalar_tensor(upper[0, 1, 2, 3], self.backend), _scalar_tensor(-1, self.backend)),
            ("eps_0123", _scalar_tensor(lower[0, 1, 2, 3], self.backend), _scalar_tensor(1, self.backend)),
            ("eps.eps", _scalar_tensor(full, self.backend), _scalar_tensor(-24, self.backend)),
        ]
        return _compare(items, self.tolerance)

    # -- per trial -----------------------------------------------------

    def _check_antisymmetry(self, trial: _Trial) -> tuple[bool, float, str]:
        fm = matrix_form(trial.source)
        return _compare([("F^ab + F^ba", fm + fm.swap(0, 1), fm.scale(0))], self.tolerance)

    def _check_dual_convention(self, trial: _Trial) -> tuple[bool, float, str]:
        contracted = matrix_form(dual(trial.source))
        swapped = matrix_form(duality_transform(trial.source))
        return _compare([("dual vs swap", contracted, swapped)], self.tolerance)

    def _check_self_dual_eigen(self, trial: _Trial) -> tuple[bool, float, str]:
        parts = self_dual_parts(trial.source)
        i = imag_unit(self.backend)
        minus, plus = parts.minus, parts.plus
        return _compare(
            [
                ("dual(minus) = -i minus", matrix_form(dual(minus)), matrix_form(minus.scale(-i))),
                ("dual(plus) = +i plus", matrix_form(dual(plus)), matrix_form(plus.scale(i))),
            ],
            self.tolerance,
        )

    def _check_self_dual_sum(self, trial: _Trial) -> tuple[bool, float, str]:
        f = trial.source
        parts = self_dual_parts(f)
        return _compare(
            [
                ("minus + plus", matrix_form(parts.minus + parts.plus), matrix_form(f)),
                (
                    "conj_minus + conj_plus",
                    matrix_form(parts.conj_minus + parts.conj_plus),
                    matrix_form(f.conjugate()),
                ),
            ],
            self.tolerance,
        )

    def _check_self_dual_products(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        p = self_dual_products(trial.source)
        i = imag_unit(self.backend)
        fm = matrix_form(trial.source)
        return _compare(
            [
                ("mm + pp = Tprime", p.mm + p.pp, cs.tensor(TPRIME)),
                ("mm - pp = Qprime", p.mm - p.pp, cs.tensor(QPRIME)),
                ("mp + pm = Dprime", p.mp + p.pm, cs.tensor(DPRIME)),
                ("i(mp - pm) = Xprime", (p.mp - p.pm).scale(i), cs.tensor(XPRIME)),
                ("sum = conj(F) F", p.mm + p.pp + p.mp + p.pm, outer(fm.conj(), fm)),
            ],
            self.tolerance,
        )

    def _check_v4_symmetries(self, trial: _Trial) -> tuple[bool, float, str]:
        items: list[Comparison] = []
        for tag in VALENCE4_TAGS:
            t = trial.concomitants.tensor(tag)
            items.append((f"{tag} [ab] antisymmetry", t.swap(0, 1), -t))
            items.append((f"{tag} [gd] antisymmetry", t.swap(2, 3), -t))
            items.append((f"{tag} hermitian exchange", t.transpose((2, 3, 0, 1)).conj(), t))
        return _compare(items, self.tolerance)

    def _check_sixtor_hermitian(self, trial: _Trial) -> tuple[bool, float, str]:
        items: list[Comparison] = []
        for tag in VALENCE4_TAGS:
            m = sixtor_matrix(trial.concomitants.tensor(tag))
            a = tensor_from_sixtor(m, self.backend)
            b = tensor_from_sixtor(conj(m.T.copy()), self.backend)
            items.append((f"{tag} sixtor M = M^H", a, b))
        return _compare(items, self.tolerance)

    def _check_v2_properties(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        backend = self.backend
        zero = _scalar_tensor(0, backend)
        four = as_scalar(4, backend)
        items: list[Comparison] = []
        for tag in (T2, Q2):
            t = cs.tensor(tag)
            items.append((f"{tag} symmetric", t.swap(0, 1), t))
            items.append((f"{tag} real", t.imag_part(), t.scale(0)))
            items.append((f"{tag} trace-free", _scalar_tensor(metric_trace(t), backend), zero))
        for tag, raw in ((D2IRR, D2RAW), (X2IRR, X2RAW)):
            t = cs.tensor(tag)
            items.append((f"{tag} antisymmetric", t.swap(0, 1), -t))
            items.append((f"{tag} real", t.imag_part(), t.scale(0)))
            items.append((f"{tag} trace-free", _scalar_tensor(metric_trace(t), backend), zero))
            items.append((f"{tag} = Im {raw}", t, cs.tensor(raw).imag_part()))
        items.append(
            (
                "tr D2raw = 4 Lplus",
                _scalar_tensor(metric_trace(cs.tensor(D2RAW)), backend),
                _scalar_tensor(cs.scalars.lplus * four, backend),
            )
        )
        items.append(
            (
                "tr X2raw = 4 Lminus",
                _scalar_tensor(metric_trace(cs.tensor(X2RAW)), backend),
                _scalar_tensor(cs.scalars.lminus * four, backend),
            )
        )
        for tag in (LPLUS, LMINUS):
            s = cs.tensor(tag)
            items.append((f"{tag} real", s.imag_part(), zero))
        return _compare(items, self.tolerance)

    def _check_irreducible_v4(self, trial: _Trial) -> tuple[bool, float, str]:
        worst = 0.0
        failed: list[str] = []
        for tag in (D4IRR, X4IRR):
            t = trial.concomitants.tensor(tag)
            report = irreducibility_report(t, self.tolerance)
            worst = max([worst] + list(report.residuals.values()))
            failed.extend(f"{tag} {name}" for name in report.failures)
            ok, residual, _ = _compare([(f"{tag} real", t.imag_part(), t.scale(0))], self.tolerance)
            worst = max(worst, residual)
            if not ok:
                failed.append(f"{tag} real")
        return not failed, worst, ", ".join(failed)

    def _check_rank2_duality(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        d, x = cs.tensor(D2IRR), cs.tensor(X2IRR)
        return _compare(
            [
                ("dual(D2irr) = X2irr", rank2_dual(d), x),
                ("dual(X2irr) = -D2irr", rank2_dual(x), -d),
                ("dual(T2) = 0", rank2_dual(cs.tensor(T2)), d.scale(0)),
                ("dual(Q2) = 0", rank2_dual(cs.tensor(Q2)), d.scale(0)),
            ],
            self.tolerance,
        )

    def _check_left_duality(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        d, x = cs.tensor(D4IRR), cs.tensor(X4IRR)
        return _compare(
            [("left dual D4irr = X4irr", left_dual(d), x), ("left dual X4irr = -D4irr", left_dual(x), -d)],
            self.tolerance,
        )

    def _check_phase(self, trial: _Trial) -> tuple[bool, float, str]:
        if self.backend == RATIONAL:
            phase: Any = EXACT_UNIT_PHASES[trial.index % len(EXACT_UNIT_PHASES)]
        else:
            rng = np.random.default_rng(self.config.seed + trial.index)
            phase = float(rng.uniform(-math.pi, math.pi))
        rotated = compute_concomitants(phase_rotate(trial.source, phase), self.tolerance)
        return _compare_sets(trial.concomitants, rotated, self.tolerance, "phase")

    def _measure_duality(self, trial: _Trial) -> tuple[bool, float, str]:
        signs = duality_signs(trial.source, trial.concomitants, self.tolerance)
        mixed: list[str] = []
        for tag, sign in signs.items():
            measured = None if sign == UNDETERMINED else (0 if sign == MIXED else int(sign))
            self._signs[tag] = _fold_sign(self._signs[tag], measured)
            if measured == 0:
                mixed.append(tag)
        return not mixed, 0.0, ", ".join(f"{tag} is not an eigen-concomitant" for tag in mixed)

    def _check_reconstruction(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        t2 = Valence2Concomitant(T2, cs.tensor(T2))
        q2 = Valence2Concomitant(Q2, cs.tensor(Q2))
        return _compare(
            [
                ("Tprime from (T2, Q2)", reconstruct_v4(t2, q2).tensor, cs.tensor(TPRIME)),
                ("Qprime from (Q2, T2)", reconstruct_v4(q2, t2).tensor, cs.tensor(QPRIME)),
            ],
            self.tolerance,
        )

    def _check_non_reconstructible(self, trial: _Trial) -> tuple[bool, float, str]:
        cs = trial.concomitants
        vanishing = [tag for tag in (D4IRR, X4IRR) if cs.tensor(tag).is_zero(self.tolerance)]
        detail = ", ".join(f"{tag} vanished, so the raw tensor follows from its traces" for tag in vanishing)
        return not vanishing, 0.0, detail

    def _check_oracle(self, trial: _Trial) -> tuple[bool, float, str]:
        return _compare_sets(trial.concomitants, eb_oracle(trial.source), self.tolerance, "oracle")

    def _check_contraction_signs(self, trial: _Trial) -> tuple[bool, float, str]:
        items: list[Comparison] = []
        for tag in (TPRIME, QPRIME, DPRIME, XPRIME):
            t = trial.concomitants.tensor(tag)
            mid = middle_contraction(t)
            items += [
                (f"{tag} (0,1)", contraction(t, 0, 1), mid.scale(0)),
                (f"{tag} (2,3)", contraction(t, 2, 3), mid.scale(0)),
                (f"{tag} (0,3)", contraction(t, 0, 3), mid),
                (f"{tag} (0,2)", contraction(t, 0, 2), -mid),
                (f"{tag} (1,3)", contraction(t, 1, 3), -mid),
            ]
        return _compare(items, self.tolerance)

    def _check_energy(self, trial: _Trial) -> tuple[bool, float, str]:
        t = trial.concomitants.tensor(T2)
        t00 = complex(t[0, 0]).real
        flux2 = sum(complex(t[i, 0]).real ** 2 for i in range(1, 4))
        if self.backend == RATIONAL:
            e = as_scalar(t[0, 0], RATIONAL).real
            f2 = sum((as_scalar(t[i, 0], RATIONAL).real ** 2 for i in range(1, 4)), Fraction(0))
            ok = e >= 0 and e * e >= f2
        else:
            slack = self.tolerance * max(1.0, t00 * t00)
            ok = t00 >= -self.tolerance and t00 * t00 + slack >= flux2
        return ok, 0.0, "" if ok else f"T00 = {t00:.6g} below |T^i0| = {math.sqrt(flux2):.6g}"

    # -- after the trial loop -------------------------------------------

    def _check_reconstruction_fit(self) -> tuple[bool, float, str]:
        f = random_bivector(self.config.seed, self.backend)
        i = imag_unit(self.backend)
        quarter = as_scalar(Fraction(1, 4), self.backend)
        one, zero = as_scalar(1, self.backend), as_scalar(0, self.backend)
        expected = {
            TPRIME: (one, zero, zero, -i * quarter),
            QPRIME: (zero, -i * quarter, one, zero),
        }
        items: list[Comparison] = []
        for target, coefficients in expected.items():
            got = fit_reconstruction(f, target)
            for n, (g, e) in enumerate(zip(got, coefficients)):
                items.append(
                    (f"{target} coefficient {n}", _scalar_tensor(g, self.backend), _scalar_tensor(e, self.backend))
                )
        tolerance = self.tolerance if self.backend == RATIONAL else max(self.tolerance, 1e-9)
        return _compare(items, tolerance)

    def _check_float_phases(self) -> tuple[bool, float, str]:
        rng = np.random.default_rng(self.config.seed)
        worst = 0.0
        failed: list[str] = []
        for j in range(self.config.random_phases):
            f = random_bivector(self.config.seed + j, FLOAT)
            angle = float(rng.uniform(-math.pi, math.pi))
            ok, residual, detail = _compare_sets(
                compute_concomitants(f), compute_concomitants(phase_rotate(f, angle)), self.tolerance, "phase"
            )
            worst = max(worst, residual)
            if not ok:
                failed.append(f"angle {angle:.6g}: {detail}")
        return not failed, worst, "; ".join(failed)

    def _check_duality_signs(self) -> tuple[bool, float, str]:
        problems = [tag for tag, sign in self._signs.items() if sign in (None, MIXED)]
        for tag in (T2, Q2):
            if self._signs.get(tag) not in (None, MIXED, 1):
                problems.append(f"{tag} changes sign")
        return not problems, 0.0, ", ".join(problems)

    def _check_real(self, k: int) -> tuple[bool, float, str]:
        f = random_bivector(self.config.seed + k, self.backend, real=True)
        cs = compute_concomitants(f, self.tolerance)
        ref = real_reference(f, self.tolerance)
        zero2 = cs.tensor(Q2).scale(0)
        parts = self_dual_parts(f)
        return _compare(
            [
                ("Q2 = 0", cs.tensor(Q2), zero2),
                ("D2irr = 0", cs.tensor(D2IRR), zero2),
                ("X2irr = 0", cs.tensor(X2IRR), zero2),
                ("Lplus", _scalar_tensor(ref.lplus_r, self.backend), cs.tensor(LPLUS)),
                ("Lminus", _scalar_tensor(ref.lminus_r, self.backend), cs.tensor(LMINUS)),
                ("stress = T2", ref.stress, cs.tensor(T2)),
                ("conj_minus = plus", matrix_form(parts.conj_minus), matrix_form(parts.plus)),
            ],
            self.tolerance,
        )

    def _check_lorentz(self, k: int) -> tuple[bool, float, str]:
        f = random_bivector(self.config.seed + k, FLOAT)
        transform = random_lorentz(self.config.seed + k, self.config.max_speed)
        before = compute_concomitants(f).members()
        after = compute_concomitants(lorentz_transform(f, transform)).members()
        items: list[Comparison] = []
        for tag in ALL_TAGS:
            t = before[tag]
            expected = t if t.rank == 0 else lorentz_apply(t, transform.matrix)
            items.append((tag, after[tag], expected))
        return _compare(items, self.config.lorentz_tolerance)

    def _check_counts(self) -> None:
        backend = self.backend
        exact = backend == RATIONAL

        def count(tags: tuple[str, ...] | list[str], restriction: str = FULL) -> int:
            return completeness_rank(forms_for(tags, backend), restriction, exact=exact)

        def run_counts() -> tuple[bool, float, str]:
            counts = {tag: count([tag]) for tag in (LPLUS, LMINUS, T2, Q2, D2IRR, X2IRR, D4IRR, X4IRR)}
            self.component_counts.update(counts)
            wrong = [
                f"{tag}: {counts[tag]} != {expected}"
                for tag, expected in REFERENCE_COUNTS.items()
                if counts[tag] != expected
            ]
            for tag, twin in ((X2IRR, D2IRR), (X4IRR, D4IRR)):
                if counts[tag] != counts[twin]:
                    wrong.append(f"{tag}: {counts[tag]} != {counts[twin]}")
            return not wrong, 0.0, ", ".join(wrong)

        def run_union() -> tuple[bool, float, str]:
            forms = forms_for(COMPLETE_SET, backend)
            union = completeness_rank(forms, FULL, exact=exact)
            ranks = [self.component_counts.get(tag, 0) for tag in COMPLETE_SET]
            self.completeness["ranks"] = ranks
            self.completeness["union"] = union
            self.completeness["definition"] = COUNT_DEFINITION
            if exact:
                self.completeness["float_union"] = float_rank([f.vector for f in forms])
            ok = union == 36 and sum(ranks) == union
            return ok, 0.0, "" if ok else f"union rank {union}, per-concomitant sum {sum(ranks)}"

        def run_real() -> tuple[bool, float, str]:
            real = count(REAL_SET, REAL_BIVECTORS)
            self.completeness["real"] = real
            return real == 21, 0.0, "" if real == 21 else f"real-restriction rank {real}"

        def run_alternatives() -> tuple[bool, float, str]:
            ranks = [count(choice) for choice in ALTERNATIVE_SETS]
            self.completeness["alternatives"] = ranks
            ok = all(r == 36 for r in ranks)
            return ok, 0.0, "" if ok else f"alternative set ranks {ranks}"

        def run_raw() -> tuple[bool, float, str]:
            raw = {tag: count([tag]) for tag in (TPRIME, QPRIME, DPRIME, XPRIME)}
            pairs = {name: count(list(pair)) for name, pair in RAW_PAIRS.items()}
            self.component_counts.update(raw)
            self.completeness["raw_pairs"] = pairs
            self.completeness["raw_note"] = RAW_COUNT_NOTE
            expected_pairs = {"Tprime+Qprime": 18, "Dprime+Xprime": 18, "Tprime+Dprime": 36}
            wrong = [f"{tag}: {n}" for tag, n in raw.items() if n != 18]
            wrong += [f"{name}: {pairs[name]}" for name, n in expected_pairs.items() if pairs[name] != n]
            return not wrong, 0.0, ", ".join(wrong)

        self._emit("[verify] extracting hermitian forms")
        self._run("component_counts", run_counts)
        self._run("completeness", run_union)
        self._run("completeness_real", run_real)
        self._run("alternative_sets", run_alternatives)
        self._run("raw_counts", run_raw)


def _compare_sets(
    a: ConcomitantSet, b: ConcomitantSet, tolerance: float, label: str
) -> tuple[bool, float, str]:
    mine, theirs = a.members(), b.members()
    return _compare([(f"{label} {tag}", mine[tag], theirs[tag]) for tag in mine], tolerance)


def run_suite(
    config: ConcomConfig,
    on_event: EventCallback | None = None,
    logger: SuiteLogger | None = None,
) -> PropertyReport:
    return SuiteRunner(config, on_event=on_event, logger=logger).run()
