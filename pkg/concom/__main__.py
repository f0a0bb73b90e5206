from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path
from typing import Iterator

from rich.console import Console
from rich.table import Table

from .bivector import BivectorError, NotAntisymmetricError
from .concomitants import (
    ALL_TAGS,
    D2IRR,
    D4IRR,
    DPRIME,
    QPRIME,
    TPRIME,
    X2IRR,
    X4IRR,
    XPRIME,
    compute_concomitants,
)
from .config import ConcomConfig
from .documents import (
    BivectorDocument,
    ConcomitantDocument,
    DocumentError,
    atomic_write_text,
    write_json_document,
)
from .forms import (
    ALTERNATIVE_SETS,
    COMPLETE_SET,
    FULL,
    RAW_PAIRS,
    REAL_BIVECTORS,
    REAL_SET,
    REFERENCE_COUNTS,
    completeness_rank,
    forms_for,
    independent_component_count,
)
from .scalar import BACKENDS, RATIONAL, normalize_backend
from .signal import (
    POLARIZATIONS,
    SelectionError,
    SignalError,
    analytic_signal,
    concomitant_series,
    frame_to_csv,
    parse_selection,
    read_complex_csv,
    read_field_csv,
    synth_plane_wave,
    write_field_csv,
    write_series_csv,
)
from .suite_log import SuiteLogger
from .tensor import TensorError, flipped_epsilon
from .verify import COUNT_DEFINITION, EXPECTED_DUALITY_SIGNS, duality_sign_table, duality_signs, run_suite

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_NOT_ANTISYMMETRIC = 3
EXIT_BAD_SELECTION = 4
EXIT_INTERNAL_ERROR = 5

# Independent-component counts of the twins follow their partners.
TABLE_REFERENCE = {**REFERENCE_COUNTS, X2IRR: REFERENCE_COUNTS[D2IRR], X4IRR: REFERENCE_COUNTS[D4IRR]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concom",
        description="Bilinear hermitian-form concomitants of a complex bivector.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Compute the concomitants of one bivector (JSON in, JSON out).")
    compute.add_argument("input", help="Bivector document: {\"E\": [...], \"B\": [...]} or {\"F\": 4x4}.")
    compute.add_argument("--exact", action="store_true", help="Emit exact 'p/q' strings (rational backend).")
    compute.add_argument("--select", help="Comma-separated concomitant names (default: all).")
    compute.add_argument("--output", help="Write the document here instead of stdout.")
    compute.add_argument("--backend", choices=BACKENDS, help="Arithmetic backend (default: CONCOM_BACKEND).")
    compute.add_argument("--duality-signs", action="store_true", help="Include the measured duality-sign table.")
    compute.add_argument("--flip-epsilon", action="store_true", help=argparse.SUPPRESS)

    verify = sub.add_parser("verify", help="Run the property suite and write a JSON report.")
    verify.add_argument("--trials", type=int, help="Random bivectors per property (default 100).")
    verify.add_argument("--seed", type=int, help="Base seed (default 0).")
    verify.add_argument("--backend", choices=BACKENDS)
    verify.add_argument("--tolerance", type=float, help="Float-backend tolerance (default 1e-12).")
    verify.add_argument("--lorentz-trials", type=int, help="Random Lorentz transforms (default 200).")
    verify.add_argument("--real-trials", type=int, help="Random real bivectors (default: --trials).")
    verify.add_argument(
        "--workers", type=int, help="Worker processes for the random trials (default: one per CPU)."
    )
    verify.add_argument("--report", help="Write the PropertyReport JSON here.")
    verify.add_argument("--log", help="Append a JSONL trace of the run here.")
    verify.add_argument("--quiet", action="store_true", help="Suppress progress lines.")
    verify.add_argument("--flip-epsilon", action="store_true", help=argparse.SUPPRESS)

    signal = sub.add_parser("signal", help="Turn a field CSV into concomitant time series.")
    signal.add_argument("input", help="CSV with header t,Ex,Ey,Ez,Bx,By,Bz.")
    signal.add_argument("--select", help="Comma-separated columns, e.g. T00,Q30,Lplus.")
    signal.add_argument(
        "--no-hilbert",
        action="store_true",
        help="Input is already complex: t then Ex_re,Ex_im,...,Bz_im.",
    )
    signal.add_argument("--output", help="Write the CSV here instead of stdout.")

    synth = sub.add_parser("synth", help="Write a synthetic plane-wave field CSV.")
    synth.add_argument("output")
    synth.add_argument("--polarization", choices=POLARIZATIONS, default="circular-left")
    synth.add_argument("--frequency", type=float, default=8.0, help="Hz (default 8, an exact bin).")
    synth.add_argument("--amplitude", type=float, default=1.0)
    synth.add_argument("--samples", type=int, default=1024)
    synth.add_argument("--sample-rate", type=float, default=1024.0)
    synth.add_argument("--axis", choices=("x", "y", "z"), default="z")
    synth.add_argument("--phase", type=float, default=0.0)

    table = sub.add_parser("table", help="Print measured independent-component counts and duality signs.")
    table.add_argument("--backend", choices=BACKENDS)
    table.add_argument("--trials", type=int, default=8, help="Bivectors used to measure duality signs.")
    table.add_argument("--seed", type=int, default=0)
    return parser


@contextlib.contextmanager
def _epsilon_hook(enabled: bool) -> Iterator[None]:
    if enabled:
        with flipped_epsilon():
            yield
    else:
        yield


def _emit_text(text: str, output: str | None) -> None:
    if output:
        atomic_write_text(Path(output), text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _compute_selection(raw: str | None) -> list[str]:
    if raw is None:
        return list(ALL_TAGS)
    names = [n.strip() for n in raw.split(",") if n.strip()]
    if not names:
        raise SelectionError("Concomitant selection is empty")
    unknown = [n for n in names if n not in ALL_TAGS]
    if unknown:
        raise SelectionError(f"Unknown concomitant(s): {', '.join(unknown)}")
    return names


def cmd_compute(args: argparse.Namespace) -> int:
    selection = _compute_selection(args.select)
    doc = BivectorDocument.read(Path(args.input))
    if args.exact:
        backend = RATIONAL
    else:
        backend = normalize_backend(args.backend or doc.backend or ConcomConfig.from_env().backend)
    with _epsilon_hook(args.flip_epsilon):
        f = doc.to_bivector(backend)
        cs = compute_concomitants(f)
        signs = duality_signs(f, cs) if args.duality_signs else None
        out = ConcomitantDocument.build(cs, selection, exact=args.exact, duality_signs=signs)
    out.source = doc.to_json()
    _emit_text(out.to_text(), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, console: Console, err: Console) -> int:
    if args.trials is not None and args.trials < 0:
        raise ValueError("--trials must be >= 0")
    cfg = ConcomConfig.from_env().with_overrides(
        backend=args.backend,
        seed=args.seed,
        trials=args.trials,
        tolerance=args.tolerance,
        lorentz_trials=args.lorentz_trials,
        real_trials=args.real_trials,
        workers=args.workers,
        log_path=Path(args.log).expanduser() if args.log else None,
    )
    logger = SuiteLogger(cfg.log_path) if cfg.log_path else None
    on_event = None if args.quiet else (lambda msg: err.print(msg, markup=False, highlight=False))
    with _epsilon_hook(args.flip_epsilon):
        report = run_suite(cfg, on_event=on_event, logger=logger)
    if args.report:
        write_json_document(Path(args.report), report.to_json())
    if not args.quiet:
        console.print(report.render())
        if report.completeness:
            console.print(f"completeness: {report.completeness}", markup=False, highlight=False)
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILURE


def cmd_signal(args: argparse.Namespace) -> int:
    selection = parse_selection(args.select)
    if args.no_hilbert:
        analytic = read_complex_csv(args.input)
    else:
        analytic = analytic_signal(read_field_csv(args.input))
    series = concomitant_series(analytic, selection)
    if args.output:
        write_series_csv(series, args.output)
    else:
        _emit_text(frame_to_csv(series.to_frame()), None)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    series = synth_plane_wave(
        amplitude=args.amplitude,
        frequency=args.frequency,
        polarization=args.polarization,
        axis=args.axis,
        n=args.samples,
        sample_rate=args.sample_rate,
        phase=args.phase,
    )
    write_field_csv(series, args.output)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, console: Console) -> int:
    backend = normalize_backend(args.backend or ConcomConfig.from_env().backend)
    exact = backend == RATIONAL
    table = Table(title=f"Independent components ({backend})")
    table.add_column("concomitant")
    table.add_column("reference", justify="right")
    table.add_column("measured", justify="right")
    table.add_column("duality sign", justify="right")
    ok = True
    signs = duality_sign_table(max(1, args.trials), args.seed, backend)
    for tag in EXPECTED_DUALITY_SIGNS:
        measured = independent_component_count(tag, backend)
        reference = TABLE_REFERENCE.get(tag)
        if tag in (TPRIME, QPRIME, DPRIME, XPRIME):
            reference = 18
        if reference is not None and measured != reference:
            ok = False
        sign = signs[tag]
        table.add_row(
            tag,
            "-" if reference is None else str(reference),
            str(measured),
            f"{sign:+d}" if isinstance(sign, int) else str(sign),
        )
    console.print(table)

    union = completeness_rank(forms_for(COMPLETE_SET, backend), FULL, exact=exact)
    real = completeness_rank(forms_for(REAL_SET, backend), REAL_BIVECTORS, exact=exact)
    alternatives = [completeness_rank(forms_for(s, backend), FULL, exact=exact) for s in ALTERNATIVE_SETS]
    pairs = {name: completeness_rank(forms_for(p, backend), FULL, exact=exact) for name, p in RAW_PAIRS.items()}
    ok = ok and union == 36 and real == 21 and all(r == 36 for r in alternatives)
    console.print(f"union rank {union} (reference 36), real restriction {real} (reference 21)")
    console.print(f"alternative sets: {alternatives}")
    console.print(f"raw pairs: {pairs}", markup=False, highlight=False)
    console.print(f"counted as: {COUNT_DEFINITION}", markup=False, highlight=False)
    return EXIT_OK if ok else EXIT_PROPERTY_FAILURE


def main(argv: list[str] | None = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    console = Console()
    err = Console(stderr=True)
    try:
        if args.command == "compute":
            rc = cmd_compute(args)
        elif args.command == "verify":
            rc = cmd_verify(args, console, err)
        elif args.command == "signal":
            rc = cmd_signal(args)
        elif args.command == "synth":
            rc = cmd_synth(args)
        else:
            rc = cmd_table(args, console)
    except NotAntisymmetricError as exc:
        err.print(f"error: {exc}", markup=False)
        raise SystemExit(EXIT_NOT_ANTISYMMETRIC)
    except SelectionError as exc:
        err.print(f"error: {exc}", markup=False)
        raise SystemExit(EXIT_BAD_SELECTION)
    except (DocumentError, SignalError, BivectorError, TensorError, ValueError) as exc:
        err.print(f"error: {exc}", markup=False)
        raise SystemExit(EXIT_PARSE_ERROR)
    except Exception as exc:
        err.print(f"internal error: {type(exc).__name__}: {exc}", markup=False)
        raise SystemExit(EXIT_INTERNAL_ERROR)
    if rc:
        raise SystemExit(rc)


if __name__ == "__main__":
    main()
