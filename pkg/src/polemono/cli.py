"""Command-line front end.

Exit codes: 0 success, 1 unexpected error, 2 bad input text, 3 not
homogeneous, 4 non-reduced curve, 5 lines through one point, 6 Euler
certificate failed under ``--strict``, 7 zero polynomial or degree below 3.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext

from .hilbert import CentralPencilError, NonReducedError
from .linalg import DEFAULT_SEED
from .pipeline import (
    MODES,
    OUTPUTS,
    CertificateFailedError,
    CurveReport,
    LowDegreeError,
    RunConfig,
    run,
    run_batch,
)
from .poly import NotHomogeneousError, PolynomialSyntaxError, ZeroPolynomialError

EXIT_CODES = [
    (PolynomialSyntaxError, 2),
    (ZeroPolynomialError, 7),
    (LowDegreeError, 7),
    (NotHomogeneousError, 3),
    (NonReducedError, 4),
    (CentralPencilError, 5),
    (CertificateFailedError, 6),
]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polemono",
        description="Monodromy and pole order filtration on the Milnor fiber cohomology of a plane curve.",
    )
    p.add_argument("expr", nargs="?", help="polynomial in x, y, z (same as --input)")
    p.add_argument("-i", "--input", help="polynomial text or a file containing it")
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--primes", type=int, default=2, help="number of random primes for modular ranks")
    p.add_argument("--exact", action="store_true", help="fraction-free rational elimination instead of modular ranks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", metavar="PATH", help="write the JSON report (JSONL in batch mode) to PATH; '-' for stdout")
    p.add_argument("--batch", metavar="PATH", help="file with one polynomial per line")
    p.add_argument("--strict", action="store_true", help="non-zero exit when the Euler certificate fails")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument(
        "--output",
        default="summary,spectra,alexander,bs-roots",
        help=f"comma separated sections from {','.join(OUTPUTS)}",
    )
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the JSON report")
    return p


def _format_list(values) -> str:
    return " ".join(str(v) for v in values)


def render(report: CurveReport, outputs) -> str:
    inv = report.invariants
    sp = report.spectral
    h = report.hilbert
    lines = []
    if "summary" in outputs:
        lines += [
            f"f = {report.f}",
            f"degree d = {report.d}",
            f"mu(C) = {inv.mu}   tau(C) = {inv.tau}   chi(U) = {inv.chi}",
            f"ct(f) = {h.ct}   st(f) = {h.st}   mdr(f) = {h.mdr}",
            f"q0(f) = {sp.q0_observed if sp.q0_observed is not None else 'not observed'}",
            f"b1(F) = {inv.b1}   b2(F) = {inv.b2}",
            f"status = {inv.status} (mode {report.mode_used})",
        ]
        if sp.certificate:
            failed = [k for k, ok in sp.certificate.items() if not ok]
            lines.append("Euler certificate: " + ("passes for all k" if not failed else f"fails for k = {failed}"))
        if sp.killed_row1:
            lines.append(f"nonzero E_3 row-1 terms killed by P-filtration bounds at q = {list(sp.killed_row1)}")
    if "spectra" in outputs:
        lines.append(f"Sp_P^1(f) = {inv.sp_P1}")
        lines.append(f"Sp_P^0(f) = {inv.sp_P0 if inv.sp_P0 is not None else 'unavailable (first cycle only)'}")
    if "alexander" in outputs:
        lines.append(f"Delta^1(t) = {inv.delta1.factored()}")
        lines.append(f"Delta^2(t) = {inv.delta2.factored()}")
        lines.append(f"dim H^1(F)_lambda_k, k=1..d: {_format_list(inv.h1)}")
    if "bs-roots" in outputs and inv.bs is not None:
        roots = ", ".join(str(v) for v in inv.bs.values())
        lines.append(f"certified roots of b_f(-s): {{{roots}}}")
    if "tables" in outputs:
        t = report.tables
        lines.append(f"eps'  (q=0..4d): {_format_list(t.epsprime)}")
        lines.append(f"theta (q=0..4d): {_format_list(t.theta)}")
        if t.eps is not None:
            lines.append(f"eps   (q=0..4d): {_format_list(t.eps)}")
    if "json" in outputs:
        lines.append(json.dumps(report.to_json(), sort_keys=True, indent=2))
    return "\n".join(lines)


def _exit_code(exc: BaseException) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    outputs = tuple(s.strip() for s in args.output.split(",") if s.strip())
    text = args.input or args.expr
    if not text and not args.batch:
        build_parser().error("an input polynomial or --batch is required")
    try:
        config = RunConfig(
            input=text or "",
            mode=args.mode,
            primes=args.primes,
            exact=args.exact,
            seed=args.seed,
            outputs=outputs,
            batch=args.batch,
            threads=args.threads,
            strict=args.strict,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.batch:
        try:
            out = sys.stdout if not args.json or args.json == "-" else open(args.json, "w")
            with out if out is not sys.stdout else nullcontext(out):
                for record in run_batch(args.batch, config):
                    out.write(json.dumps(record, sort_keys=True) + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return 0

    try:
        report = run(config)
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    text_out = render(report, outputs)
    if text_out:
        print(text_out)
    if args.json:
        payload = json.dumps(report.to_json(args.timings), sort_keys=True, indent=2) + "\n"
        if args.json == "-":
            sys.stdout.write(payload)
        else:
            with open(args.json, "w") as fh:
                fh.write(payload)
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
