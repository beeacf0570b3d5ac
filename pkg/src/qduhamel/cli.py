"""Batch front end.

    qduhamel duhamel f.json g.json --q 0.5 --order 16
    qduhamel invert  f.json --q 0.5 --order 16
    qduhamel eval    f.json --z 0.2+0.1j
    qduhamel verify  --q-grid 0.3,0.5,0.9 --order 16 --seed 1234

Exit codes: 0 success / all checks pass, 1 verification failure, 2 bad
input or config, 3 domain error, 4 Duhamel singularity (f(0) = 0).

Series travel as JSON: {"order": N, "coeffs": [[re, im], ...]}.  The verify
command prints the report JSON on stdout and a human-readable table on
stderr; ``--corrupt-weights`` deliberately breaks the weight table as a
negative control for the suite itself.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (QDomainError, SeriesFormatError, SingularityError)
from .series import TruncatedSeries, evaluate, from_json, to_json
from .duhamel import duhamel_product
from .opalg import invert_duhamel
from .verify import GlobalConfig, report_table, report_to_json, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_SINGULAR = 4


def _load_series(path: str) -> TruncatedSeries:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SeriesFormatError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return from_json(text)
    except SeriesFormatError as exc:
        raise SeriesFormatError(f"{path}: {exc}") from exc


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_q_grid(raw: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise QDomainError(f"bad q grid {raw!r}: {exc}") from exc


def _parse_complex(raw: str) -> complex:
    try:
        return complex(raw.replace(" ", ""))
    except ValueError as exc:
        raise QDomainError(f"bad complex number {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qduhamel",
                                     description="q-Duhamel convolution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_q=True):
        if needs_q:
            p.add_argument("--q", type=float, default=0.5, help="deformation parameter in (0,1)")
        p.add_argument("--order", type=int, default=16, help="truncation order N")
        p.add_argument("--tol", type=float, default=1e-8, help="check tolerance")
        p.add_argument("--out", default=None, help="write the JSON result to this file")

    p_duh = sub.add_parser("duhamel", help="q-Duhamel product of two series files")
    p_duh.add_argument("f_path")
    p_duh.add_argument("g_path")
    add_common(p_duh)

    p_inv = sub.add_parser("invert", help="Duhamel inverse of a series file")
    p_inv.add_argument("f_path")
    add_common(p_inv)

    p_eval = sub.add_parser("eval", help="evaluate a series at a disc point")
    p_eval.add_argument("f_path")
    p_eval.add_argument("--z", required=True, help="evaluation point, e.g. 0.2+0.1j")
    p_eval.add_argument("--out", default=None)

    p_ver = sub.add_parser("verify", help="run the identity-verification suite")
    p_ver.add_argument("--q", type=float, default=None,
                       help="single q (overrides --q-grid)")
    p_ver.add_argument("--q-grid", default="0.3,0.5,0.9",
                       help="comma-separated q values")
    p_ver.add_argument("--order", type=int, default=16)
    p_ver.add_argument("--tol", type=float, default=1e-8)
    p_ver.add_argument("--seed", type=int, default=1234)
    p_ver.add_argument("--jackson-cutoff-max", type=int, default=10_000)
    p_ver.add_argument("--out", default=None)
    p_ver.add_argument("--corrupt-weights", action="store_true",
                       help="negative control: corrupt the weight table and expect failure")
    return parser


def cmd_duhamel(args) -> int:
    f = _load_series(args.f_path)
    g = _load_series(args.g_path)
    result = duhamel_product(f, g, args.q, args.order)
    _emit(to_json(result), args.out)
    return EXIT_OK


def cmd_invert(args) -> int:
    f = _load_series(args.f_path)
    result = invert_duhamel(f, args.q, args.order)
    _emit(to_json(result), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    f = _load_series(args.f_path)
    value = evaluate(f, _parse_complex(args.z))
    _emit(f"[{value.real:.17g}, {value.imag:.17g}]", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = (args.q,) if args.q is not None else _parse_q_grid(args.q_grid)
    cfg = GlobalConfig(q_grid=grid, order=args.order, tol=args.tol,
                       jackson_cutoff_max=args.jackson_cutoff_max, seed=args.seed)
    report = run_suite(cfg, corrupt_weights=args.corrupt_weights)
    _emit(report_to_json(report), args.out)
    print(report_table(report), file=sys.stderr)
    return EXIT_OK if report["summary"] == "pass" else EXIT_VERIFY_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handlers = {
        "duhamel": cmd_duhamel,
        "invert": cmd_invert,
        "eval": cmd_eval,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except SingularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except SeriesFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
