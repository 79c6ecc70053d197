"""Command-line surface for the toolkit.

Subcommands:

    solve     SPEC.json            print f and f/x for a coefficient-array spec
    pipeline  SPEC.json [flags]    solve, build the Bell array, run analyses
    verify    [FILTER | --sweep]   run bundled fixtures or a conjecture sweep

Exit codes: 0 success, 1 fixture or comparison failure, 2 bad arguments or
spec or insufficient order, 3 I/O problems (missing or unparsable files).

Output is deterministic.  JSON output renders every rational as a string
("7" or "11/4") so arbitrarily large values survive any JSON parser, and is
emitted with sorted keys so reprinting a parsed report is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from .series import Sequence, format_rational
from .core import bell_from_f, production_matrix, riordan_triangle, a_sequence, z_sequence
from .amatrix import AMatrixSpec, InvalidSpec, solve_f
from .hankel import (
    FAMILY,
    INCONSISTENT,
    INSUFFICIENT,
    UNIQUE,
    hankel_transform,
    jfraction,
    somos_fit,
)
from . import verify as verify_mod

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


@dataclass(frozen=True)
class CliConfig:
    """Resolved command options; every command reads from one of these."""

    order: int = 32
    rows: int = 12
    format: str = "plain"

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        return cls(
            order=getattr(args, "order", None) or 32,
            rows=getattr(args, "rows", None) or 12,
            format=getattr(args, "format", "plain"),
        )


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _fmt_list(values) -> str:
    return " ".join(format_rational(v) for v in values)


def _json_list(values) -> list[str]:
    return [format_rational(v) for v in values]


def _load_spec(path: str) -> AMatrixSpec:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise _CliError(EXIT_IO, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_IO, f"{path} is not valid JSON: {exc}")
    try:
        return AMatrixSpec.from_dict(data)
    except (InvalidSpec, TypeError, ValueError) as exc:
        raise _CliError(EXIT_USAGE, f"invalid spec in {path}: {exc}")


def _cmd_solve(args) -> int:
    config = CliConfig.from_args(args)
    spec = _load_spec(args.spec)
    report = solve_f(spec, config.order)
    fx = report.f.div_x()
    if config.format == "json":
        _emit_json(
            {
                "f": _json_list(report.f.coeffs),
                "f_over_x": _json_list(fx.coeffs),
                "iterations": report.iterations,
                "order": config.order,
            }
        )
    else:
        print("f:    " + _fmt_list(report.f.coeffs))
        print("f/x:  " + _fmt_list(fx.coeffs))
    return EXIT_OK


def _fit_description(fit) -> str:
    if fit.kind == UNIQUE:
        return (
            f"Unique alpha={format_rational(fit.alpha)} "
            f"beta={format_rational(fit.beta)}"
        )
    if fit.kind == FAMILY:
        p, q, r = fit.family_description
        return (
            f"Family {format_rational(p)}*alpha + {format_rational(q)}*beta"
            f" = {format_rational(r)}"
        )
    if fit.kind == INCONSISTENT:
        return f"Inconsistent at window {fit.failing_index}"
    return INSUFFICIENT


def _fit_json(fit) -> dict:
    out: dict = {"kind": fit.kind}
    if fit.kind == UNIQUE:
        out["alpha"] = format_rational(fit.alpha)
        out["beta"] = format_rational(fit.beta)
    elif fit.kind == FAMILY:
        out["line"] = _json_list(fit.family_description)
    elif fit.kind == INCONSISTENT:
        out["failing_window"] = fit.failing_index
    return out


def _cmd_pipeline(args) -> int:
    config = CliConfig.from_args(args)
    spec = _load_spec(args.spec)
    order, rows = config.order, config.rows
    wants_depth = args.hankel or args.somos_fit or args.jfraction
    if wants_depth and order < 2 * rows:
        raise _CliError(
            EXIT_USAGE,
            f"insufficient order: depth-{rows} Hankel/J-fraction analyses need"
            f" order >= {2 * rows}, have {order}",
        )
    if (args.triangle or args.production) and order < rows + 1:
        raise _CliError(
            EXIT_USAGE,
            f"insufficient order: {rows} rows need order >= {rows + 1}, have {order}",
        )
    pair = bell_from_f(solve_f(spec, order).f)
    column = pair.g
    plain_lines: list[str] = []
    payload: dict = {"column": _json_list(column.coeffs)}
    plain_lines.append("column: " + _fmt_list(column.coeffs))
    if args.triangle:
        tri = riordan_triangle(pair, rows)
        payload["triangle"] = [_json_list(r) for r in tri.rows]
        plain_lines.append("triangle:")
        plain_lines.extend("  " + _fmt_list(r) for r in tri.rows)
    if args.production:
        prod = production_matrix(pair, rows)
        payload["production"] = {
            "matrix": [_json_list(r) for r in prod.matrix],
            "z": _json_list(prod.z.terms),
            "a": _json_list(prod.a.terms),
        }
        plain_lines.append("production:")
        plain_lines.extend("  " + _fmt_list(r) for r in prod.matrix)
        plain_lines.append("Z: " + _fmt_list(prod.z.terms))
        plain_lines.append("A: " + _fmt_list(prod.a.terms))
    if args.aseq:
        aseq = a_sequence(pair)
        payload["aseq"] = _json_list(aseq.terms)
        plain_lines.append("A-sequence: " + _fmt_list(aseq.terms))
    if args.zseq:
        zseq = z_sequence(pair)
        payload["zseq"] = _json_list(zseq.terms)
        plain_lines.append("Z-sequence: " + _fmt_list(zseq.terms))
    hank = None
    if args.hankel or args.somos_fit:
        hank = hankel_transform(Sequence(column.coeffs), rows - 1)
    if args.hankel:
        payload["hankel"] = _json_list(hank.terms)
        plain_lines.append("hankel: " + _fmt_list(hank.terms))
    if args.somos_fit:
        fit = somos_fit(hank)
        payload["somos_fit"] = _fit_json(fit)
        plain_lines.append("somos fit: " + _fit_description(fit))
    if args.jfraction:
        jf = jfraction(Sequence(column.coeffs), rows - 1)
        payload["jfraction"] = {
            "b": _json_list(jf.b),
            "lambda": _json_list(jf.lam),
            "terminated": jf.terminated,
        }
        plain_lines.append("J-fraction b:      " + _fmt_list(jf.b))
        plain_lines.append("J-fraction lambda: " + _fmt_list(jf.lam))
        if jf.terminated:
            plain_lines.append("J-fraction terminated early (a lambda vanished)")
    exit_code = EXIT_OK
    if args.bfile:
        try:
            ref = verify_mod.load_bfile(args.bfile)
        except OSError as exc:
            raise _CliError(EXIT_IO, f"cannot read {args.bfile}: {exc}")
        except (verify_mod.MalformedLine, verify_mod.NonConsecutiveIndices) as exc:
            raise _CliError(EXIT_USAGE, f"bad b-file {args.bfile}: {exc}")
        start = ref.offset
        overlap = min(len(ref), column.order - start) if start >= 0 else 0
        if overlap <= 0:
            raise _CliError(EXIT_USAGE, "b-file does not overlap the computed column")
        match = all(ref.terms[i] == column.coeffs[start + i] for i in range(overlap))
        payload["bfile"] = {"path": args.bfile, "compared": overlap, "match": match}
        plain_lines.append(
            f"b-file check: {'match' if match else 'MISMATCH'} on {overlap} terms"
        )
        if not match:
            exit_code = EXIT_FAILURE
    if config.format == "json":
        _emit_json(payload)
    else:
        print("\n".join(plain_lines))
    return exit_code


_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _parse_range(text: str) -> tuple[int, int]:
    m = _RANGE_RE.match(text)
    if not m:
        raise _CliError(EXIT_USAGE, f"range must look like -2..2, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise _CliError(EXIT_USAGE, f"empty range {text!r}")
    return lo, hi


def _cmd_verify(args) -> int:
    if args.sweep:
        # grid sweeps default to a lighter order than single-spec workflows
        order = args.order if args.order is not None else 14
        lo, hi = _parse_range(args.range)
        sweep = (
            verify_mod.sweep_conjecture_rho0
            if args.sweep == "rho0"
            else verify_mod.sweep_conjecture_rho_delta
        )
        try:
            report = sweep(lo, hi, order)
        except ValueError as exc:
            raise _CliError(EXIT_USAGE, str(exc))
        if args.format == "json":
            _emit_json(report.as_dict())
        else:
            print(
                f"sweep {report.family} over [{lo}..{hi}]^4: "
                f"{report.confirmed} confirmed, {report.degenerate} degenerate, "
                f"{len(report.counterexamples)} counterexamples of {report.total}"
            )
            for params, window in report.counterexamples:
                print(f"  COUNTEREXAMPLE at {params}, window {window}")
        return EXIT_OK
    try:
        order = args.order if args.order is not None else verify_mod.DEFAULT_ORDER
        report = verify_mod.run_fixtures(args.filter or None, order=order)
    except verify_mod.FixtureNotFound as exc:
        raise _CliError(EXIT_USAGE, str(exc))
    if args.format == "json":
        _emit_json(
            {
                "total": report.total,
                "failed": [
                    {"id": o.id, "detail": o.detail} for o in report.failed
                ],
            }
        )
    else:
        for outcome in report.outcomes:
            mark = "ok" if outcome.ok else "FAIL"
            extra = f"  ({outcome.detail})" if outcome.detail else ""
            print(f"{mark:4s} {outcome.id}{extra}")
        print(f"{report.total - len(report.failed)}/{report.total} fixtures passed")
    return EXIT_OK if report.ok else EXIT_FAILURE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riordan",
        description="Exact Riordan-array toolkit: solve, analyze, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--order", type=int, default=32, help="series truncation order")
        p.add_argument(
            "--format", choices=("plain", "json"), default="plain", help="output format"
        )

    p_solve = sub.add_parser("solve", help="solve a coefficient-array spec for f")
    p_solve.add_argument("spec", help="path to an AMatrixSpec JSON file")
    common(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_pipe = sub.add_parser("pipeline", help="solve a spec and run analyses")
    p_pipe.add_argument("spec", help="path to an AMatrixSpec JSON file")
    common(p_pipe)
    p_pipe.add_argument("--rows", type=int, default=12, help="depth of the analyses")
    p_pipe.add_argument("--triangle", action="store_true", help="print the Bell triangle")
    p_pipe.add_argument("--production", action="store_true", help="print the production matrix")
    p_pipe.add_argument("--aseq", action="store_true", help="print the A-sequence")
    p_pipe.add_argument("--zseq", action="store_true", help="print the Z-sequence")
    p_pipe.add_argument("--hankel", action="store_true", help="print the Hankel transform of the column")
    p_pipe.add_argument("--somos-fit", dest="somos_fit", action="store_true", help="fit Somos-4 parameters to the Hankel transform")
    p_pipe.add_argument("--jfraction", action="store_true", help="print the J-fraction of the column")
    p_pipe.add_argument("--bfile", help="compare the column against a local b-file")
    p_pipe.set_defaults(func=_cmd_pipeline)

    p_verify = sub.add_parser("verify", help="run bundled fixtures or conjecture sweeps")
    p_verify.add_argument("filter", nargs="?", default="", help="substring filter on fixture ids")
    p_verify.add_argument("--order", type=int, default=None, help="series truncation order")
    p_verify.add_argument(
        "--format", choices=("plain", "json"), default="plain", help="output format"
    )
    p_verify.add_argument("--sweep", choices=("rho0", "rhodelta"), help="run a conjecture sweep instead of fixtures")
    p_verify.add_argument(
        "--range",
        default="-2..2",
        help="per-parameter integer range LO..HI (write --range=-2..2 for negative bounds)",
    )
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except verify_mod.FixtureNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
