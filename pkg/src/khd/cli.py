"""Command-line interface: generate algebras, verify axioms, solve kernels, check TPS.

Exit codes follow a sysexits-style taxonomy so acceptance runs can be
scripted:

    0   all requested checks passed / output written
    1   a mathematical violation was found
    2   I/O failure
    64  usage error (bad flag values, window preconditions)
    65  data error (unparseable or mismatched input files)

The ``--jobs`` worker count (solver cells run per process) is overridden by
the KHD_JOBS environment variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import io_json
from .algebra import build_kantor_double_lv, build_virasoro_like
from .checks import check_grading, check_lemma31_relations, check_super_jacobi
from .errors import KhdError, AlgebraFormatError, NonHomogeneousProduct, ReportMismatch, WindowTooSmall
from .grades import Window
from .kantor import virasoro_like_poisson
from .solver import DerivationReport, dump_matrix, solve_half_superderivations
from .tpa import (
    check_associative,
    check_grade_additive,
    check_lemma_b,
    check_supercommutative,
    check_transposed_leibniz,
    classify_tps,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_IO = 2
EXIT_USAGE = 64
EXIT_DATA = 65

GEN_KINDS = ("virasoro-like", "kantor-double-lv")
VERIFY_CHECKS = ("jacobi", "grading", "lemma31")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse's own failures must exit with the usage code, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    """Validated knobs shared by the solver-flavoured subcommands."""

    outer: int
    inner: int
    degree_bound: int
    delta: Fraction
    jobs: int
    fmt: str
    output: str | None

    @classmethod
    def from_args(cls, args, alg_window: int) -> "RunConfig":
        outer = args.outer if args.outer is not None else alg_window
        if outer < 1 or args.inner < 1 or args.degree_bound < 1:
            raise UsageError("outer, inner and degree bound must be >= 1")
        if args.inner + args.degree_bound > outer:
            raise UsageError(
                f"inner ({args.inner}) + degree bound ({args.degree_bound}) must not exceed outer ({outer})"
            )
        if outer > alg_window:
            raise UsageError(f"outer window {outer} exceeds the input algebra's window {alg_window}")
        try:
            delta = Fraction(args.delta)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --delta value {args.delta!r}: {exc}")
        return cls(outer, args.inner, args.degree_bound, delta, resolve_jobs(args.jobs),
                   args.format, args.output)


def resolve_jobs(flag_value: int | None) -> int:
    """KHD_JOBS overrides the flag; default is the logical CPU count."""
    env = os.environ.get("KHD_JOBS")
    if env is not None:
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"KHD_JOBS must be an integer, got {env!r}")
    elif flag_value is not None:
        jobs = flag_value
    else:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise UsageError("worker count must be >= 1")
    return jobs


def _write_output(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _load_file(path: str) -> io_json.AlgebraFile:
    try:
        return io_json.load_path(path)
    except OSError as exc:
        raise _IOFailure(str(exc))


class _IOFailure(Exception):
    pass


def _emit_violations(violations, fmt: str, output: str | None, header: str) -> None:
    if fmt == "json":
        doc = {"check": header, "violations": [v.to_json() for v in violations]}
        _write_output(json.dumps(doc, indent=2) + "\n", output)
    else:
        lines = [f"{header}: {len(violations)} violation(s)"]
        lines += [f"  {v}" for v in violations[:50]]
        if len(violations) > 50:
            lines.append(f"  ... {len(violations) - 50} more")
        _write_output("\n".join(lines) + "\n", output)


def cmd_gen(args) -> int:
    if args.window < 1:
        raise UsageError("--window must be >= 1")
    w = Window(args.window)
    if args.kind == "virasoro-like":
        # includes the Poisson product table so the same file feeds the
        # double constructor and the TPS checker
        products = tuple(
            (x, y, dict(t)) for (x, y), t in sorted(virasoro_like_poisson(w).product.items())
        )
        f = io_json.from_superalgebra(build_virasoro_like(w), products=products)
    else:
        f = io_json.from_superalgebra(build_kantor_double_lv(w))
    try:
        _write_output(io_json.dumps(f), args.output)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _load_file(args.input)
    alg = f.to_superalgebra()
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    for c in names:
        if c not in VERIFY_CHECKS:
            raise UsageError(f"unknown check {c!r}; pick from {', '.join(VERIFY_CHECKS)}")
    violations = []
    if "grading" in names:
        violations += check_grading(alg)
    if "jacobi" in names:
        violations += check_super_jacobi(alg)
    if "lemma31" in names:
        violations += check_lemma31_relations(alg)
    _emit_violations(violations, args.format, args.output, f"verify {','.join(names)}")
    return EXIT_VIOLATION if violations else EXIT_OK


def _report_text(report: DerivationReport) -> str:
    lines = [
        f"algebra {report.algebra}  delta {report.delta}  outer {report.outer}"
        f"  inner {report.inner}  degree bound {report.degree_bound}",
        f"{'degree':>10} {'parity':>6} {'raw':>5} {'projected':>9}  note",
    ]
    for c in report.cells:
        note = "identity" if c.identity_detected else ""
        lines.append(
            f"{str(c.degree):>10} {c.parity:>6} {c.raw_dim:>5} {c.projected_dim:>9}  {note}"
        )
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    f = _load_file(args.input)
    alg = f.to_superalgebra()
    cfg = RunConfig.from_args(args, alg.window.n)
    try:
        report = solve_half_superderivations(
            alg,
            Window(cfg.outer),
            Window(cfg.inner),
            cfg.degree_bound,
            delta=cfg.delta,
            jobs=cfg.jobs,
        )
    except WindowTooSmall as exc:
        raise UsageError(str(exc))
    if args.dump_matrices:
        from .solver import build_constraints

        outdir = Path(args.dump_matrices)
        outdir.mkdir(parents=True, exist_ok=True)
        for cell in report.cells:
            cs = build_constraints(alg, cell.degree, cell.parity, cfg.delta, Window(cfg.outer))
            name = f"cell_{cell.degree[0]}_{cell.degree[1]}_p{cell.parity}.txt"
            dump_matrix(cs, outdir / name)
    if cfg.fmt == "json":
        _write_output(json.dumps(report.to_json(), indent=2) + "\n", cfg.output)
    else:
        _write_output(_report_text(report), cfg.output)
    return EXIT_OK


def _parse_report(path: str, alg) -> DerivationReport:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _IOFailure(str(exc))
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"report {path}: {exc}")
    try:
        from .solver import CellResult, KernelBasis

        cells = []
        for c in doc["cells"]:
            degree = (int(c["degree"][0]), int(c["degree"][1]))
            empty = KernelBasis((), (), degree, int(c["parity"]), Window(int(doc["outer"])))
            cells.append(
                CellResult(
                    degree,
                    int(c["parity"]),
                    int(c["raw_dim"]),
                    int(c["projected_dim"]),
                    bool(c["identity_detected"]),
                    empty,
                    empty,
                )
            )
        return DerivationReport(
            str(doc["algebra"]),
            Fraction(doc["delta"]),
            int(doc["outer"]),
            int(doc["inner"]),
            int(doc.get("degree_bound", 0)),
            tuple(cells),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise AlgebraFormatError(f"report {path}: malformed ({exc})")


def cmd_tpa(args) -> int:
    f = _load_file(args.input)
    alg = f.to_superalgebra()
    pf = _load_file(args.product)
    if pf.basis != f.basis:
        raise AlgebraFormatError(
            f"basis mismatch between {args.input} and {args.product}"
        )
    candidate = pf.to_product_candidate()
    outer = args.outer if args.outer is not None else alg.window.n
    if outer < 1 or outer > alg.window.n:
        raise UsageError(f"--outer must be between 1 and the algebra window {alg.window.n}")
    w = Window(outer)
    grade_violations = check_grade_additive(candidate)
    if grade_violations:
        # non-graded products cannot be expressed in this data model
        raise AlgebraFormatError(
            f"product is not grade-additive: {grade_violations[0]}"
        )
    violations = list(check_supercommutative(candidate, w))
    if not violations:
        violations += check_associative(candidate, w)
        try:
            violations += check_lemma_b(candidate, alg, w)
        except NonHomogeneousProduct as exc:
            raise AlgebraFormatError(str(exc))
    verdict_line = None
    ok = not violations
    if args.report:
        report = _parse_report(args.report, alg)
        classification = classify_tps(alg, report)
        verdict_line = str(classification)
        ok = ok and classification.trivial
    if args.format == "json":
        doc = {
            "violations": [v.to_json() for v in violations],
            "verdict": verdict_line,
            "passed": ok,
        }
        _write_output(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [f"tpa checks on {alg.name} with product {candidate.name}: "
                 f"{len(violations)} violation(s)"]
        lines += [f"  {v}" for v in violations[:50]]
        if verdict_line:
            lines.append(f"classification: {verdict_line}")
        _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_VIOLATION


def make_parser() -> _Parser:
    parser = _Parser(prog="khd", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a structure-constant file")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("-w", "--window", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run axiom checks on an algebra file")
    p.add_argument("input")
    p.add_argument("--checks", default="jacobi,grading",
                   help=f"comma list from {{{','.join(VERIFY_CHECKS)}}}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="compute half-superderivation kernels")
    p.add_argument("input")
    p.add_argument("--outer", type=int, default=None)
    p.add_argument("--inner", type=int, required=True)
    p.add_argument("--degree-bound", type=int, default=1)
    p.add_argument("--delta", default="1/2")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--dump-matrices", default=None, metavar="DIR")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("tpa", help="check transposed Poisson axioms for a product file")
    p.add_argument("input")
    p.add_argument("--product", required=True)
    p.add_argument("--outer", type=int, default=None)
    p.add_argument("--report", default=None,
                   help="derivation report JSON; adds the triviality classification")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_tpa)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraFormatError, ReportMismatch) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _IOFailure as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KhdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
