"""Command-line front end: ``spechtres {build,verify,betti,straighten,export}``.

Exit codes: 0 success, 1 a requested check failed, 2 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import resolution
from .resolution import FAMILIES, GradedComplex, check_params
from .specht import straighten
from .tableau import Partition, Tableau
from .verify import CHECKS, betti_expected, betti_of_complex, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    family: str
    size: int
    checks: tuple[str, ...] = CHECKS
    max_degree: int | None = None
    out: str | None = None
    fmt: str = "json"
    seed: int = 0
    samples: int | None = None

    def __post_init__(self):
        try:
            check_params(self.family, self.size)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise UsageError(f"unknown checks {unknown}; choose from {','.join(CHECKS)}")

    @property
    def nvars(self) -> int:
        return self.size if self.family == "n22" else 2 * self.size + 1


# ---------------------------------------------------------------------------
# helpers


def _size_from_args(args) -> tuple[str, int]:
    if args.family is None:
        raise UsageError("--family is required unless --artifact is given")
    if args.family == "n22":
        if args.n is None:
            raise UsageError("family n22 needs --n")
        return "n22", args.n
    if args.d is None:
        raise UsageError("family dd1 needs --d")
    return "dd1", args.d


def _load_artifact(path: str) -> GradedComplex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read artifact {path}: {exc}") from None
    try:
        return resolution.loads(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse artifact {path}: {exc}") from None


def _complex_from_args(args) -> GradedComplex:
    if getattr(args, "artifact", None):
        return _load_artifact(args.artifact)
    family, size = _size_from_args(args)
    try:
        return resolution.assemble(family, size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _size_of(cx: GradedComplex) -> int:
    return cx.params["n"] if cx.family == "n22" else cx.params["d"]


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None


def _render(cx: GradedComplex, fmt: str) -> str:
    if fmt == "json":
        return resolution.dumps(cx)
    if fmt == "text":
        return resolution.to_text(cx)
    if fmt == "m2":
        return resolution.to_macaulay2(cx)
    raise UsageError(f"unknown format {fmt!r}")


def _parse_checks(text: str | None) -> tuple[str, ...]:
    if not text:
        return CHECKS
    return tuple(c.strip() for c in text.split(",") if c.strip())


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    cx = _complex_from_args(args)
    _emit(_render(cx, args.format), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    cx = _complex_from_args(args)
    _emit(_render(cx, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cx = _complex_from_args(args)
    config = JobConfig(
        family=cx.family,
        size=_size_of(cx),
        checks=_parse_checks(args.checks),
        max_degree=args.max_degree,
        out=args.out,
        fmt=args.format,
        seed=args.seed,
        samples=args.samples,
    )
    samples = config.samples
    if samples is None and config.nvars > 6:
        samples = 500
    reports = run_checks(cx, config.checks, max_degree=config.max_degree, samples=samples, seed=config.seed)
    passed = all(r.passed for r in reports)
    if config.fmt == "json":
        payload = {
            "complex": cx.label(),
            "status": "pass" if passed else "fail",
            "seed": config.seed,
            "reports": [r.to_json() for r in reports],
        }
        text = json.dumps(payload, sort_keys=True, indent=2)
    else:
        lines = [f"{cx.label()}: {'PASS' if passed else 'FAIL'}"] + [r.line() for r in reports]
        text = "\n".join(lines)
    _emit(text, config.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_betti(args) -> int:
    cx = _complex_from_args(args)
    actual = betti_of_complex(cx)
    expected = betti_expected(cx.family, _size_of(cx))
    if args.format == "json":
        text = json.dumps(
            {"complex": cx.label(), "assembled": actual.to_json(), "closed_form": expected.to_json(),
             "agree": actual == expected},
            sort_keys=True,
        )
    else:
        lines = [f"{cx.label()}", "  i   j  beta_ij  closed-form"]
        for (i, j) in sorted(set(actual) | set(expected)):
            lines.append(f"{i:3d} {j:3d} {actual.get((i, j), 0):8d} {expected.get((i, j), 0):12d}")
        lines.append("totals: " + " ".join(str(t) for t in actual.totals()))
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK if actual == expected else EXIT_FAIL


def cmd_straighten(args) -> int:
    try:
        t = Tableau.parse(args.tableau)
        if args.shape is not None and t.shape != Partition.parse(args.shape):
            raise UsageError(f"tableau has shape {t.shape}, not {args.shape}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    terms = straighten(t).terms()
    if args.format == "json":
        text = json.dumps([{"tableau": s.to_text(), "coefficient": int(c)} for s, c in terms])
    else:
        head = f"e({t.to_text()}) ="
        body = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*e({s.to_text()})" for s, c in terms) or "0"
        text = f"{head} {body}"
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_family(p: argparse.ArgumentParser, artifact: bool) -> None:
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="number of variables for family n22")
    p.add_argument("--d", type=int, help="size parameter for family dd1 (n = 2d+1)")
    if artifact:
        p.add_argument("--artifact", help="read a complex built earlier instead of assembling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spechtres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="assemble a complex and serialise it")
    _add_family(p, artifact=False)
    p.add_argument("--format", choices=("json", "text", "m2"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run checks on an assembled or stored complex")
    _add_family(p, artifact=True)
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="random Garnir cases for welldef (default: exhaustive when n <= 6)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("betti", help="print the graded Betti table")
    _add_family(p, artifact=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("straighten", help="expand e(T) in the standard basis")
    p.add_argument("--shape")
    p.add_argument("--tableau", required=True, help='rows separated by "/", entries by ","')
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("export", help="convert a complex to another format")
    _add_family(p, artifact=True)
    p.add_argument("--format", choices=("json", "text", "m2"), default="m2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
