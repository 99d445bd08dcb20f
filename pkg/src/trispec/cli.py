"""Command-line front end.

Subcommands: ``solve`` (maximal eigenpair via efficient initials + RQI),
``power`` (reference power iteration), ``bounds`` (initial-shift bracket
and residual interval), ``hua`` (input-output collapse simulation),
``kappa`` (isoperimetric constants of a continuous operator) and
``bench`` (the benchmark table over a family of sizes).

Two output formats: human tables print 6 significant digits; ``--machine``
prints tab-separated records with 17 significant digits (round-trip
exact) and is byte-deterministic for identical invocations -- which is
why the machine-mode benchmark omits the wall-time column.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .contop import (
    KINDS,
    build_measures,
    kappa,
    lebesgue_operator,
    parse_operator,
)
from .errors import (
    ConvergenceError,
    FormatError,
    InvalidSystemError,
    SingularShiftError,
    ZeroSpectralGapError,
)
from .hua import Economy, collapse_time, parse_economy
from .initials import efficient_initials
from .iterate import (
    IterationTrace,
    RqiConfig,
    max_eigenpair,
    power_iteration,
    residual_bounds,
    rqi,
)
from .oracle import spectrum
from .tridiag import DenseMatrix, TridiagonalSystem, parse_system, square_model

__all__ = ["RunSpec", "parse_args", "run", "emit_trace", "bench_rows", "main"]

#: trace rows shown by default: 0-10, 50, 100..900 by hundreds, then 990
DEFAULT_CHECKPOINTS = tuple(range(11)) + (50,) + tuple(range(100, 901, 100)) + (990,)

_HUA_MATRIX = np.array([[0.25, 0.14], [0.40, 0.12]])
_HUA_INPUT = (44.0, 20.0)


@dataclass(frozen=True)
class RunSpec:
    """Validated description of one CLI invocation."""

    subcommand: str
    model: str | None = None
    file: str | None = None
    sizes: str | None = None
    tol: float = 1e-12
    max_iters: int | None = None
    grid: int = 1000
    kind: str | None = None
    machine: bool = False


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trispec",
        description="Maximal eigenpairs of tridiagonal systems and eigenvalue "
        "bounds for one-dimensional operators.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str, **flags) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if "model" in flags:
            p.add_argument("--model", help=flags["model"])
        if "file" in flags:
            p.add_argument("--file", help=flags["file"])
        if "sizes" in flags:
            p.add_argument("--sizes", help=flags["sizes"])
        if "tol" in flags:
            p.add_argument("--tol", type=float, default=1e-12, help="relative tolerance")
        if "max_iters" in flags:
            p.add_argument(
                "--max-iters", type=int, default=flags["max_iters"], help="iteration cap"
            )
        if "grid" in flags:
            p.add_argument("--grid", type=int, default=1000, help="grid size")
        if "kind" in flags:
            p.add_argument(
                "--kind", choices=["nn", "dd", "dn", "nd"], help="boundary codes"
            )
        p.add_argument("--machine", action="store_true", help="tab-separated full precision")
        return p

    add("solve", "maximal eigenpair via efficient initials and RQI",
        model="built-in system, e.g. square:7", file="system file", tol=True, max_iters=50)
    add("power", "reference power iteration trace",
        model="built-in system, e.g. square:7", file="system file", max_iters=1000)
    add("bounds", "initial-shift bracket and residual interval",
        model="built-in system, e.g. square:7", file="system file")
    add("hua", "input-output collapse simulation",
        model="hua or hua:x0,x1 (default input 44,20)", file="economy file",
        max_iters=1000)
    add("kappa", "isoperimetric constants of a continuous operator",
        model="built-in operator: lebesgue", file="operator file", grid=True, kind=True)
    add("bench", "benchmark table over a family of sizes",
        model="family name: square", sizes="comma-separated N+1 values",
        tol=True, max_iters=50)
    return parser


def parse_args(argv=None) -> RunSpec:
    ns = _build_parser().parse_args(argv)
    return RunSpec(
        subcommand=ns.subcommand,
        model=getattr(ns, "model", None),
        file=getattr(ns, "file", None),
        sizes=getattr(ns, "sizes", None),
        tol=getattr(ns, "tol", 1e-12),
        max_iters=getattr(ns, "max_iters", None),
        grid=getattr(ns, "grid", 1000),
        kind=getattr(ns, "kind", None),
        machine=ns.machine,
    )


def _fmt(value: float, machine: bool) -> str:
    return "%.17g" % value if machine else "%.6g" % value


def emit_trace(trace: IterationTrace, checkpoints=None, machine: bool = False) -> list[str]:
    """Render trace rows at the requested checkpoints.

    ``None`` means the default reference-table checkpoints; an empty
    sequence means every recorded step.  Checkpoints beyond the recorded
    range produce a row marked absent.
    """
    if not trace.steps:
        raise ValueError("cannot emit an empty trace")
    by_k = {k: (z, resid) for k, z, resid in trace.steps}
    if checkpoints is None:
        checkpoints = DEFAULT_CHECKPOINTS
    ks = [k for k, _, _ in trace.steps] if len(checkpoints) == 0 else list(checkpoints)
    rows = []
    for k in ks:
        if k in by_k:
            z, _ = by_k[k]
            rows.append(f"{k}\t{_fmt(z, True)}" if machine else f"{k:6d}  {_fmt(z, False)}")
        else:
            rows.append(f"{k}\tabsent" if machine else f"{k:6d}  (absent)")
    return rows


def _load_system(spec: RunSpec) -> TridiagonalSystem:
    if (spec.file is None) == (spec.model is None):
        raise FormatError(f"{spec.subcommand}: need exactly one of --model or --file")
    if spec.file is not None:
        return parse_system(Path(spec.file).read_text())
    name, _, param = spec.model.partition(":")
    if name.strip().lower() != "square":
        raise FormatError(f"unknown system model {spec.model!r} (expected square:<n_max>)")
    try:
        n_max = int(param)
    except ValueError:
        raise FormatError(
            f"model {spec.model!r}: square needs an integer parameter, e.g. square:7"
        ) from None
    return square_model(n_max)


def _load_economy(spec: RunSpec) -> Economy:
    if spec.file is not None and spec.model is not None:
        raise FormatError("hua: give --model or --file, not both")
    if spec.file is not None:
        return parse_economy(Path(spec.file).read_text())
    model = spec.model or "hua"
    name, _, param = model.partition(":")
    if name.strip().lower() != "hua":
        raise FormatError(f"unknown economy model {model!r} (expected hua[:x0,x1])")
    x0 = _HUA_INPUT
    if param:
        try:
            x0 = tuple(float(tok) for tok in param.split(",") if tok)
        except ValueError:
            raise FormatError(f"model {model!r}: bad input vector") from None
        if len(x0) != 2:
            raise FormatError("hua model input must have exactly two components")
    return Economy(structure=DenseMatrix(_HUA_MATRIX), input=np.array(x0))


def _load_operator(spec: RunSpec):
    if (spec.file is None) == (spec.model is None):
        raise FormatError("kappa: need exactly one of --model or --file")
    if spec.file is not None:
        return parse_operator(Path(spec.file).read_text())
    if spec.model.strip().lower() != "lebesgue":
        raise FormatError(f"unknown operator model {spec.model!r} (expected lebesgue)")
    return lebesgue_operator()


def _run_solve(spec: RunSpec, out) -> int:
    q = _load_system(spec)
    cfg = RqiConfig(tol=spec.tol, max_iters=spec.max_iters or 50)
    lam, g, trace = max_eigenpair(q, cfg)
    if spec.machine:
        for k, z, resid in trace.steps:
            out.write(f"step\t{k}\t{_fmt(z, True)}\t{_fmt(resid, True)}\n")
        out.write(f"lambda\t{_fmt(lam, True)}\n")
        for i, gi in enumerate(g):
            out.write(f"g\t{i}\t{_fmt(gi, True)}\n")
    else:
        if trace.steps:
            out.write("     k  z_k         residual\n")
            for k, z, resid in trace.steps:
                out.write(f"{k:6d}  {_fmt(z, False):<10}  {_fmt(resid, False)}\n")
        out.write(f"lambda_0 = {_fmt(lam, False)}\n")
        out.write("g = (" + ", ".join(_fmt(gi, False) for gi in g) + ")\n")
        if trace.pitfall_warning:
            out.write("warning: converged above the 2/delta1 bracket (pitfall)\n")
    return 0


def _run_power(spec: RunSpec, out) -> int:
    q = _load_system(spec)
    guess = efficient_initials(q)
    trace = power_iteration(q, guess.v0_raw, max_iters=spec.max_iters or 1000)
    rows = emit_trace(trace, None, spec.machine)
    if not spec.machine:
        out.write("     k  estimate\n")
    for row in rows:
        out.write(row + "\n")
    return 0


def _run_bounds(spec: RunSpec, out) -> int:
    q = _load_system(spec)
    guess = efficient_initials(q)
    _, _, trace = max_eigenpair(q)
    lo, hi = residual_bounds(q, trace.final_vector, trace.z_final)
    if spec.machine:
        out.write(f"delta1\t{_fmt(guess.delta1, True)}\n")
        out.write(
            f"bracket\t{_fmt(1.0 / guess.delta1, True)}\t{_fmt(2.0 / guess.delta1, True)}\n"
        )
        out.write(f"z\t{_fmt(trace.z_final, True)}\n")
        out.write(f"interval\t{_fmt(lo, True)}\t{_fmt(hi, True)}\n")
    else:
        out.write(f"delta1 = {_fmt(guess.delta1, False)}\n")
        out.write(
            f"shift bracket = [{_fmt(1.0 / guess.delta1, False)}, "
            f"{_fmt(2.0 / guess.delta1, False)}]\n"
        )
        out.write(f"z = {_fmt(trace.z_final, False)}\n")
        out.write(f"residual interval = [{_fmt(lo, False)}, {_fmt(hi, False)}]\n")
    return 0


def _run_hua(spec: RunSpec, out) -> int:
    economy = _load_economy(spec)
    report = collapse_time(economy, horizon=spec.max_iters or 1000)
    if spec.machine:
        for year, x in enumerate(report.trajectory):
            comps = "\t".join(_fmt(v, True) for v in x)
            out.write(f"x\t{year}\t{comps}\n")
        if report.collapsed:
            out.write(f"collapse\t{report.collapse_year}\t{report.offending_component}\n")
        else:
            out.write("collapse\tnone\n")
    else:
        for year, x in enumerate(report.trajectory):
            comps = ", ".join(_fmt(v, False) for v in x)
            out.write(f"year {year}: ({comps})\n")
        if report.collapsed:
            out.write(
                f"collapse at year {report.collapse_year} "
                f"(component {report.offending_component})\n"
            )
        else:
            out.write(f"no collapse within {len(report.trajectory) - 1} years\n")
    return 0


def _run_kappa(spec: RunSpec, out) -> int:
    op = _load_operator(spec)
    grid = build_measures(op, spec.grid)
    kinds = [spec.kind] if spec.kind else list(KINDS)
    for kind in kinds:
        result = kappa(kind, grid)
        arg = "\t".join(_fmt(x, True) for x in result.argopt)
        if spec.machine:
            out.write(
                f"{result.kind}\t{_fmt(result.kappa, True)}\t{_fmt(result.lower, True)}"
                f"\t{_fmt(result.upper, True)}\t{arg}\n"
            )
        else:
            at = ", ".join(_fmt(x, False) for x in result.argopt)
            out.write(
                f"kappa_{result.kind} = {_fmt(result.kappa, False)}  "
                f"lambda bracket [{_fmt(result.lower, False)}, {_fmt(result.upper, False)}]"
                f"  at ({at})\n"
            )
    return 0


@dataclass(frozen=True)
class BenchRow:
    size: int
    z0: float
    z1: float
    z2: float
    lambda_oracle: float
    seconds: float


def bench_rows(sizes, tol: float = 1e-12, max_iters: int = 50) -> list[BenchRow]:
    """Run the benchmark family: efficient initials with the convex-
    combination shift, two recorded RQI steps, and the oracle value."""
    rows = []
    for size in sizes:
        if size < 2:
            raise InvalidSystemError(f"bench size {size} too small (need N+1 >= 2)")
        start = time.perf_counter()
        q = square_model(size - 1)
        guess = efficient_initials(q)
        trace = rqi(q, guess, RqiConfig(tol=tol, max_iters=max_iters), z0=guess.z0_table4)
        elapsed = time.perf_counter() - start
        zs = trace.zs
        z1 = float(zs[0]) if zs.size >= 1 else trace.z_final
        z2 = float(zs[1]) if zs.size >= 2 else trace.z_final
        lam = float(spectrum(q, 1).eigenvalues[0])
        rows.append(
            BenchRow(
                size=size, z0=guess.z0_table4, z1=z1, z2=z2,
                lambda_oracle=lam, seconds=elapsed,
            )
        )
    return rows


def _run_bench(spec: RunSpec, out) -> int:
    if spec.model is None or spec.model.strip().lower() != "square":
        raise FormatError("bench: --model square is the only benchmark family")
    if not spec.sizes:
        raise FormatError("bench: --sizes is required, e.g. --sizes 8,100,500,1000")
    try:
        sizes = [int(tok) for tok in spec.sizes.split(",") if tok]
    except ValueError:
        raise FormatError(f"bench: bad --sizes value {spec.sizes!r}") from None
    if not sizes:
        raise FormatError("bench: --sizes is empty")
    rows = bench_rows(sizes, tol=spec.tol, max_iters=spec.max_iters or 50)
    if spec.machine:
        for r in rows:
            out.write(
                f"{r.size}\t{_fmt(r.z0, True)}\t{_fmt(r.z1, True)}\t{_fmt(r.z2, True)}"
                f"\t{_fmt(r.lambda_oracle, True)}\n"
            )
    else:
        out.write("   N+1  z0          z1          z2          lambda_0    seconds\n")
        for r in rows:
            out.write(
                f"{r.size:6d}  {_fmt(r.z0, False):<10}  {_fmt(r.z1, False):<10}  "
                f"{_fmt(r.z2, False):<10}  {_fmt(r.lambda_oracle, False):<10}  "
                f"{r.seconds:.3f}\n"
            )
    return 0


_RUNNERS = {
    "solve": _run_solve,
    "power": _run_power,
    "bounds": _run_bounds,
    "hua": _run_hua,
    "kappa": _run_kappa,
    "bench": _run_bench,
}


def run(spec: RunSpec, out=None) -> int:
    """Execute a validated run description; returns the exit status."""
    return _RUNNERS[spec.subcommand](spec, out or sys.stdout)


def main(argv=None) -> int:
    """Console entry point.  Exit codes: 0 success, 1 numeric failure,
    2 parse/validation error."""
    try:
        spec = parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code or 0)
    try:
        return run(spec)
    except (ZeroSpectralGapError, SingularShiftError, ConvergenceError) as exc:
        print(f"trispec: numeric failure: {exc}", file=sys.stderr)
        return 1
    except np.linalg.LinAlgError as exc:
        print(f"trispec: numeric failure: {exc}", file=sys.stderr)
        return 1
    except (FormatError, InvalidSystemError) as exc:
        print(f"trispec: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"trispec: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
