"""Command-line front end: generate, project, verify, compare, benchmark.

Exit codes: 0 success, 1 a verification that ran but did not pass, 2 usage
errors, 3 domain errors (infeasible target, bad dimensions, capacity), 4
unreadable or unwritable files.  Diagnostics are one line on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from .baselines import SolverConfig, admm_project, dykstra_project
from .bench import BenchPlan, run_benchmark, summarize, write_records
from .errors import CappedProjError, InvalidInputError
from .kkt import DEFAULT_TOL, certify, certify_result
from .oracle import GENERATOR_ID, InstanceSpec, enumerate_oracle, random_instance
from .projection import ProjectionInput, project_capped_box

DEFAULT_DIGITS = 17

EPS_ENV_VAR = "CAPPED_PROJ_EPS"


class FileFormatError(Exception):
    """Input file exists but its contents cannot be parsed as numbers."""


class UsageError(Exception):
    """Invocation problem outside argparse's reach, e.g. a bad env override."""


def read_vector(path) -> np.ndarray:
    """Vector from a UTF-8 text file: numbers split on whitespace/newlines.

    Lines starting with '#' are comments; the typographic minus sign is
    accepted alongside the ASCII one.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    tokens = []
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens.extend(stripped.replace("−", "-").split())
    values = []
    for tok in tokens:
        try:
            values.append(float(tok))
        except ValueError:
            raise FileFormatError(f"cannot parse {tok!r} in {path} as a number") from None
    return np.asarray(values, dtype=np.float64)


def write_vector(path, x, digits: int = DEFAULT_DIGITS, comment: str | None = None) -> None:
    """One number per line, optional leading '#' comment."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            if comment:
                fh.write(f"# {comment}\n")
            for v in x:
                fh.write(f"{v:.{digits}g}\n")
    except OSError as exc:
        raise FileFormatError(f"cannot write {path}: {exc}") from exc


def format_vector(x, digits: int = DEFAULT_DIGITS) -> str:
    return " ".join(f"{v:.{digits}g}" for v in x)


def _env_eps() -> float | None:
    raw = os.environ.get(EPS_ENV_VAR)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{EPS_ENV_VAR}={raw!r} is not a number") from None
    if not value > 0.0:
        raise UsageError(f"{EPS_ENV_VAR} must be positive, got {raw!r}")
    return value


def _int_list(text: str):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _method_list(text: str):
    from .bench import METHODS

    methods = tuple(tok for tok in text.split(",") if tok)
    if not methods:
        raise argparse.ArgumentTypeError("expected a comma-separated list of methods")
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown methods {unknown}; choose from {', '.join(METHODS)}"
        )
    return methods


def _cmd_project(args) -> int:
    y = read_vector(args.input)
    inp = ProjectionInput(y=y, s=args.s, t=args.cap)
    res = project_capped_box(inp, eps=_env_eps())
    if args.output:
        write_vector(args.output, res.x, args.digits)
    else:
        print(format_vector(res.x, args.digits))
    return 0


def _cmd_verify(args) -> int:
    x = read_vector(args.input)
    y = read_vector(args.against)
    inp = ProjectionInput(y=y, s=args.s)
    _, report = certify(inp, x, tol=args.tol)
    for name in (
        "stationarity_residual",
        "primal_lower",
        "primal_upper",
        "sum_residual",
        "dual_residual",
        "cs_residual",
    ):
        print(f"{name} {getattr(report, name):.17g}")
    print(f"max_residual {report.max_residual:.17g}")
    print(f"passed {'true' if report.passed else 'false'}")
    return 0 if report.passed else 1


def _cmd_compare(args) -> int:
    y = read_vector(args.input)
    inp = ProjectionInput(y=y, s=args.s)
    config = SolverConfig(tol=args.tol, max_iters=args.max_iters)
    eps = _env_eps()

    t0 = time.perf_counter()
    exact = project_capped_box(inp, eps=eps)
    exact_time = time.perf_counter() - t0

    rows = []
    for method in args.methods:
        if method == "exact":
            _, report = certify_result(inp, exact)
            rows.append((method, 1, True, exact_time, report.max_residual, 0.0))
        elif method in ("dykstra", "admm"):
            solver = dykstra_project if method == "dykstra" else admm_project
            t0 = time.perf_counter()
            out = solver(inp, config)
            elapsed = time.perf_counter() - t0
            _, report = certify(inp, out.x)
            diff = float(np.max(np.abs(out.x - exact.x)))
            rows.append((method, out.iterations, out.converged, elapsed, report.max_residual, diff))
        elif method == "oracle":
            t0 = time.perf_counter()
            x = enumerate_oracle(inp.y, inp.s)
            elapsed = time.perf_counter() - t0
            _, report = certify(inp, x)
            diff = float(np.max(np.abs(x - exact.x)))
            rows.append((method, 1, True, elapsed, report.max_residual, diff))
        else:  # pragma: no cover - argparse validates the names
            raise InvalidInputError(f"unknown method {method!r}")

    print(f"{'method':<8} {'iters':>8} {'converged':>9} {'seconds':>12} "
          f"{'max_kkt_residual':>17} {'max_diff_vs_exact':>18}")
    for method, iters, conv, secs, resid, diff in rows:
        print(f"{method:<8} {iters:>8} {str(conv).lower():>9} {secs:>12.6f} "
              f"{resid:>17.3e} {diff:>18.3e}")
    return 0


def _cmd_bench(args) -> int:
    plan = BenchPlan(
        sizes=args.sizes,
        repetitions=args.reps,
        methods=args.methods,
        base_seed=args.seed,
    )
    records = run_benchmark(plan, solver_eps=_env_eps())
    write_records(
        args.csv,
        records,
        metadata={"generator": GENERATOR_ID, "base_seed": plan.base_seed},
    )
    print(f"{'method':<8} {'D':>8} {'runs':>5} {'mean_seconds':>13} {'max_kkt_residual':>17}")
    for (method, d), stats in summarize(records).items():
        print(f"{method:<8} {d:>8} {stats['runs']:>5} {stats['mean_time']:>13.6f} "
              f"{stats['max_residual']:>17.3e}")
    print(f"wrote {len(records)} records to {args.csv}")
    return 0


def _cmd_gen(args) -> int:
    spec = InstanceSpec(D=args.d, seed=args.seed)
    inp = random_instance(spec)
    comment = f"D={spec.D} seed={spec.seed} s={inp.s:.17g} generator={GENERATOR_ID}"
    write_vector(args.output, inp.y, comment=comment)
    print(f"wrote D={spec.D} seed={spec.seed} s={inp.s:.17g} to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capped-proj",
        description="Exact Euclidean projection onto {x : sum(x) = s, 0 <= x <= cap}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a vector and print or save the result")
    p.add_argument("--s", type=float, required=True, help="sum target")
    p.add_argument("--cap", type=float, default=1.0, help="upper bound per coordinate")
    p.add_argument("--input", required=True, help="file with the vector to project")
    p.add_argument("--output", help="write the projection here instead of stdout")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                   help="significant digits to print")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("verify", help="check a candidate solution's optimality residuals")
    p.add_argument("--s", type=float, required=True, help="sum target")
    p.add_argument("--input", required=True, help="file with the candidate solution x")
    p.add_argument("--against", required=True, help="file with the original vector y")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compare", help="run several methods on one instance")
    p.add_argument("--s", type=float, required=True, help="sum target")
    p.add_argument("--input", required=True, help="file with the vector to project")
    p.add_argument("--methods", type=_method_list, default=("exact", "dykstra", "admm"))
    p.add_argument("--tol", type=float, default=1e-8, help="iterative stopping tolerance")
    p.add_argument("--max-iters", type=int, default=100_000)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("bench", help="time methods over a grid of sizes, write CSV")
    p.add_argument("--sizes", type=_int_list, default=None,
                   help="comma-separated dimensions (default: built-in grid)")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--methods", type=_method_list, default=("exact",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="write a reproducible random instance to a file")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_gen)

    return parser


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "sizes", "missing") is None:
        from .bench import DEFAULT_SIZES

        args.sizes = DEFAULT_SIZES
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CappedProjError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
