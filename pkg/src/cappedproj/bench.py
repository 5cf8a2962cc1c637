"""Timing harness comparing the exact solver against the baselines.

Each (size, repetition) pair maps to one random instance whose seed is
base_seed + repetition, so every method sees identical inputs and a plan is
reproducible from its fields alone.  Wall times cover only the solve call;
certification runs outside the clock and its worst residual is recorded next
to the time.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from .baselines import SolverConfig, admm_project, dykstra_project
from .errors import CapacityError, InvalidInputError
from .kkt import certify, certify_result
from .oracle import ORACLE_MAX_DIM, InstanceSpec, enumerate_oracle, random_instance
from .projection import ProjectionInput, project_capped_simplex

METHODS = ("exact", "dykstra", "admm", "oracle")

DEFAULT_SIZES = (50, 100, 500, 1000, 2000, 5000, 10000, 20000, 100000)

CSV_COLUMNS = ("method", "D", "s", "seed", "wall_time_seconds", "max_kkt_residual", "converged")


@dataclass
class BenchRecord:
    """One timed solve: who ran, on what, how long, how accurate."""

    method: str
    D: int
    s: float
    seed: int
    wall_time_seconds: float
    max_kkt_residual: float
    converged: bool


@dataclass
class BenchPlan:
    """Sizes, repetitions per size, methods to run, and the seed base."""

    sizes: tuple = DEFAULT_SIZES
    repetitions: int = 20
    methods: tuple = ("exact",)
    base_seed: int = 0

    def __post_init__(self):
        self.sizes = tuple(int(d) for d in self.sizes)
        self.methods = tuple(self.methods)
        self.repetitions = int(self.repetitions)
        self.base_seed = int(self.base_seed)
        if not self.sizes or any(d < 1 for d in self.sizes):
            raise InvalidInputError("sizes must be a nonempty list of positive dimensions")
        if self.repetitions < 1:
            raise InvalidInputError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.methods:
            raise InvalidInputError("methods must name at least one solver")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise InvalidInputError(f"unknown methods {unknown}; choose from {list(METHODS)}")
        if "oracle" in self.methods and max(self.sizes) > ORACLE_MAX_DIM:
            raise CapacityError(
                f"oracle cannot run beyond D={ORACLE_MAX_DIM}, plan asks for D={max(self.sizes)}"
            )


def _solve_timed(method, inp, solver_eps, config):
    if method == "exact":
        t0 = time.perf_counter()
        res = project_capped_simplex(inp, eps=solver_eps)
        elapsed = time.perf_counter() - t0
        _, report = certify_result(inp, res)
        return elapsed, report.max_residual, True
    if method == "oracle":
        t0 = time.perf_counter()
        x = enumerate_oracle(inp.y, inp.s)
        elapsed = time.perf_counter() - t0
        _, report = certify(inp, x)
        return elapsed, report.max_residual, True
    solver = dykstra_project if method == "dykstra" else admm_project
    t0 = time.perf_counter()
    out = solver(inp, config)
    elapsed = time.perf_counter() - t0
    _, report = certify(inp, out.x)
    return elapsed, report.max_residual, out.converged


def run_benchmark(
    plan: BenchPlan,
    *,
    solver_eps: float | None = None,
    config: SolverConfig | None = None,
) -> list[BenchRecord]:
    """Records for every (size, repetition, method) triple in the plan.

    Before any timing, each requested method is run once on a small throwaway
    instance so one-time costs (compilation, allocator warm-up) do not land
    in the first measurement.
    """
    warmup = random_instance(InstanceSpec(D=4, seed=plan.base_seed))
    for method in plan.methods:
        _solve_timed(method, warmup, solver_eps, config)

    records = []
    for d in plan.sizes:
        for rep in range(plan.repetitions):
            seed = plan.base_seed + rep
            inp = random_instance(InstanceSpec(D=d, seed=seed))
            for method in plan.methods:
                elapsed, residual, converged = _solve_timed(method, inp, solver_eps, config)
                records.append(
                    BenchRecord(
                        method=method,
                        D=d,
                        s=inp.s,
                        seed=seed,
                        wall_time_seconds=elapsed,
                        max_kkt_residual=residual,
                        converged=converged,
                    )
                )
    return records


def summarize(records) -> dict:
    """Mean wall time and worst residual per (method, D), keyed by that pair."""
    groups = {}
    for r in records:
        groups.setdefault((r.method, r.D), []).append(r)
    out = {}
    for key in sorted(groups):
        rs = groups[key]
        out[key] = {
            "mean_time": float(np.mean([r.wall_time_seconds for r in rs])),
            "max_residual": max(r.max_kkt_residual for r in rs),
            "runs": len(rs),
            "all_converged": all(r.converged for r in rs),
        }
    return out


def write_records(path, records, metadata: dict | None = None) -> None:
    """CSV with a fixed header; optional metadata goes in one '#' comment line.

    Floats are written with repr so a read-back compares equal.
    """
    with open(path, "w", newline="") as fh:
        if metadata:
            fh.write("# " + " ".join(f"{k}={v}" for k, v in metadata.items()) + "\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.method,
                    r.D,
                    repr(float(r.s)),
                    r.seed,
                    repr(float(r.wall_time_seconds)),
                    repr(float(r.max_kkt_residual)),
                    "true" if r.converged else "false",
                ]
            )


def read_records(path) -> list[BenchRecord]:
    """Inverse of write_records; '#' lines are skipped, the header is required."""
    records = []
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(line for line in fh if not line.startswith("#"))]
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise InvalidInputError(f"expected header {list(CSV_COLUMNS)} in {path}")
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise InvalidInputError(f"malformed row in {path}: {row}")
        records.append(
            BenchRecord(
                method=row[0],
                D=int(row[1]),
                s=float(row[2]),
                seed=int(row[3]),
                wall_time_seconds=float(row[4]),
                max_kkt_residual=float(row[5]),
                converged=row[6] == "true",
            )
        )
    return records
