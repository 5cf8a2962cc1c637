"""Exact Euclidean projection onto the capped simplex.

The feasible set is ``{x : sum(x) = s, 0 <= x <= 1}`` (or an upper bound ``t``
instead of 1).  Sorted ascending, the unique minimizer of ``0.5*||x - y||^2``
over this set consists of ``a`` zeros, then interior values ``y_k + gamma``,
then ``D - b`` ones.  The solver scans candidate splits ``(a, b)``, solves
``gamma`` from the sum constraint for each, and returns the first candidate
that passes the optimality sign tests; multiplier recovery shows that
candidate satisfies the full first-order system, so it is the minimizer.

The scan is quadratic in the worst case.  A compiled kernel (numba) is used
when available; a vectorized numpy scan with identical semantics is the
fallback and doubles as a cross-check in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePartitionError, InfeasibleError, InvalidInputError

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def default_eps(y) -> float:
    """Comparison tolerance for the optimality tests, scaled to the data."""
    return 1e-9 * max(1.0, float(np.max(np.abs(y))))


@dataclass
class ProjectionInput:
    """One projection instance: the point y, the sum target s, the cap t."""

    y: np.ndarray
    s: float
    t: float = 1.0

    def __post_init__(self):
        self.y = np.ascontiguousarray(self.y, dtype=np.float64)
        if self.y.ndim != 1 or self.y.size < 1:
            raise InvalidInputError("y must be a one-dimensional vector with D >= 1")
        if not np.isfinite(self.y).all():
            raise InvalidInputError("y contains non-finite entries")
        self.s = float(self.s)
        self.t = float(self.t)
        if not np.isfinite(self.t) or self.t <= 0.0:
            raise InvalidInputError(f"cap must be a positive finite number, got {self.t}")
        if not np.isfinite(self.s):
            raise InvalidInputError("sum target must be finite")
        if self.s < 0.0 or self.s > self.t * self.y.size:
            raise InfeasibleError(
                f"sum target s={self.s} is infeasible: the set "
                f"{{sum(x)={self.s}, 0<=x<={self.t}}} is empty for D={self.y.size}"
            )

    @property
    def dim(self) -> int:
        return self.y.size


@dataclass
class SortedInstance:
    """y sorted ascending, the sort permutation, and prefix sums.

    ``perm`` maps sorted position to original index (``y_sorted = y[perm]``);
    ``prefix[k]`` is the sum of the k smallest entries, ``prefix[0] = 0``.
    """

    y_sorted: np.ndarray
    perm: np.ndarray
    prefix: np.ndarray

    @property
    def dim(self) -> int:
        return self.y_sorted.size


@dataclass
class Partition:
    """Split of the sorted coordinates: a zeros, interior up to b, then ones."""

    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise InvalidInputError(f"partition needs 0 <= a <= b, got ({self.a}, {self.b})")


@dataclass
class ProjectionResult:
    """Solution in original index order plus the accepted partition data.

    ``fallback`` is set only when no partition passed the widened optimality
    tests and the best-effort candidate was returned instead; it marks output
    whose accuracy should be checked with a certificate.
    """

    x: np.ndarray
    gamma: float
    partition: Partition
    perm: np.ndarray
    fallback: bool = False


def sort_with_permutation(y) -> SortedInstance:
    """Stable ascending sort of y together with its permutation and prefix sums."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size < 1:
        raise InvalidInputError("y must be a one-dimensional vector with D >= 1")
    if not np.isfinite(y).all():
        raise InvalidInputError("y contains non-finite entries")
    perm = np.argsort(y, kind="stable")
    y_sorted = np.ascontiguousarray(y[perm])
    prefix = np.zeros(y.size + 1)
    np.cumsum(y_sorted, out=prefix[1:])
    return SortedInstance(y_sorted=y_sorted, perm=perm, prefix=prefix)


def gamma_for_partition(inst: SortedInstance, p: Partition, s: float) -> float:
    """Shift applied to the interior so that the output sums to s.

    With a zeros and D - b ones fixed, the sum constraint forces
    ``gamma = (s + b - D + T_a - T_b) / (b - a)``.
    """
    if p.a == p.b:
        raise DegeneratePartitionError(
            f"gamma is undefined for an empty interior (a = b = {p.a})"
        )
    d = inst.dim
    return (s + p.b - d + inst.prefix[p.a] - inst.prefix[p.b]) / (p.b - p.a)


def partition_is_optimal(inst: SortedInstance, p: Partition, gamma: float, eps: float) -> bool:
    """Sign tests certifying that (a, b, gamma) assembles the minimizer.

    Requires ``y_a + gamma <= 0 < y_{a+1} + gamma`` and
    ``y_b + gamma < 1 <= y_{b+1} + gamma`` (1-based, sorted), each widened by
    eps; comparisons against the virtual entries y_0 = -inf and
    y_{D+1} = +inf are skipped.  Assumes 0 <= a < b <= D.
    """
    ys = inst.y_sorted
    d = ys.size
    a, b = p.a, p.b
    if a > 0 and ys[a - 1] + gamma > eps:
        return False
    if not ys[a] + gamma > -eps:
        return False
    if not ys[b - 1] + gamma < 1.0 + eps:
        return False
    if b < d and ys[b] + gamma < 1.0 - eps:
        return False
    return True


def boundary_case_holds(inst: SortedInstance, a: int, s: float, eps: float) -> bool:
    """Whether the all-pinned solution (a zeros, D - a ones) is optimal.

    Needs s = D - a and a unit gap y_{a+1} - y_a >= 1; the gap test is
    vacuous at a = 0 and a = D where one neighbor is virtual.
    """
    d = inst.dim
    if abs(s - (d - a)) > eps:
        return False
    if 0 < a < d:
        return inst.y_sorted[a] - inst.y_sorted[a - 1] >= 1.0 - eps
    return True


def _degenerate_gamma(ys: np.ndarray, a: int) -> float:
    # Any value in [1 - y_{a+1}, -y_a] gives nonnegative multipliers; report
    # the midpoint, or the finite endpoint when one side is unbounded.
    d = ys.size
    if a == 0:
        return 1.0 - ys[0]
    if a == d:
        return -ys[-1]
    return 0.5 * ((1.0 - ys[a]) - ys[a - 1])


def _scan_numpy(ys, prefix, s, eps):
    """Partition scan, inner loop vectorized over b.  Same order and float
    expressions as the compiled kernel, so both return identical results."""
    d = ys.size
    for a in range(d + 1):
        if abs(s - (d - a)) <= eps:
            if a == 0 or a == d or ys[a] - ys[a - 1] >= 1.0 - eps:
                return a, a, 0.0, True
        if a == d:
            continue
        bs = np.arange(a + 1, d + 1)
        g = (s + bs - d + prefix[a] - prefix[a + 1 :]) / (bs - a)
        ok = ys[a] + g > -eps
        ok &= ys[a:] + g < 1.0 + eps
        if a > 0:
            ok &= ys[a - 1] + g <= eps
        if d - a > 1:
            ok[:-1] &= ys[a + 1 :] + g[:-1] >= 1.0 - eps
        j = int(np.argmax(ok))
        if ok[j]:
            return a, a + 1 + j, float(g[j]), True
    return 0, 0, 0.0, False


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _scan_numba(ys, prefix, s, eps):  # pragma: no cover - exercised via wrapper
        d = ys.shape[0]
        for a in range(d + 1):
            if abs(s - (d - a)) <= eps:
                if a == 0 or a == d or ys[a] - ys[a - 1] >= 1.0 - eps:
                    return a, a, 0.0, True
            t_a = prefix[a]
            for b in range(a + 1, d + 1):
                g = (s + b - d + t_a - prefix[b]) / (b - a)
                if a > 0 and ys[a - 1] + g > eps:
                    continue
                if not ys[a] + g > -eps:
                    continue
                if not ys[b - 1] + g < 1.0 + eps:
                    continue
                if b < d and ys[b] + g < 1.0 - eps:
                    continue
                return a, b, g, True
        return 0, 0, 0.0, False

else:  # pragma: no cover
    _scan_numba = None


def _search(ys, prefix, s, eps, use_numba=None):
    use = HAVE_NUMBA if use_numba is None else use_numba
    if use:
        a, b, g, found = _scan_numba(ys, prefix, s, eps)
        a, b = int(a), int(b)
    else:
        a, b, g, found = _scan_numpy(ys, prefix, s, eps)
    return (a, b, g) if found else None


def _normalize_partition(ys: np.ndarray, a: int, b: int, gamma: float):
    """Canonical form of an accepted partition.

    The widened lower test lets an interior coordinate sit at exactly 0 (or a
    hair below), one outer step before the scan would pin it; moving it into
    the zero block leaves every other value unchanged, so this recovers the
    partition exact arithmetic would select, including the all-pinned a = b
    form.  The cap edge needs no such pass: smaller b is tested first, so a
    coordinate at 1 is already pinned when the scan accepts.
    """
    while a < b and ys[a] + gamma <= 0.0:
        a += 1
    return a, b


def _best_effort_partition(inst: SortedInstance, s: float):
    """Candidate minimizing the worst optimality-test violation.

    Only reached when rounding defeats the widened tests; scans every
    partition and returns the least-violating one.
    """
    ys, prefix = inst.y_sorted, inst.prefix
    d = ys.size
    best = (0, d, (s - prefix[d]) / d)
    best_viol = np.inf
    for a in range(d + 1):
        viol = abs(s - (d - a))
        if 0 < a < d:
            viol = max(viol, 0.5 * (1.0 - (ys[a] - ys[a - 1])))
        if viol < best_viol:
            best_viol = viol
            best = (a, a, _degenerate_gamma(ys, a))
        if a == d:
            break
        bs = np.arange(a + 1, d + 1)
        g = (s + bs - d + prefix[a] - prefix[a + 1 :]) / (bs - a)
        m = -(ys[a] + g)
        np.maximum(m, ys[a:] + g - 1.0, out=m)
        if a > 0:
            np.maximum(m, ys[a - 1] + g, out=m)
        if d - a > 1:
            np.maximum(m[:-1], 1.0 - (ys[a + 1 :] + g[:-1]), out=m[:-1])
        j = int(np.argmin(m))
        if m[j] < best_viol:
            best_viol = float(m[j])
            best = (a, a + 1 + j, float(g[j]))
    return best


def _assemble(inst: SortedInstance, a: int, b: int, gamma: float, s: float, fallback: bool) -> ProjectionResult:
    ys = inst.y_sorted
    d = ys.size
    xs = np.empty(d)
    xs[:a] = 0.0
    xs[b:] = 1.0
    if b > a:
        xs[a:b] = ys[a:b] + gamma
        # One re-centering pass: keeps the sum residual at rounding level even
        # when the prefix sums carry accumulated error at large D.
        delta = (s - float(xs.sum())) / (b - a)
        if delta != 0.0:
            xs[a:b] += delta
            gamma += delta
    else:
        gamma = _degenerate_gamma(ys, a)
    x = np.empty(d)
    x[inst.perm] = xs
    return ProjectionResult(
        x=x, gamma=float(gamma), partition=Partition(a, b), perm=inst.perm, fallback=fallback
    )


def project_capped_simplex(inp: ProjectionInput, eps: float | None = None) -> ProjectionResult:
    """Exact projection of inp.y onto {x : sum(x) = inp.s, 0 <= x <= 1}.

    The solution is returned in the original index order.  ``eps`` widens the
    optimality comparisons (default ``default_eps(y)``); if no partition
    passes, the tolerance is widened tenfold up to three times before falling
    back to the least-violating partition, flagged via ``fallback``.
    """
    if inp.t != 1.0:
        raise InvalidInputError("cap must be 1 here; use project_capped_box for general caps")
    inst = sort_with_permutation(inp.y)
    tol = default_eps(inp.y) if eps is None else float(eps)
    for _ in range(4):
        hit = _search(inst.y_sorted, inst.prefix, inp.s, tol)
        if hit is not None:
            a, b, g = hit
            a, b = _normalize_partition(inst.y_sorted, a, b, g)
            return _assemble(inst, a, b, g, inp.s, fallback=False)
        tol *= 10.0
    a, b, g = _best_effort_partition(inst, inp.s)
    return _assemble(inst, a, b, g, inp.s, fallback=True)


def project_capped_box(inp: ProjectionInput, eps: float | None = None) -> ProjectionResult:
    """Projection onto {x : sum(x) = s, 0 <= x <= t} for a general cap t > 0.

    Reduces to the unit-cap problem on (y/t, s/t) and rescales: the solution
    and its sum multiplier are both t times the inner ones.
    """
    if inp.t == 1.0:
        return project_capped_simplex(inp, eps)
    s_inner = min(max(inp.s / inp.t, 0.0), float(inp.dim))  # clip rounding spill
    inner = ProjectionInput(inp.y / inp.t, s_inner)
    res = project_capped_simplex(inner, eps)
    return ProjectionResult(
        x=inp.t * res.x,
        gamma=inp.t * res.gamma,
        partition=res.partition,
        perm=res.perm,
        fallback=res.fallback,
    )
