"""Brute-force reference solver and reproducible random instances.

The reference solver shares no code with the fast path: it enumerates all
3^D ways to pin each coordinate at 0, leave it interior, or pin it at 1,
solves the shift gamma from the sum constraint for each labeling, and keeps
the one whose optimality margins all hold.  Exactly one labeling passes (up
to ties within tolerance), and its assembled vector is the projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, InfeasibleError, InvalidInputError
from .projection import ProjectionInput

ORACLE_MAX_DIM = 14

GENERATOR_ID = "philox4x64-10"

_CHUNK = 1 << 18


@dataclass
class InstanceSpec:
    """Dimension and seed identifying one random instance."""

    D: int
    seed: int

    def __post_init__(self):
        self.D = int(self.D)
        self.seed = int(self.seed)
        if self.D < 1:
            raise InvalidInputError(f"dimension must be >= 1, got {self.D}")
        if self.seed < 0:
            raise InvalidInputError(f"seed must be a nonnegative integer, got {self.seed}")


def random_instance(spec: InstanceSpec) -> ProjectionInput:
    """Instance with y uniform on [-0.5, 0.5)^D and integer s in {0, ..., D}.

    Uses a counter-based generator keyed only by the seed, so the same
    (D, seed) pair yields the same instance on any platform.
    """
    rng = np.random.Generator(np.random.Philox(key=spec.seed))
    y = rng.random(spec.D) - 0.5
    # floor(u*D + 0.5) rounds half up, keeping s integral and within [0, D]
    s = float(np.floor(rng.random() * spec.D + 0.5))
    return ProjectionInput(y=y, s=s)


@lru_cache(maxsize=None)
def _label_table(d: int) -> np.ndarray:
    codes = np.arange(3**d)
    table = np.empty((codes.size, d), dtype=np.int8)
    for j in range(d):
        table[:, j] = (codes // 3**j) % 3
    table.flags.writeable = False
    return table


def _labels_chunk(lo: int, hi: int, d: int) -> np.ndarray:
    if 3**d <= _CHUNK:
        return _label_table(d)[lo:hi]
    codes = np.arange(lo, hi)
    out = np.empty((hi - lo, d), dtype=np.int8)
    for j in range(d):
        out[:, j] = (codes // 3**j) % 3
    return out


def _enumerate_labeled(y: np.ndarray, s: float, tol: float):
    """Best labeling over all 3^D candidates.

    Returns (x, labels, gamma) where labels[i] is 0, 1, or 2 for pinned at
    zero, interior, pinned at one.  For an all-pinned winner gamma is the
    midpoint of the interval of valid sum multipliers.
    """
    d = y.size
    total = 3**d
    best_viol = np.inf
    best_labels = None
    best_gamma = 0.0
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        labels = _labels_chunk(lo, hi, d)
        zero = labels == 0
        interior = labels == 1
        one = labels == 2
        n_one = one.sum(axis=1)
        n_int = interior.sum(axis=1)
        sum_int = np.where(interior, y, 0.0).sum(axis=1)
        gamma = (s - n_one - sum_int) / np.maximum(n_int, 1)

        zmax = np.where(zero, y, -np.inf).max(axis=1)
        omin = np.where(one, y, np.inf).min(axis=1)
        imin = np.where(interior, y, np.inf).min(axis=1)
        imax = np.where(interior, y, -np.inf).max(axis=1)

        # optimality margins (<= 0 when satisfied); empty groups give -inf
        viol = np.maximum(zmax + gamma, -(imin + gamma))
        np.maximum(viol, imax + gamma - 1.0, out=viol)
        np.maximum(viol, 1.0 - (omin + gamma), out=viol)
        np.maximum(viol, 0.0, out=viol)

        # with nothing interior the sum is fixed, so it must match exactly,
        # and the pinned groups must admit a common multiplier
        pair = np.maximum(0.5 * (1.0 - (omin - zmax)), 0.0)
        sum_gap = np.abs(n_one - s)
        v_empty = np.maximum(np.where(sum_gap <= 1e-12, 0.0, np.inf), pair)
        viol = np.where(n_int > 0, viol, v_empty)

        j = int(np.argmin(viol))
        if viol[j] < best_viol:
            best_viol = float(viol[j])
            best_labels = labels[j].copy()
            best_gamma = float(gamma[j])

    if best_labels is None or best_viol > tol:
        raise RuntimeError(
            f"enumeration found no labeling within tolerance (best margin {best_viol:.3e})"
        )

    if not (best_labels == 1).any():
        zmax = y[best_labels == 0].max() if (best_labels == 0).any() else -np.inf
        omin = y[best_labels == 2].min() if (best_labels == 2).any() else np.inf
        lower, upper = 1.0 - omin, -zmax
        if np.isfinite(lower) and np.isfinite(upper):
            best_gamma = 0.5 * (lower + upper)
        elif np.isfinite(lower):
            best_gamma = lower
        else:
            best_gamma = upper
    x = np.where(best_labels == 2, 1.0, np.where(best_labels == 1, y + best_gamma, 0.0))
    return x, best_labels, best_gamma


def enumerate_oracle(y, s: float, tol: float | None = None) -> np.ndarray:
    """Projection of y onto {x : sum(x) = s, 0 <= x <= 1} by full enumeration.

    Exponential in D and refused above ORACLE_MAX_DIM; intended as an
    independent reference for testing the fast solver, not for use at scale.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size < 1:
        raise InvalidInputError("y must be a one-dimensional vector with D >= 1")
    if not np.isfinite(y).all():
        raise InvalidInputError("y contains non-finite entries")
    if y.size > ORACLE_MAX_DIM:
        raise CapacityError(
            f"enumeration needs 3^D labelings; D={y.size} exceeds the limit {ORACLE_MAX_DIM}"
        )
    s = float(s)
    if not np.isfinite(s) or s < 0.0 or s > y.size:
        raise InfeasibleError(
            f"sum target s={s} is infeasible: the set {{sum(x)={s}, 0<=x<=1}} "
            f"is empty for D={y.size}"
        )
    if tol is None:
        tol = 1e-9 * max(1.0, float(np.max(np.abs(y))))
    x, _, _ = _enumerate_labeled(y, s, tol)
    return x
