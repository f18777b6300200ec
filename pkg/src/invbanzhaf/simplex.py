"""Target vectors in the ordered regular simplex, and the d1 metric.

The inverse problem takes a target power distribution t: non-negative
entries summing to 1. Player order carries no information (reordering the
input just reorders the output), so targets are kept in non-increasing
order — points of the *ordered* regular simplex. Distances between power
vectors are measured with the Manhattan metric d1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LengthMismatchError
from .rng import SplitMix64

Vector = tuple[float, ...]

SUM_TOL = 1e-9


def d1_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Manhattan distance sum_i |a_i - b_i|."""
    if len(a) != len(b):
        raise LengthMismatchError(f"length {len(a)} vs {len(b)}")
    return sum(abs(x - y) for x, y in zip(a, b))


def max_d1_ordered(n: int) -> float:
    """Largest d1 between two points of the ordered regular n-simplex.

    Attained between [1, 0, ..., 0] and [1/n, ..., 1/n]: 2 - 2/n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 - 2.0 / n


def centroid_regular(n: int) -> Vector:
    """Center of mass of the regular simplex: all entries 1/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (1.0 / n,) * n


def centroid_ordered(n: int) -> Vector:
    """Center of mass of the ordered regular simplex.

    The ordered simplex has vertices v_k = [1/k ... 1/k 0 ... 0] (k leading
    entries) for k = 1..n; the centroid is their average, so entry j is
    (1/n) * sum_{k=j+1..n} 1/k. Entries are strictly positive and strictly
    decreasing.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    acc = 0.0
    # Build from the last entry backwards so each entry adds one 1/k term.
    for j in range(n, 0, -1):
        acc += 1.0 / j
        out.append(acc / n)
    out.reverse()
    return tuple(out)


def offset_target(t: Sequence[float]) -> Vector:
    """Midpoint of t and the regular-simplex centroid: (t_i + 1/n) / 2.

    Pulls the target halfway toward the all-equal point, away from the
    simplex boundary where powerless players live. Order and sum are
    preserved, and the all-equal point is a fixed point.
    """
    n = len(t)
    c = 1.0 / n
    return tuple((x + c) / 2.0 for x in t)


def sample_ordered_simplex(n: int, rng: SplitMix64) -> Vector:
    """One uniform draw from the ordered regular n-simplex.

    Draws n exponentials as -log(U(0,1)), normalizes them to sum 1 (a
    uniform point of the regular simplex), then sorts non-increasing.
    Deterministic given the generator state; every entry is strictly
    positive because U = 0 draws are redrawn by the generator.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    raw = [-math.log(rng.uniform()) for _ in range(n)]
    total = sum(raw)
    values = sorted((x / total for x in raw), reverse=True)
    return tuple(values)


def is_ordered_target(t: Sequence[float], *, require_positive: bool = False) -> bool:
    """Check the ordered-simplex invariants: sum 1 (within 1e-9),
    non-increasing, entries >= 0 (or > 0 when required)."""
    if len(t) < 1:
        return False
    if abs(sum(t) - 1.0) > SUM_TOL:
        return False
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        return False
    if require_positive:
        return all(x > 0 for x in t)
    return all(x >= 0 for x in t)


def parse_vector(text: str) -> Vector:
    """Parse the comma-separated decimal form, e.g. `0.35,0.3,0.2,0.15`."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty vector literal")
    return tuple(float(p) for p in parts)


def format_vector(v: Sequence[float]) -> str:
    return ",".join(repr(float(x)) for x in v)


def write_sample_dump(path, samples: Iterable[Sequence[float]]) -> None:
    """Write sampled targets as CSV rows `sample_id,i,t_i` (i is 1-based)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample_id", "i", "t_i"])
        for sample_id, sample in enumerate(samples):
            for i, value in enumerate(sample, start=1):
                writer.writerow([sample_id, i, f"{value:.17g}"])


@dataclass(frozen=True)
class SignificanceThresholds:
    """Cutoffs used when reporting experiment results.

    - a mean relative improvement matters once it exceeds 0.05;
    - a mean upper-bound error matters once it exceeds 7/185 (10% of the
      conjectured worst-case optimal distance 14/34);
    - a change in error matters once it exceeds 1% of the maximum d1 for
      the player count.
    """

    improvement_significant: float
    error_upper_significant: float
    error_change_significant: float

    @classmethod
    def for_players(cls, n: int) -> "SignificanceThresholds":
        return cls(
            improvement_significant=0.05,
            error_upper_significant=7.0 / 185.0,
            error_change_significant=0.01 * max_d1_ordered(n),
        )
