"""Databases of attainable Banzhaf vectors and error metrics built on them.

The normalized Banzhaf indices of weighted voting games form a finite set
for each player count. Knowing (a subset of) that set lets us bound the
error of a heuristic's output: the distance from the target to the output
is an upper bound on the error, and subtracting the distance to the best
vector in the database gives a lower bound.

Two ways to build a database:

- `build_exact_oracle`: for n <= 5 players, enumerate every game with
  integer weights up to a bound and every meaningful integer quota. Games
  are deduplicated by their winning-coalition set, so the result is the
  complete ground truth for that weight range (and provably complete for
  n <= 3 with max_weight >= 4, where exactly four vectors exist).
- `build_sampled_atlas`: run the solver on random targets and store the
  power vector of every iteration, until a window of consecutive samples
  adds nothing new. This mirrors how such databases are gathered when
  enumeration is out of reach; it is biased toward vectors the heuristic
  actually visits.

Vectors are stored in canonical non-increasing order and deduplicated on a
1e-10 grid (well below the 1e-9 tolerance, and far below the ~1e-6 minimum
spacing of distinct swing-count ratios at these sizes).

Building is single-threaded: inserts go through one `_insert` call site in
one thread. Queries on a finished atlas are read-only and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BaselineZeroError, EmptyAtlasError, OracleTooLargeError
from .games import swing_counts_from_values
from .rng import SplitMix64
from .simplex import Vector, d1_distance, sample_ordered_simplex
from .solver import SolverConfig, run

ORACLE_MAX_PLAYERS = 5
DEDUP_DECIMALS = 10
SAMPLE_HARD_CAP = 10_000_000


@dataclass
class BanzhafAtlas:
    """A deduplicated set of attainable power vectors for one player count."""

    n: int
    provenance: str
    vectors: list[Vector] = field(default_factory=list)
    _keys: set[tuple[float, ...]] = field(default_factory=set, repr=False)
    _matrix: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.vectors)

    def _insert(self, vector: Sequence[float]) -> bool:
        """Insert in canonical order; True if the vector was new."""
        canonical = tuple(sorted((float(x) for x in vector), reverse=True))
        key = tuple(round(x, DEDUP_DECIMALS) for x in canonical)
        if key in self._keys:
            return False
        self._keys.add(key)
        self.vectors.append(canonical)
        self._matrix = None
        return True

    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = np.array(self.vectors, dtype=np.float64).reshape(-1, self.n)
        return self._matrix


@dataclass(frozen=True)
class ErrorBounds:
    """Error bracket for one heuristic output against one target.

    upper is the distance from the target to the output; lower subtracts
    the distance to the best vector known to be attainable. The true error
    (distance to the unknown optimum, minus nothing) lies in [lower, upper].
    """

    upper: float
    lower: float
    best_known: Vector


def _winning_bitsets_for_weights(weight_rows: np.ndarray, n: int) -> set[int]:
    """Distinct winning-coalition sets over all integer quotas, encoded as
    2^n-bit integers (bit m set iff coalition mask m wins).

    For integer weights and integer quotas q in {0..total-1}, a coalition
    wins iff its weight >= q+1, so the distinct winning sets are exactly
    {C : weight(C) >= tau} for tau ranging over the positive subset sums.
    """
    size = 1 << n
    member = np.zeros((size, n), dtype=np.float64)
    for mask in range(size):
        for i in range(n):
            if mask >> i & 1:
                member[mask, i] = 1.0
    sums = weight_rows @ member.T  # (batch, 2^n), exact: small integers
    bit_values = 1 << np.arange(size, dtype=object)
    out: set[int] = set()
    for row in sums:
        thresholds = np.unique(row)
        thresholds = thresholds[thresholds > 0]
        for tau in thresholds:
            wins = row >= tau
            out.add(int((bit_values * wins).sum()))
    return out


def build_exact_oracle(n: int, max_weight: int | None = None) -> BanzhafAtlas:
    """Every normalized Banzhaf vector of integer-weight games on n players.

    Enumerates all non-increasing integer weight vectors with entries in
    [0, max_weight] and all integer quotas in {0..sum-1}, deduplicates the
    games by winning-coalition set, and collects the distinct normalized
    indices. max_weight defaults to 2^n, which is ample at these sizes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ORACLE_MAX_PLAYERS:
        raise OracleTooLargeError(
            f"exact enumeration is capped at {ORACLE_MAX_PLAYERS} players")
    if max_weight is None:
        max_weight = 1 << n
    if max_weight < n:
        raise ValueError("max_weight must be at least n")

    from itertools import combinations_with_replacement

    rows = [list(reversed(combo))
            for combo in combinations_with_replacement(range(max_weight + 1), n)]
    weight_rows = np.array(rows, dtype=np.float64)
    # Drop the all-zero game (no meaningful quota exists for it).
    weight_rows = weight_rows[weight_rows.sum(axis=1) > 0]

    atlas = BanzhafAtlas(n=n, provenance=f"exact-oracle(max_weight={max_weight})")
    size = 1 << n
    batch = max(1, 2_000_000 // size)
    bitsets: set[int] = set()
    for start in range(0, len(weight_rows), batch):
        bitsets |= _winning_bitsets_for_weights(weight_rows[start:start + batch], n)

    for bits in bitsets:
        value = np.array([(bits >> m) & 1 for m in range(size)], dtype=bool)
        counts = swing_counts_from_values(value)
        total = sum(counts)
        if total == 0:
            continue
        atlas._insert(tuple(c / total for c in counts))
    atlas.vectors.sort(reverse=True)
    atlas._matrix = None
    return atlas


def build_sampled_atlas(n: int, quota: float, config: SolverConfig | None = None,
                        seed: int = 0, stability_window: int = 250,
                        max_samples: int = SAMPLE_HARD_CAP) -> BanzhafAtlas:
    """Gather attainable vectors by running the solver on random targets.

    Every iteration's power vector is stored (the all-zero degenerate
    vector is not a power vector and is skipped). Building stops once
    `stability_window` consecutive samples contribute no new vector, or at
    `max_samples` as a safety valve. The resulting set is biased toward
    vectors the heuristic visits; completeness is not claimed.
    """
    if config is None:
        config = SolverConfig(quota=quota)
    atlas = BanzhafAtlas(
        n=n,
        provenance=(f"sampled-runs(stability_window={stability_window},"
                    f"seed={seed},quota={quota:g})"),
    )
    barren = 0
    sample_index = 0
    while barren < stability_window and sample_index < max_samples:
        target = sample_ordered_simplex(n, SplitMix64(substream_seed(seed, sample_index)))
        result = run(target, config)
        added = False
        for record in result.trace:
            if all(v == 0.0 for v in record.power):
                continue
            if atlas._insert(record.power):
                added = True
        barren = 0 if added else barren + 1
        sample_index += 1
    return atlas


def nearest(atlas: BanzhafAtlas, target: Sequence[float]) -> tuple[Vector, float]:
    """The stored vector closest to `target` under d1, with its distance.

    Ties are broken toward the lexicographically largest vector so queries
    are deterministic regardless of insertion order.
    """
    if len(atlas) == 0:
        raise EmptyAtlasError("atlas holds no vectors")
    if len(target) != atlas.n:
        raise ValueError(f"target has length {len(target)}, atlas is for n={atlas.n}")
    mat = atlas.matrix()
    dists = np.abs(mat - np.asarray(target, dtype=np.float64)).sum(axis=1)
    best = dists.min()
    tied = np.flatnonzero(dists <= best)
    winner = max(atlas.vectors[i] for i in tied)
    # Recompute in plain Python so the reported distance matches d1_distance.
    return winner, d1_distance(winner, target)


def error_bounds(target: Sequence[float], alg_output: Sequence[float],
                 atlas: BanzhafAtlas) -> ErrorBounds:
    """Upper and lower bounds on the output's error (see module docstring)."""
    if len(target) != len(alg_output):
        raise ValueError("target and output must have equal length")
    upper = d1_distance(target, alg_output)
    best_known, best_dist = nearest(atlas, target)
    return ErrorBounds(upper=upper, lower=max(0.0, upper - best_dist),
                       best_known=best_known)


def relative_improvement(d_baseline: float, d_candidate: float) -> float:
    """(d_baseline - d_candidate) / d_baseline; negative when the candidate
    is worse. Undefined for a zero baseline."""
    if d_baseline == 0.0:
        raise BaselineZeroError("baseline distance is 0; improvement undefined")
    return (d_baseline - d_candidate) / d_baseline


def save_atlas(atlas: BanzhafAtlas, path) -> None:
    """Write the text form: a `n=...,provenance=...` header, then one vector
    per line as comma-separated decimals with 17 significant digits, sorted
    lexicographically descending."""
    rows = sorted(atlas.vectors, reverse=True)
    with open(path, "w") as fh:
        fh.write(f"n={atlas.n},provenance={atlas.provenance}\n")
        for vec in rows:
            fh.write(",".join(f"{x:.17g}" for x in vec) + "\n")


def load_atlas(path) -> BanzhafAtlas:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("n="):
            raise ValueError(f"not an atlas file: {path}")
        n_part, _, prov_part = header.partition(",")
        n = int(n_part[2:])
        if not prov_part.startswith("provenance="):
            raise ValueError(f"missing provenance in atlas header: {header!r}")
        atlas = BanzhafAtlas(n=n, provenance=prov_part[len("provenance="):])
        for line in fh:
            line = line.strip()
            if line:
                atlas._insert(tuple(float(p) for p in line.split(",")))
    return atlas
