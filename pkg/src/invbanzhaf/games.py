"""Weighted voting games and exact Banzhaf power indices.

A weighted voting game [q; w_1,...,w_n] gives every player i a weight w_i
and fixes a quota q. A coalition C (any subset of players) is winning or
losing according to the game's valuation rule; the classic rule makes C
winning iff its total weight exceeds q. The Banzhaf index counts, for each
player, the coalitions of the *other* players that the player swings from
losing to winning; normalizing these counts to sum 1 yields a point in the
regular simplex.

All indices here are exact: every one of the 2^n coalitions is enumerated
(vectorized over bitmasks), so swing counts are integers and the normalized
index is a ratio of integers. This caps the practical player count; see
``MAX_PLAYERS``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import PlayerCountTooLargeError

# A coalition wins on weight iff total > quota + QUOTA_EPS. The margin absorbs
# float accumulation error (~1e-16) without reclassifying coalitions that sit
# exactly on the quota, which must lose under the strict rule.
QUOTA_EPS = 1e-12

# Enumeration is Theta(2^n) in time and memory.
MAX_PLAYERS = 24

UNANIMITY = "unanimity"
SIMPLE_MAJORITY = "simple-majority"
QUALIFIED_MAJORITY = "qualified-majority"
QUALIFIED_MAJORITY_MIN_SIZE = "qualified-majority-min-size"

_RULE_KINDS = (
    UNANIMITY,
    SIMPLE_MAJORITY,
    QUALIFIED_MAJORITY,
    QUALIFIED_MAJORITY_MIN_SIZE,
)


@dataclass(frozen=True)
class ValuationRule:
    """Which coalitions win.

    kind:
      - "unanimity": only the grand coalition wins.
      - "simple-majority": a strict majority of players wins, regardless of
        weight (|C| >= floor(n/2) + 1).
      - "qualified-majority": total weight must exceed the quota.
      - "qualified-majority-min-size": weight must exceed the quota AND the
        coalition must have at least `min_size` members.

    A min_size of 1 makes the last rule coincide with plain qualified
    majority (every non-empty coalition trivially satisfies the size bound,
    and the empty coalition never clears a non-negative quota).
    """

    kind: str = QUALIFIED_MAJORITY
    min_size: int = 1

    def __post_init__(self):
        if self.kind not in _RULE_KINDS:
            raise ValueError(f"unknown valuation rule kind: {self.kind!r}")
        if self.min_size < 1:
            raise ValueError("min_size must be >= 1")


def qualified_majority_min_size(min_size: int) -> ValuationRule:
    return ValuationRule(QUALIFIED_MAJORITY_MIN_SIZE, min_size)


@dataclass(frozen=True)
class WeightedVotingGame:
    """[q; w_1,...,w_n] plus a valuation rule.

    Weights are non-negative but need not sum to 1: the inverse-problem
    solver deliberately lets them drift, and the quota is always compared
    against absolute coalition weight.
    """

    weights: tuple[float, ...]
    quota: float
    rule: ValuationRule = ValuationRule()

    def __init__(self, weights: Sequence[float], quota: float,
                 rule: ValuationRule = ValuationRule()):
        weights = tuple(float(w) for w in weights)
        if len(weights) < 1:
            raise ValueError("a game needs at least one player")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if quota < 0:
            raise ValueError("quota must be non-negative")
        if rule.kind == QUALIFIED_MAJORITY_MIN_SIZE and rule.min_size > len(weights):
            raise ValueError("min_size cannot exceed the player count")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "quota", float(quota))
        object.__setattr__(self, "rule", rule)

    @property
    def n(self) -> int:
        return len(self.weights)


class RawBanzhafVector(NamedTuple):
    """Integer swing counts per player over the 2^(n-1) coalitions of others."""

    counts: tuple[int, ...]
    denominator: int


def evaluate_coalition(game: WeightedVotingGame, coalition: Iterable[int]) -> int:
    """Value (0 or 1) of a coalition, given as 0-based player indices."""
    members = set(coalition)
    n = game.n
    if any(i < 0 or i >= n for i in members):
        raise ValueError("coalition contains an out-of-range player index")
    rule = game.rule
    if rule.kind == UNANIMITY:
        return 1 if len(members) == n else 0
    if rule.kind == SIMPLE_MAJORITY:
        return 1 if len(members) >= n // 2 + 1 else 0
    total = sum(game.weights[i] for i in members)
    if total <= game.quota + QUOTA_EPS:
        return 0
    if rule.kind == QUALIFIED_MAJORITY_MIN_SIZE and len(members) < rule.min_size:
        return 0
    return 1


@lru_cache(maxsize=8)
def _coalition_sizes(n: int) -> np.ndarray:
    """Popcount of every bitmask 0..2^n-1 (player i <-> bit i)."""
    sizes = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        sizes = np.concatenate([sizes, sizes + 1])
    return sizes


def _coalition_weights(weights: Sequence[float], n: int) -> np.ndarray:
    """Total weight of every bitmask, accumulated in ascending bit order."""
    totals = np.zeros(1, dtype=np.float64)
    for w in weights:
        totals = np.concatenate([totals, totals + w])
    return totals


def _winning_mask(game: WeightedVotingGame) -> np.ndarray:
    """Boolean array over all 2^n bitmasks: True where the coalition wins."""
    n = game.n
    rule = game.rule
    if rule.kind == UNANIMITY:
        value = np.zeros(1 << n, dtype=bool)
        value[-1] = True
        return value
    if rule.kind == SIMPLE_MAJORITY:
        return _coalition_sizes(n) >= n // 2 + 1
    value = _coalition_weights(game.weights, n) > game.quota + QUOTA_EPS
    if rule.kind == QUALIFIED_MAJORITY_MIN_SIZE:
        value &= _coalition_sizes(n) >= rule.min_size
    return value


def swing_counts_from_values(value: np.ndarray) -> tuple[int, ...]:
    """Per-player swing counts from a length-2^n boolean coalition-value table.

    Player i swings coalition C (with i not in C) when C loses and C+{i}
    wins. Reshaping the table so that bit i becomes its own axis pairs every
    C with C+{i} without building index arrays.
    """
    size = value.shape[0]
    n = size.bit_length() - 1
    counts = []
    for i in range(n):
        paired = value.reshape(-1, 2, 1 << i)
        counts.append(int(np.count_nonzero(paired[:, 1, :] & ~paired[:, 0, :])))
    return tuple(counts)


def raw_banzhaf(game: WeightedVotingGame) -> RawBanzhafVector:
    """Exact swing counts for every player, denominator 2^(n-1)."""
    n = game.n
    if n > MAX_PLAYERS:
        raise PlayerCountTooLargeError(
            f"{n} players exceeds the enumeration cap of {MAX_PLAYERS}")
    counts = swing_counts_from_values(_winning_mask(game))
    return RawBanzhafVector(counts, 1 << (n - 1))


def normalized_banzhaf(game: WeightedVotingGame) -> tuple[float, ...]:
    """Swing counts normalized to sum 1; all-zero for degenerate games.

    A degenerate game (no player is ever critical, e.g. the quota exceeds
    the total weight) maps to the all-zero vector rather than raising, so
    callers can treat any zero entry as a stop signal uniformly.
    """
    counts, _ = raw_banzhaf(game)
    total = sum(counts)
    if total == 0:
        return (0.0,) * game.n
    return tuple(c / total for c in counts)


def count_possible_winning_coalitions(n: int, min_size: int) -> int:
    """Number of coalitions that could win when at least `min_size` players
    are required: sum_{i=min_size..n} C(n, i) - 1.

    Without a size restriction (min_size=1) this is 2^n - 1.
    """
    if not 1 <= min_size <= n:
        raise ValueError("min_size must be in [1, n]")
    return sum(math.comb(n, i) for i in range(min_size, n + 1)) - 1


_GAME_LITERAL = re.compile(
    r"^\s*(?P<quota>[^;]+);(?P<weights>[^\[\]]+?)"
    r"(?:\s*\[\s*minSize\s*=\s*(?P<min_size>\d+)\s*\])?\s*$")


def parse_game_literal(text: str) -> WeightedVotingGame:
    """Parse the text form `q; w1,w2,...,wn [minSize=m]`.

    Examples: `0.5; 0.6,0.3,0.1` or `62; 10,10,8 [minSize=2]`. The rule is
    qualified majority, with a minimum coalition size when given.
    """
    m = _GAME_LITERAL.match(text)
    if not m:
        raise ValueError(f"malformed game literal: {text!r}")
    quota = float(m.group("quota"))
    weights = [float(part) for part in m.group("weights").split(",")]
    if m.group("min_size") is not None:
        rule = qualified_majority_min_size(int(m.group("min_size")))
    else:
        rule = ValuationRule()
    return WeightedVotingGame(weights, quota, rule)


def format_game_literal(game: WeightedVotingGame) -> str:
    body = f"{game.quota:g}; " + ",".join(f"{w:g}" for w in game.weights)
    if game.rule.kind == QUALIFIED_MAJORITY_MIN_SIZE:
        body += f" [minSize={game.rule.min_size}]"
    return body
