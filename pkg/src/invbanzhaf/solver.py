"""Iterative weight-fitting heuristic for the inverse Banzhaf problem.

Given a target power distribution t, the base heuristic starts from some
weight vector, computes the game's normalized Banzhaf index, divides each
weight by the per-player ratio (power_i / target_i), and repeats. Players
with too much power lose weight, players with too little gain it.

The base iteration has a hard failure mode: once any player's power hits
exactly 0 the ratio is 0 and the update is undefined, so the run stops.
Three variants address this:

- "restart": jump to fresh weights halfway between the best weights found
  so far and the all-equal point, and keep iterating.
- "mincoalition": compute power under a minimum-coalition-size rule, which
  grants power to otherwise powerless players (at the cost of shrinking the
  set of reachable power vectors).
- "scaling": compute ratios as (power_i + s) / (target_i + s) with s > 0,
  which keeps every ratio strictly positive and damps the update.

Distance to the target is NOT monotone over iterations (an update can
overshoot and make things worse), so every run tracks and returns the best
(weights, power, distance) actually measured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import (
    ExplicitLengthMismatchError,
    NonPositiveWeightError,
    TargetContainsZeroError,
)
from .games import WeightedVotingGame, ValuationRule, qualified_majority_min_size, raw_banzhaf
from .simplex import Vector, centroid_ordered, d1_distance, is_ordered_target, offset_target

BASE = "base"
RESTART = "restart"
MIN_COALITION = "mincoalition"
SCALING = "scaling"

OMEGA0_TARGET = "target"
OMEGA0_CENTROID = "centroid"
OMEGA0_OFFSET = "offset"
OMEGA0_EXPLICIT = "explicit"


class StopReason(str, Enum):
    DISTANCE_REACHED = "distance-reached"
    ITERATION_CAP = "iteration-cap"
    ZERO_POWER_STOP = "zero-power-stop"


ACTION_RATIO_UPDATE = "ratio-update"
ACTION_RESTART_JUMP = "restart-jump"
ACTION_STOP_ZERO_POWER = "stop-zero-power"
ACTION_STOP_DISTANCE = "stop-distance-reached"


@dataclass(frozen=True)
class SolverConfig:
    """One heuristic execution's parameters.

    omega0 selects the starting weights: the target itself, the centroid of
    the ordered simplex, the offset target (halfway between target and the
    all-equal point), or an explicit vector.

    variant/min_coalition/scale select the algorithm: min_coalition == 1 and
    scale == 0.0 both reproduce the base algorithm exactly, trace for trace.

    best_tracks_post_update reproduces a literal reading of the restart
    pseudocode in which the post-update weights (whose power was never
    measured) are stored as best; the default stores the weights whose
    measured power achieved the best distance.
    """

    quota: float
    omega0: str = OMEGA0_TARGET
    omega0_explicit: Vector | None = None
    variant: str = BASE
    min_coalition: int = 1
    scale: float = 0.0
    max_iterations: int = 50
    max_distance: float = 1e-9
    best_tracks_post_update: bool = False

    def __post_init__(self):
        if self.omega0 not in (OMEGA0_TARGET, OMEGA0_CENTROID, OMEGA0_OFFSET, OMEGA0_EXPLICIT):
            raise ValueError(f"unknown omega0 mode: {self.omega0!r}")
        if self.variant not in (BASE, RESTART, MIN_COALITION, SCALING):
            raise ValueError(f"unknown variant: {self.variant!r}")
        if self.omega0 == OMEGA0_EXPLICIT and self.omega0_explicit is None:
            raise ValueError("omega0 'explicit' requires omega0_explicit")
        if self.scale < 0:
            raise ValueError("scale must be >= 0")
        if self.min_coalition < 1:
            raise ValueError("min_coalition must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.max_distance < 0:
            raise ValueError("max_distance must be >= 0")

    def valuation_rule(self) -> ValuationRule:
        if self.variant == MIN_COALITION and self.min_coalition > 1:
            return qualified_majority_min_size(self.min_coalition)
        return ValuationRule()


@dataclass(frozen=True)
class IterationRecord:
    """One measured iteration: the weights evaluated, their power and
    distance to the target, and what the solver did next."""

    index: int
    weights_before: Vector
    power: Vector
    distance: float
    action: str


@dataclass
class SolverRun:
    config: SolverConfig
    target: Vector
    trace: list[IterationRecord] = field(default_factory=list)
    best_weights: Vector = ()
    best_power: Vector = ()
    best_distance: float = float("inf")
    stop_reason: StopReason = StopReason.ITERATION_CAP

    @property
    def iterations(self) -> int:
        return len(self.trace)


def compute_ratio(power: Sequence[float], target: Sequence[float],
                  scale: float = 0.0) -> tuple[Vector, bool]:
    """Per-player update ratios (power_i + s) / (target_i + s).

    With s = 0 this is the plain power/target ratio. Returns the ratios and
    a flag that is True when s = 0 produced a zero ratio (some power_i = 0),
    in which case dividing a weight by its ratio is undefined and the caller
    must stop or recover.
    """
    if len(power) != len(target):
        raise ValueError("power and target must have equal length")
    if scale < 0:
        raise ValueError("scale must be >= 0")
    ratios = tuple((p + scale) / (t + scale) for p, t in zip(power, target))
    return ratios, scale == 0.0 and any(r == 0.0 for r in ratios)


def resolve_omega0(target: Sequence[float], mode: str,
                   explicit: Sequence[float] | None = None) -> Vector:
    """Starting weights for a run: the target, the ordered-simplex centroid,
    the offset target, or an explicit vector of matching length."""
    n = len(target)
    if mode == OMEGA0_TARGET:
        return tuple(target)
    if mode == OMEGA0_CENTROID:
        return centroid_ordered(n)
    if mode == OMEGA0_OFFSET:
        return offset_target(target)
    if mode == OMEGA0_EXPLICIT:
        if explicit is None:
            raise ValueError("explicit omega0 requires a vector")
        if len(explicit) != n:
            raise ExplicitLengthMismatchError(
                f"omega0 has length {len(explicit)}, target has {n}")
        return tuple(float(w) for w in explicit)
    raise ValueError(f"unknown omega0 mode: {mode!r}")


def _measure(weights: Vector, target: Sequence[float],
             quota: float, rule: ValuationRule) -> tuple[tuple[int, ...], Vector, float]:
    counts, _ = raw_banzhaf(WeightedVotingGame(weights, quota, rule))
    total = sum(counts)
    if total == 0:
        power: Vector = (0.0,) * len(weights)
    else:
        power = tuple(c / total for c in counts)
    return counts, power, d1_distance(power, target)


def step(weights: Sequence[float], target: Sequence[float], config: SolverConfig,
         best_weights: Sequence[float] | None = None,
         index: int = 0) -> tuple[Vector, IterationRecord]:
    """One iteration: measure the power of `weights`, then update.

    Returns the next weights and the record of what was measured and done.
    Zero-power handling depends on the variant: the base family keeps the
    weights and marks a stop, restart jumps halfway between `best_weights`
    and the all-equal point, and scaling (s > 0) never produces a zero
    ratio so it just keeps updating.
    """
    weights = tuple(float(w) for w in weights)
    if any(w <= 0 for w in weights):
        raise NonPositiveWeightError("weights must be strictly positive")
    n = len(weights)
    counts, power, distance = _measure(weights, target, config.quota,
                                       config.valuation_rule())
    has_zero = any(c == 0 for c in counts)
    scale = config.scale if config.variant == SCALING else 0.0

    if has_zero and not (config.variant == SCALING and scale > 0.0):
        if config.variant == RESTART:
            source = weights if best_weights is None else tuple(best_weights)
            jumped = tuple((w + 1.0 / n) / 2.0 for w in source)
            record = IterationRecord(index, weights, power, distance,
                                     ACTION_RESTART_JUMP)
            return jumped, record
        record = IterationRecord(index, weights, power, distance,
                                 ACTION_STOP_ZERO_POWER)
        return weights, record

    ratios, _ = compute_ratio(power, target, scale)
    new_weights = tuple(w / r for w, r in zip(weights, ratios))
    record = IterationRecord(index, weights, power, distance, ACTION_RATIO_UPDATE)
    return new_weights, record


def run(target: Sequence[float], config: SolverConfig) -> SolverRun:
    """Full heuristic run: resolve the starting weights, iterate `step`
    until the distance drops below config.max_distance, the iteration
    budget is spent, or a zero-power stop, tracking the best measured
    (weights, power, distance) throughout.

    A restart jump landing on weights that were already evaluated would
    cycle forever (the iteration is deterministic), so it stops the run
    instead.
    """
    target = tuple(float(t) for t in target)
    if any(t <= 0 for t in target):
        raise TargetContainsZeroError("target entries must be strictly positive")
    if not is_ordered_target(target, require_positive=True):
        raise ValueError("target must be non-increasing and sum to 1")
    n = len(target)
    if config.variant == MIN_COALITION and not 1 <= config.min_coalition <= n:
        raise ValueError("min_coalition must be in [1, n]")

    weights = resolve_omega0(target, config.omega0, config.omega0_explicit)
    if any(w <= 0 for w in weights):
        raise NonPositiveWeightError("starting weights must be strictly positive")

    result = SolverRun(config=config, target=target)
    seen = {weights}
    rule = config.valuation_rule()
    scale = config.scale if config.variant == SCALING else 0.0

    for index in range(config.max_iterations):
        counts, power, distance = _measure(weights, target, config.quota, rule)
        has_zero = any(c == 0 for c in counts)

        improved = distance < result.best_distance
        if improved:
            result.best_distance = distance
            result.best_power = power
            if not config.best_tracks_post_update:
                result.best_weights = weights

        # Decide this iteration's action and the weights it leaves behind.
        stop: StopReason | None = None
        if distance < config.max_distance:
            action, next_weights, stop = (
                ACTION_STOP_DISTANCE, weights, StopReason.DISTANCE_REACHED)
        elif has_zero and not (config.variant == SCALING and scale > 0.0):
            if config.variant == RESTART:
                source = result.best_weights if result.best_weights else weights
                jumped = tuple((w + 1.0 / n) / 2.0 for w in source)
                if jumped in seen:
                    # Deterministic iteration: revisiting weights would cycle.
                    action, next_weights, stop = (
                        ACTION_STOP_ZERO_POWER, weights, StopReason.ZERO_POWER_STOP)
                else:
                    action, next_weights = ACTION_RESTART_JUMP, jumped
            else:
                action, next_weights, stop = (
                    ACTION_STOP_ZERO_POWER, weights, StopReason.ZERO_POWER_STOP)
        else:
            ratios, _ = compute_ratio(power, target, scale)
            next_weights = tuple(w / r for w, r in zip(weights, ratios))
            action = ACTION_RATIO_UPDATE

        if config.best_tracks_post_update and improved:
            result.best_weights = next_weights

        result.trace.append(IterationRecord(index, weights, power, distance, action))
        if stop is not None:
            result.stop_reason = stop
            return result
        weights = next_weights
        seen.add(weights)

    result.stop_reason = StopReason.ITERATION_CAP
    return result
