"""Threshold enumeration, full-pipeline evaluation per threshold, and selection.

The selection criterion is score variability: the threshold whose weighted
scores have the largest coefficient of variation wins. Because the distance
values live on the finite grid k/m, the "exact" strategy enumerates every
distinct neighborhood structure once (each unique distance, plus one value
past the largest), so exhaustive evaluation is complete and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distance import DistanceMatrix, distance_matrix
from .response import ResponseMatrix
from .scoring import POPULATION, score_stats, weighted_scores
from .weighting import (
    MODES,
    NEIGHBORHOOD,
    WeightAssignment,
    neighborhood_weights,
    partition_clusters,
    partition_weights,
    weight_summary,
)

EXACT = "exact"
GRID = "grid"
STRATEGIES = (EXACT, GRID)

SELECT_TOLERANCE = 1e-12


class SelectionUndefinedError(RuntimeError):
    """No sweep row has a defined coefficient of variation."""


@dataclass(frozen=True)
class SweepRow:
    """One pipeline evaluation at a single threshold."""

    a_crit: float
    mode: str
    mean: float
    sd: float
    cv: float | None
    sum_w: float
    singleton_count: int
    avg_items_per_cluster: float


@dataclass(frozen=True, eq=False)
class SweepTable:
    """Rows sorted ascending by a_crit; best_index marks the selected row."""

    rows: tuple[SweepRow, ...]
    best_index: int | None

    def __post_init__(self) -> None:
        a = [row.a_crit for row in self.rows]
        if any(x >= y for x, y in zip(a, a[1:])):
            raise ValueError("rows must be strictly increasing in a_crit")
        if self.best_index is not None:
            if not 0 <= self.best_index < len(self.rows):
                raise ValueError("best_index out of range")
            if self.rows[self.best_index].cv is None:
                raise ValueError("best_index must point to a row with defined cv")


def candidate_thresholds(
    dm: DistanceMatrix, strategy: str = EXACT, grid_step: float = 0.01
) -> list[float]:
    """Ascending threshold candidates for the sweep.

    exact: the sorted unique off-diagonal distances u_1 < ... < u_L plus
    u_L + 1/(2m). Under strict comparison, threshold u_k admits exactly the
    distances <= u_{k-1}, so this list realizes every distinct neighborhood
    structure once.

    grid: multiples of grid_step up to 1, plus 1 + 1/(2m).
    """
    if dm.n < 2:
        raise ValueError("need at least 2 items to enumerate thresholds")
    if strategy == EXACT:
        iu = np.triu_indices(dm.n, k=1)
        unique_counts = np.unique(dm.counts[iu])
        thresholds = [int(c) / dm.m for c in unique_counts]
        thresholds.append(thresholds[-1] + 1.0 / (2 * dm.m))
        return thresholds
    if strategy == GRID:
        if not 0.0 < grid_step <= 1.0:
            raise ValueError(f"grid_step must be in (0, 1], got {grid_step}")
        thresholds = []
        k = 1
        while True:
            t = k * grid_step
            if t >= 1.0 - 1e-12:
                break
            thresholds.append(t)
            k += 1
        thresholds.append(1.0)
        thresholds.append(1.0 + 1.0 / (2 * dm.m))
        return thresholds
    raise ValueError(f"unknown strategy: {strategy!r}")


def weights_at(dm: DistanceMatrix, a_crit: float, mode: str) -> WeightAssignment:
    """Weight assignment at one threshold under the requested semantics."""
    if mode not in MODES:
        raise ValueError(f"unknown mode: {mode!r}")
    if mode == NEIGHBORHOOD:
        return neighborhood_weights(dm, a_crit)
    return partition_weights(partition_clusters(dm, a_crit))


def _best_index(rows: tuple[SweepRow, ...], tolerance: float) -> int | None:
    defined = [(i, row.cv) for i, row in enumerate(rows) if row.cv is not None]
    if not defined:
        return None
    max_cv = max(cv for _, cv in defined)
    for i, cv in defined:  # rows ascend in a_crit: first hit = smallest a_crit
        if cv >= max_cv - tolerance:
            return i
    return None


def run_sweep(
    matrix: ResponseMatrix,
    thresholds: list[float],
    mode: str = NEIGHBORHOOD,
    sd_mode: str = POPULATION,
) -> SweepTable:
    """Evaluate weighting, scoring, and statistics at each threshold.

    Rows with undefined cv (zero mean score) are retained in the table but
    are never selected as best.
    """
    if not thresholds:
        raise ValueError("thresholds must be non-empty")
    if any(x >= y for x, y in zip(thresholds, thresholds[1:])):
        raise ValueError("thresholds must be strictly ascending")
    dm = distance_matrix(matrix)
    rows = []
    for a_crit in thresholds:
        wa = weights_at(dm, a_crit, mode)
        stats = score_stats(weighted_scores(matrix, wa), sd_mode)
        summary = weight_summary(wa, matrix.n)
        rows.append(
            SweepRow(
                a_crit=a_crit,
                mode=mode,
                mean=stats.mean,
                sd=stats.sd,
                cv=stats.cv,
                sum_w=summary.sum_w,
                singleton_count=summary.singleton_count,
                avg_items_per_cluster=summary.avg_items_per_cluster,
            )
        )
    rows = tuple(rows)
    return SweepTable(rows=rows, best_index=_best_index(rows, SELECT_TOLERANCE))


def select_best(table: SweepTable, tolerance: float = SELECT_TOLERANCE) -> SweepRow:
    """Row with maximal cv; ties within tolerance go to the smallest a_crit."""
    index = _best_index(table.rows, tolerance)
    if index is None:
        raise SelectionUndefinedError("no sweep row has a defined cv")
    return table.rows[index]
