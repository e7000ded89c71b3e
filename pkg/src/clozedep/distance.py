"""Normalized mismatch distance between item outcome columns.

The distance between two items is the number of examinees on which their
0/1 outcome columns disagree, divided by the examinee count m. Every value
is therefore a grid point k/m; the integer mismatch counts are kept
alongside the float matrix so threshold comparisons can stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .response import ItemVector, ResponseMatrix


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric item x item normalized-mismatch distances.

    ``counts[i, j]`` is the integer mismatch count between items i and j;
    ``d = counts / m`` are the unit-interval distances.
    """

    counts: np.ndarray
    m: int
    item_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError("counts must be a square matrix")
        if self.m < 1:
            raise ValueError("m must be positive")
        if (counts < 0).any() or (counts > self.m).any():
            raise ValueError("mismatch counts must lie in [0, m]")
        if (np.diagonal(counts) != 0).any():
            raise ValueError("diagonal mismatch counts must be 0")
        if not np.array_equal(counts, counts.T):
            raise ValueError("mismatch counts must be symmetric")
        counts.setflags(write=False)
        d = counts / self.m
        d.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "item_ids", tuple(self.item_ids))
        object.__setattr__(self, "_d", d)

    @property
    def d(self) -> np.ndarray:
        """Unit-interval distance grid (read-only view)."""
        return self._d  # type: ignore[attr-defined]

    @property
    def n(self) -> int:
        return self.counts.shape[0]


def mismatch_count(u: ItemVector, v: ItemVector) -> int:
    """Number of examinees on which the two item columns disagree."""
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} vs {len(v)}")
    return int(np.count_nonzero(u.values != v.values))


def item_distance(u: ItemVector, v: ItemVector) -> float:
    """Mismatch count between the two columns divided by their length."""
    return mismatch_count(u, v) / len(u)


def distance_matrix(matrix: ResponseMatrix) -> DistanceMatrix:
    """All pairwise item distances for a response matrix.

    Mismatches are counted with exact integer arithmetic: for 0/1 columns
    x, y the count is x'(1-y) + (1-x)'y.
    """
    x = matrix.cells
    comp = 1 - x
    counts = x.T @ comp + comp.T @ x
    np.fill_diagonal(counts, 0)
    return DistanceMatrix(counts=counts, m=matrix.m, item_ids=matrix.item_ids)


def distances_to_csv(dm: DistanceMatrix, *, delimiter: str = ",") -> str:
    """Distance matrix as delimited text with item ids as header and row labels."""
    lines = [delimiter.join(["id"] + list(dm.item_ids))]
    for i in range(dm.n):
        row = [dm.item_ids[i]] + [repr(float(v)) for v in dm.d[i]]
        lines.append(delimiter.join(row))
    return "\n".join(lines) + "\n"
