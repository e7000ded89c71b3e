import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from clozedep import ResponseMatrix

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

_CRITERIA_LINES: list[str] = []


@pytest.fixture(scope="session")
def record_criterion():
    """Recorder for the acceptance suite: one printed pass/fail line each."""

    def _record(number: int, ok: bool, label: str) -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {label}"
        _CRITERIA_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA_LINES:
            terminalreporter.write_line(line)


def make_matrix(cells) -> ResponseMatrix:
    """ResponseMatrix from a nested list, with generated labels."""
    grid = np.asarray(cells, dtype=np.int64)
    return ResponseMatrix(
        examinee_ids=tuple(f"e{i + 1}" for i in range(grid.shape[0])),
        item_ids=tuple(f"i{j + 1}" for j in range(grid.shape[1])),
        cells=grid,
    )


def random_matrix(seed: int, m: int, n: int, p: float = 0.5) -> ResponseMatrix:
    rng = np.random.default_rng(seed)
    return make_matrix((rng.random((m, n)) < p).astype(np.int64))


def columns_matrix(*columns) -> ResponseMatrix:
    """ResponseMatrix whose item columns are the given sequences."""
    return make_matrix(np.column_stack([np.asarray(c) for c in columns]))
