import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import analysis  # noqa: E402
from lattice import poset_from_covers  # noqa: E402


@pytest.fixture
def pentagon():
    """N5: 0 < a < b < 1 and 0 < c < 1."""
    return poset_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


@pytest.fixture
def diamond():
    """M3: three atoms between 0 and 1."""
    return poset_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


@pytest.fixture
def skewed_conjecture(monkeypatch):
    """Conjectured in-degree count off by one at (m, n, a) = (2, 3, 1)."""
    exact = analysis.conjectured_in_degree_count

    def guessed(m, n, a):
        return exact(m, n, a) + (1 if (m, n, a) == (2, 3, 1) else 0)

    monkeypatch.setattr(analysis, "conjectured_in_degree_count", guessed)
