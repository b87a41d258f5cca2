import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


def naive_valid(m, n, k, rows):
    """[k]-RDF condition straight from the definition, on plain lists.

    rows[j][i] is the label of cycle position i in fibre j.
    """
    for j in range(n):
        for i in range(m):
            x = rows[j][i]
            if x >= k:
                continue
            nbrs = [((i + 1) % m, j), ((i - 1) % m, j)]
            if j > 0:
                nbrs.append((i, j - 1))
            if j < n - 1:
                nbrs.append((i, j + 1))
            total = x + sum(rows[b][a] for a, b in nbrs)
            active = sum(1 for a, b in nbrs if rows[b][a] > 0)
            if total < k + active:
                return False
    return True


@pytest.fixture(scope="session")
def goldens():
    src = Path(__file__).parents[1] / "src" / "kroman" / "data" / "goldens.json"
    return json.loads(src.read_text())


@pytest.fixture
def golden_dir():
    return GOLDEN


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
