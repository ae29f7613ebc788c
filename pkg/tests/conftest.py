import random

import pytest

from coxperp import INF, CoxeterMatrix

LABELS = (2, 3, 4, 5, 7, INF)


def random_matrix(rng: random.Random, n: int, labels=LABELS, weights=None) -> CoxeterMatrix:
    gens = [f"s{i}" for i in range(n)]
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            entries[(gens[i], gens[j])] = rng.choices(labels, weights=weights)[0]
    return CoxeterMatrix(gens, entries)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
