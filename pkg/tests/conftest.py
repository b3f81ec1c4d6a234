from pathlib import Path

import pytest

from symmetroids.bisections import enumerate_bisections
from symmetroids.catalog import C2_4_BISECTIONS, SWAP_CELLS
from symmetroids.core import c2_4, swap_base
from symmetroids.symmetroid import user_symmetroid

DATA = Path(__file__).resolve().parents[1] / "src" / "symmetroids" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def swap_cells():
    """The six exchange cells and their inverses."""
    return list(SWAP_CELLS) + [(c + "'", t, s) for c, s, t in SWAP_CELLS]


@pytest.fixture(scope="session")
def c24():
    return c2_4()


@pytest.fixture(scope="session")
def c24_bisections(c24):
    return enumerate_bisections(c24)


@pytest.fixture(scope="session")
def bname(c24, c24_bisections):
    """name -> index in the bisection group, via the arrows each bisection picks."""
    out = {}
    for name, (p, m) in C2_4_BISECTIONS.items():
        out[name] = c24_bisections.index((c24.arrow(p), c24.arrow(m)))
    return out


@pytest.fixture(scope="session")
def swap():
    return user_symmetroid(swap_base(), swap_cells())


# criterion number -> one-line verdict, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
