import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ffdist.finite_field import FieldCtx  # noqa: E402
from ffdist.geometry import QuadraticForm  # noqa: E402
from ffdist.spectral_graphs import build_coloring  # noqa: E402

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@lru_cache(maxsize=None)
def field(q):
    return FieldCtx(q)


@lru_cache(maxsize=None)
def coloring(q, form=(1, 0, 1)):
    F = field(q)
    return build_coloring(F, QuadraticForm.from_ints(F, *form))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
