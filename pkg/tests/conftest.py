from pathlib import Path

import numpy as np
import pytest

from pcbd.design import BlockedDesign, BlockLayout

ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (passed, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, title, detail = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_design(rng, n, k, sizes=None):
    f = rng.choice([-2, 2], size=(n, k))
    return BlockedDesign(f, BlockLayout(tuple(sizes or (n,))))


GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    return lambda name: (GOLDEN_DIR / f"{name}.txt").read_text()
