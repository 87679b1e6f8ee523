import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from polydiff import Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("stress", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


def rationals(lo=-20, hi=20, max_den=12):
    return st.builds(
        lambda q, t: Fraction(round(lo * q + t * (hi - lo) * q), q),
        st.integers(1, max_den),
        st.floats(0, 1),
    )


def steps(max_den=12):
    return st.builds(lambda q, p: Fraction(p, q), st.integers(1, max_den), st.integers(1, 36)).filter(
        lambda h: 0 < h <= 3
    )


def polynomials(max_degree=8):
    return st.lists(rationals(-9, 9, 6), max_size=max_degree + 1).map(Polynomial)


def load_appendix():
    """Rows of the published tenth-power table: {i: [(value, bold), ...]}."""
    rows = {}
    for line in (DATA / "appendix1.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        parts = line.split()
        rows[int(parts[0])] = [(int(p.rstrip("*")), p.endswith("*")) for p in parts[2:]]
    return rows


@pytest.fixture(scope="session")
def appendix():
    return load_appendix()


ACCEPTANCE_LINES = []


def record(criterion: str, passed: bool, detail: str = ""):
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'} criterion {criterion}" + (f": {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
