import csv
import io
import json
import math
import time
from fractions import Fraction

import pytest

from polydiff.core import GridSpec
from polydiff.table import build_table, verify_distribution


@pytest.fixture(scope="module")
def paper_table():
    return build_table(10, GridSpec(1, 10))


def test_golden_values_and_mask(paper_table, appendix):
    assert sorted(appendix) == list(range(-10, 11))
    for i, row in appendix.items():
        assert len(row) == 11
        for j, (value, bold) in enumerate(row):
            cell = paper_table.cell(i, j)
            assert cell is not None, (i, j)
            assert cell.value == value, (i, j)
            assert cell.bold == bold, (i, j)


def test_bold_examples(paper_table):
    c = paper_table.cell(-8, 9)
    assert c.value == 7912982528 and c.bold and c.tag == "central" and c.order == 2
    assert paper_table.cell(0, 1).value == 3715891200
    assert paper_table.cell(-1, 2).value == -1857945600
    assert paper_table.cell(1, 2).value == 1857945600


def test_layout_tags(paper_table):
    for i in paper_table.rows:
        for j in range(1, 11):
            c = paper_table.cell(i, j)
            if i == 0 or j > abs(i):
                assert c.tag == "central" and c.order == 11 - j
            else:
                assert c.tag == ("forward" if i < 0 else "backward") and c.order == j


def test_linear_power():
    t = build_table(1, GridSpec(1, 1))
    assert [t.value(i, 0) for i in (-1, 0, 1)] == [-1, 0, 1]
    assert t.cell(-1, 1).tag == "forward" and t.value(-1, 1) == 1
    assert t.cell(1, 1).tag == "backward" and t.value(1, 1) == 1
    assert verify_distribution(t).passed


def test_distribution_passes(paper_table):
    rep = verify_distribution(paper_table)
    assert rep.passed, rep.lines()


@pytest.mark.parametrize("power, N, step", [(3, 5, Fraction(1, 2)), (6, 3, Fraction(2, 3)), (12, 12, 1), (5, 9, 3)])
def test_distribution_other_grids(power, N, step):
    t = build_table(power, GridSpec(step, N))
    assert verify_distribution(t).passed
    for (i, j), c in t.cells.items():
        m = t.cell(-i, j)
        assert abs(m.value) == abs(c.value)


def test_mutation_detected(paper_table):
    bad = paper_table.replace_cell(-4, 3, 874501)
    rep = verify_distribution(bad)
    assert not rep.passed
    assert (-4, 3) in rep["cell-values"].failures
    assert (-4, 3) in rep["mirror-symmetry"].failures


def test_unpopulated_cells_are_absent():
    # power above the half range: the far stencils leave the grid
    t = build_table(6, GridSpec(1, 2))
    assert t.cell(0, 1) is None
    assert t.cell(-2, 5) is None
    assert t.cell(-2, 2) is not None
    assert verify_distribution(t).passed


def test_constant_last_column():
    h = Fraction(3, 7)
    t = build_table(7, GridSpec(h, 7))
    one_sided = [c for (i, j), c in t.cells.items() if j == 7 and c.tag != "central"]
    assert one_sided
    assert all(c.value == math.factorial(7) * h**7 for c in one_sided)


def test_csv_exact(paper_table, appendix):
    rows = list(csv.reader(io.StringIO(paper_table.to_csv())))
    assert len(rows) == 22
    assert rows[0][:3] == ["i", "x", "f"]
    for row in rows[1:]:
        i = int(row[0])
        assert [int(v) for v in row[2:]] == [v for v, _ in appendix[i]]
    assert "e+" not in paper_table.to_csv().lower()


def test_csv_rationals():
    text = build_table(2, GridSpec(Fraction(1, 3), 2)).to_csv()
    assert "1/9" in text and "." not in text


def test_json_strings_and_tags(paper_table):
    doc = json.loads(paper_table.to_json())
    assert doc["power"] == 10 and doc["half_range"] == 10 and doc["step"] == "1"
    row = doc["rows"][2]
    assert row["i"] == -8
    cell = row["cells"][9]
    assert cell == {"value": "7912982528", "tag": "central", "order": 2, "bold": True}
    assert all(isinstance(c["value"], str) for r in doc["rows"] for c in r["cells"] if c)


def test_markdown_bold(paper_table):
    md = paper_table.to_markdown()
    assert md.count("**") == 2 * 19
    assert "**-8926258176**" in md and "**3715891200**" in md
    assert len(md.strip().splitlines()) == 23


def test_build_time():
    t0 = time.perf_counter()
    build_table(10, GridSpec(1, 10))
    assert time.perf_counter() - t0 < 1.0
