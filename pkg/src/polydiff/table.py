"""Symmetric difference tables over ``x_i = i * step``, ``i = -N..N``.

Layout, for power ``n`` and half range ``N``: column ``j`` (``1 <= j <= n``)
shows order-``j`` forward differences on negative rows and order-``j``
backward differences on positive rows, except where the full-step central
difference of order ``n + 1 - j`` fits inside the grid; those cells (row 0
and the wedge right of the anti-diagonal) hold the central value instead.
The central cell of maximal order on each row is the "bold" cell.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .core import GridSpec, Polynomial, format_rational, poly_eval
from .differences import (
    BACKWARD,
    CENTRAL_FULL,
    FORWARD,
    DifferenceKind,
    DifferenceRequest,
    nth_difference,
)

VALUE = "value"
TAG_FOR_KIND = {FORWARD: "forward", BACKWARD: "backward", CENTRAL_FULL: "central"}
KIND_FOR_TAG = {v: k for k, v in TAG_FOR_KIND.items()}
MIRROR_TAG = {"forward": "backward", "backward": "forward", "central": "central", VALUE: VALUE}


@dataclass(frozen=True)
class Cell:
    value: Fraction
    tag: str
    order: int
    bold: bool = False


def stencil(kind: DifferenceKind, order: int, i: int) -> tuple[int, int]:
    """Lowest and highest grid index touched by a difference at row ``i``."""
    if kind is FORWARD:
        return i, i + order
    if kind is BACKWARD:
        return i - order, i
    return i - order, i + order


def layout(power: int, half_range: int, i: int, j: int) -> tuple[DifferenceKind, int, bool] | None:
    """(kind, order, bold) of cell ``(i, j)`` for ``j >= 1``; ``None`` if the
    stencil would leave the grid."""
    central_order = power + 1 - j
    room = half_range - abs(i)
    if central_order <= room:
        return CENTRAL_FULL, central_order, central_order == room
    if i == 0:
        return None
    kind = FORWARD if i < 0 else BACKWARD
    lo, hi = stencil(kind, j, i)
    if lo < -half_range or hi > half_range:
        return None
    return kind, j, False


@dataclass(frozen=True)
class DifferenceTable:
    grid: GridSpec
    power: int
    cells: dict = field(repr=False)  # (i, j) -> Cell; absent means unpopulated

    @property
    def rows(self) -> range:
        return self.grid.indices()

    @property
    def columns(self) -> range:
        return range(self.power + 1)

    def cell(self, i: int, j: int) -> Cell | None:
        return self.cells.get((i, j))

    def value(self, i: int, j: int) -> Fraction | None:
        c = self.cells.get((i, j))
        return None if c is None else c.value

    @property
    def central_mask(self) -> frozenset:
        return frozenset(k for k, c in self.cells.items() if c.bold)

    def replace_cell(self, i: int, j: int, value) -> "DifferenceTable":
        """Copy with one value overwritten (tag kept); used for mutation tests."""
        cells = dict(self.cells)
        cells[(i, j)] = replace(cells[(i, j)], value=Fraction(value))
        return replace(self, cells=cells)

    def header(self) -> list[str]:
        cols = ["i", "x", "f"]
        for j in range(1, self.power + 1):
            cols.append(f"d{j}/c{self.power + 1 - j}")
        return cols

    def to_rows(self) -> list[list[str]]:
        out = []
        for i in self.rows:
            row = [str(i), format_rational(self.grid.x(i))]
            for j in self.columns:
                v = self.value(i, j)
                row.append("" if v is None else format_rational(v))
            out.append(row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        w.writerows(self.to_rows())
        return buf.getvalue()

    def to_markdown(self) -> str:
        n = self.power
        head = ["i", "x_i", "f"] + [f"(Δ,∇)^{j} f / δ^{n + 1 - j} f" for j in range(1, n + 1)]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for i, row in zip(self.rows, self.to_rows()):
            shown = row[:2]
            for j, text in enumerate(row[2:]):
                c = self.cell(i, j)
                shown.append(f"**{text}**" if c is not None and c.bold else text)
            lines.append("| " + " | ".join(shown) + " |")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = []
        for i in self.rows:
            cells = []
            for j in self.columns:
                c = self.cell(i, j)
                cells.append(
                    None
                    if c is None
                    else {"value": format_rational(c.value), "tag": c.tag, "order": c.order, "bold": c.bold}
                )
            rows.append({"i": i, "x": format_rational(self.grid.x(i)), "cells": cells})
        doc = {
            "power": self.power,
            "step": format_rational(self.grid.step),
            "half_range": self.grid.half_range,
            "rows": rows,
        }
        return json.dumps(doc, indent=2) + "\n"


def build_table(power: int = 10, grid: GridSpec | None = None) -> DifferenceTable:
    if power < 1:
        raise ValueError("power must be at least 1")
    grid = grid or GridSpec()
    f = Polynomial.monomial(power)
    N = grid.half_range
    cells = {}
    for i in grid.indices():
        x = grid.x(i)
        cells[(i, 0)] = Cell(poly_eval(f, x), VALUE, 0)
        for j in range(1, power + 1):
            spot = layout(power, N, i, j)
            if spot is None:
                continue
            kind, order, bold = spot
            v = nth_difference(f, DifferenceRequest(kind, order, grid.step, x))
            cells[(i, j)] = Cell(v, TAG_FOR_KIND[kind], order, bold)
    return DifferenceTable(grid, power, cells)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)  # offending (i, j) coordinates


@dataclass
class DistributionReport:
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            line = f"{'PASS' if r.passed else 'FAIL'} {r.name}"
            if r.detail:
                line += f": {r.detail}"
            out.append(line)
        return out


def verify_distribution(t: DifferenceTable) -> DistributionReport:
    """Check the structural properties of a symmetric table.

    Covers equal row counts either side of 0, mirror symmetry of populated
    cells, stencils staying in the grid, the maximal populated order on each
    row, the constant last column, and that every cell matches a fresh
    evaluation of its own tag.
    """
    N, h, n = t.grid.half_range, t.grid.step, t.power
    f = Polynomial.monomial(n)
    results = []

    pos = sum(1 for i in t.rows if i > 0)
    neg = sum(1 for i in t.rows if i < 0)
    results.append(PropertyResult("equal-cardinality", pos == neg, f"{neg} negative rows, {pos} positive rows"))

    bad = []
    for (i, j), c in t.cells.items():
        m = t.cell(-i, j)
        if m is None or m.tag != MIRROR_TAG[c.tag] or m.order != c.order or abs(m.value) != abs(c.value):
            bad.append((i, j))
    results.append(PropertyResult("mirror-symmetry", not bad, _coords(bad), sorted(bad)))

    bad = []
    for (i, j), c in t.cells.items():
        if c.tag == VALUE:
            continue
        lo, hi = stencil(KIND_FOR_TAG[c.tag], c.order, i)
        if lo < -N or hi > N:
            bad.append((i, j))
    results.append(PropertyResult("stencil-in-grid", not bad, _coords(bad), sorted(bad)))

    bad = []
    for i in t.rows:
        one_sided = [c.order for (r, _), c in t.cells.items() if r == i and c.tag in ("forward", "backward")]
        central = [c.order for (r, _), c in t.cells.items() if r == i and c.tag == "central"]
        if one_sided and max(one_sided) > N + abs(i):
            bad.append((i, max(one_sided)))
        if central and max(central) > N - abs(i):
            bad.append((i, max(central)))
        if i == 0 and any(c.tag in ("forward", "backward") for (r, _), c in t.cells.items() if r == 0):
            bad.append((0, -1))
    results.append(PropertyResult("maximal-order", not bad, _coords(bad), bad))

    target = math.factorial(n) * h**n
    bad = [
        (i, n)
        for i in t.rows
        if (c := t.cell(i, n)) is not None and c.tag in ("forward", "backward") and c.value != target
    ]
    results.append(PropertyResult("constant-last-column", not bad, _coords(bad) or f"= {format_rational(target)}", bad))

    bad = []
    for (i, j), c in t.cells.items():
        x = t.grid.x(i)
        if c.tag == VALUE:
            expect = poly_eval(f, x)
        else:
            expect = nth_difference(f, DifferenceRequest(KIND_FOR_TAG[c.tag], c.order, h, x))
        if expect != c.value:
            bad.append((i, j))
    results.append(PropertyResult("cell-values", not bad, _coords(bad), sorted(bad)))
    return DistributionReport(results)


def _coords(coords) -> str:
    if not coords:
        return ""
    shown = ", ".join(f"({i}, {j})" for i, j in sorted(coords)[:8])
    more = f" and {len(coords) - 8} more" if len(coords) > 8 else ""
    return f"cells {shown}{more}"
