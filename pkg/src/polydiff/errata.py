"""Report-only comparisons of stated closed forms against brute force.

Nothing here raises or fails; each function returns rows showing both sides so
a reader can see where a closed form and direct evaluation part ways.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import MultiPolynomial, Polynomial, as_rational
from .differences import BACKWARD, CENTRAL_FULL, FORWARD, DifferenceRequest, nth_difference
from .partial import PARTIAL_KINDS, PartialRequest, diagonal_difference, product_form, sum_form, sum_shape


@dataclass
class Comparison:
    label: str
    stated: Fraction
    computed: Fraction

    @property
    def agrees(self) -> bool:
        return self.stated == self.computed

    def line(self) -> str:
        return f"{'AGREE ' if self.agrees else 'DIFFER'} {self.label}: stated {self.stated}, computed {self.computed}"


@dataclass
class ErratumReport:
    title: str
    rows: list

    @property
    def agreeing(self) -> int:
        return sum(r.agrees for r in self.rows)

    def summary(self) -> str:
        return f"{self.title}: {self.agreeing}/{len(self.rows)} agree"


def sign_law(max_power: int = 10, max_index: int = 3, step=1) -> tuple[ErratumReport, ErratumReport]:
    """Forward order k at ``-i h`` versus backward order k at ``+i h``.

    Returns two reports: the factor ``(-1)**(n-1)`` as stated, and the mirror
    factor ``(-1)**k`` (even n) / ``(-1)**(k+1)`` (odd n).
    """
    h = as_rational(step)
    stated, mirror = [], []
    for n in range(1, max_power + 1):
        f = Polynomial.monomial(n)
        for k in range(1, n + 1):
            for i in range(1, max_index + 1):
                fwd = nth_difference(f, DifferenceRequest(FORWARD, k, h, -i * h))
                bwd = nth_difference(f, DifferenceRequest(BACKWARD, k, h, i * h))
                label = f"n={n} k={k} i={i}"
                stated.append(Comparison(label, (-1) ** (n - 1) * bwd, fwd))
                mirror.append(Comparison(label, (-1) ** (k if n % 2 == 0 else k + 1) * bwd, fwd))
    return ErratumReport("stated sign law (-1)^(n-1)", stated), ErratumReport("mirror sign law", mirror)


def central_coefficient(max_power: int = 12, step=1) -> tuple[ErratumReport, ErratumReport]:
    """Order-n full-step central difference of ``x**n``: the stated
    ``n! * 2 * h**n`` and the alternative ``n! * (2h)**n`` versus brute force."""
    h = as_rational(step)
    stated, alt = [], []
    for n in range(1, max_power + 1):
        got = nth_difference(Polynomial.monomial(n), DifferenceRequest(CENTRAL_FULL, n, h, 0))
        stated.append(Comparison(f"n={n}", math.factorial(n) * 2 * h**n, got))
        alt.append(Comparison(f"n={n}", math.factorial(n) * (2 * h) ** n, got))
    return ErratumReport("stated n!*2m*dx^n", stated), ErratumReport("n!*(2h)^n", alt)


def product_vs_diagonal(m: MultiPolynomial, steps: dict) -> tuple[ErratumReport, ErratumReport]:
    """Closed product and sum forms against the diagonal cascade."""
    n, coeffs = sum_shape(m)
    vars_ = tuple(sorted(coeffs))
    at = tuple(Fraction(0) for _ in range(m.arity))
    prod_rows, sum_rows = [], []
    for kind in PARTIAL_KINDS:
        diag = diagonal_difference(m, PartialRequest(kind, n, vars_, steps, at))
        prod_rows.append(Comparison(kind.value, product_form(m, kind, steps), diag))
        sum_rows.append(Comparison(kind.value, sum_form(m, kind, steps), diag))
    return ErratumReport("product form", prod_rows), ErratumReport("sum form", sum_rows)
