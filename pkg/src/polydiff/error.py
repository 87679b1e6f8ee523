"""Approximation error of divided differences.

Exact side: the residual ``divided difference - derivative`` as a polynomial
in ``x`` with the step fixed.  Float side: an observed convergence order from
a log-log fit of error against step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import MultiPolynomial, Polynomial, as_rational
from .differences import FORWARD, DifferenceKind, divisor


class DegenerateInput(ValueError):
    pass


@dataclass(frozen=True)
class ResidualReport:
    residual: Polynomial
    order: int
    power: int

    @property
    def paper_bound_degree(self) -> int:
        """The loose ``O(x**(n-k))`` bound."""
        return self.power - self.order

    @property
    def tight_bound_degree(self) -> int:
        return self.power - self.order - 1

    @property
    def actual_degree(self) -> int | None:
        return self.residual.degree()

    def within(self, bound: int) -> bool:
        d = self.actual_degree
        return d is None or d <= bound


def divided_difference_polynomial(p: Polynomial, k: int, step, kind: DifferenceKind = FORWARD) -> Polynomial:
    """The order-``k`` divided difference of ``p`` as a polynomial in ``x``."""
    h = as_rational(step)
    if h <= 0:
        raise ValueError("step must be positive")
    out = Polynomial()
    for w, s in kind.offsets(k):
        out = out + p.shift(s * h) * w
    return out * (1 / divisor(kind, k, h))


def residual_polynomial_poly(p: Polynomial, k: int, step, kind: DifferenceKind = FORWARD) -> ResidualReport:
    if k < 1:
        raise ValueError("order must be at least 1")
    residual = divided_difference_polynomial(p, k, step, kind) - p.derivative(k)
    return ResidualReport(residual, k, p.degree() if p.degree() is not None else 0)


def residual_polynomial(n: int, k: int, step, kind: DifferenceKind = FORWARD) -> ResidualReport:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return residual_polynomial_poly(Polynomial.monomial(n), k, step, kind)


def partial_residual(m: MultiPolynomial, var: int, order: int, step, at: Sequence) -> ResidualReport:
    """Residual in ``u_var`` with the other coordinates frozen at ``at``."""
    return residual_polynomial_poly(m.restrict(var, at), order, step)


def float_difference(f: Callable[[float], float], kind: DifferenceKind, k: int, x0: float, h: float) -> float:
    total = 0.0
    for w, s in kind.offsets(k):
        total += w * f(x0 + float(s) * h)
    return total / float(divisor(kind, k, Fraction(1))) / h**k


def empirical_order(
    f: Callable[[float], float],
    k: int,
    x0: float,
    steps: Sequence[float],
    *,
    exact: float,
    kind: DifferenceKind = FORWARD,
) -> float:
    """Slope of ``log|error|`` against ``log h`` (least squares).

    ``exact`` is the true k-th derivative at ``x0``.
    """
    steps = [float(h) for h in steps]
    if len(steps) < 3:
        raise ValueError("need at least 3 steps")
    if any(h <= 0 for h in steps) or any(b >= a for a, b in zip(steps, steps[1:])):
        raise ValueError("steps must be positive and strictly decreasing")
    errors = [abs(float_difference(f, kind, k, x0, h) - exact) for h in steps]
    if any(e == 0.0 or not math.isfinite(e) for e in errors):
        raise DegenerateInput("approximation error is zero at some step; no order to estimate")
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def halving_steps(first: int = 2, last: int = 10) -> list[float]:
    """``2**-first, ..., 2**-last``."""
    return [2.0**-j for j in range(first, last + 1)]
