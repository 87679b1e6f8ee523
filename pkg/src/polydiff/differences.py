"""Finite and divided differences of polynomials, exact.

Every operator exists twice: as a closed binomial sum (:func:`nth_difference`)
and as an n-fold cascade of first differences (:func:`nth_difference_cascade`).
The two share nothing but polynomial evaluation, so they check each other.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import Polynomial, as_rational, poly_eval


class DifferenceKind(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    CENTRAL_HALF = "central-half"
    CENTRAL_FULL = "central-full"

    @classmethod
    def parse(cls, text: str) -> "DifferenceKind":
        try:
            return cls(text.strip().lower().replace("_", "-"))
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown difference kind {text!r} (expected one of {choices})") from None

    def offsets(self, order: int) -> list[tuple[int, Fraction]]:
        """``(weight, shift)`` pairs, shift in units of the step."""
        out = []
        for k, c in enumerate(binomial_row(order)):
            w = -c if k % 2 else c
            if self is DifferenceKind.FORWARD:
                shift = Fraction(order - k)
            elif self is DifferenceKind.BACKWARD:
                shift = Fraction(-k)
            elif self is DifferenceKind.CENTRAL_HALF:
                shift = Fraction(order, 2) - k
            else:
                shift = Fraction(order - 2 * k)
            out.append((w, shift))
        return out

    def span(self) -> int:
        """Step multiples covered by one first difference."""
        return 2 if self is DifferenceKind.CENTRAL_FULL else 1


FORWARD = DifferenceKind.FORWARD
BACKWARD = DifferenceKind.BACKWARD
CENTRAL_HALF = DifferenceKind.CENTRAL_HALF
CENTRAL_FULL = DifferenceKind.CENTRAL_FULL


@dataclass(frozen=True)
class DifferenceRequest:
    kind: DifferenceKind
    order: int
    step: Fraction = Fraction(1)
    at: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "step", as_rational(self.step))
        object.__setattr__(self, "at", as_rational(self.at))
        if self.order < 0:
            raise ValueError("difference order must be non-negative")
        if self.step <= 0:
            raise ValueError("step must be positive")


class NotEqual(ArithmeticError):
    """The forward, backward and central divided differences disagree."""

    def __init__(self, values: dict):
        self.values = dict(values)
        shown = ", ".join(f"{k.value}={v}" for k, v in self.values.items())
        super().__init__(f"divided differences differ: {shown}")


def binomial_row(n: int) -> list[int]:
    """C(n, 0..n) by the multiplicative recurrence."""
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def nth_difference(f: Polynomial, req: DifferenceRequest) -> Fraction:
    h, x = req.step, req.at
    return sum(
        (w * poly_eval(f, x + s * h) for w, s in req.kind.offsets(req.order)),
        Fraction(0),
    )


def _first_difference(g, kind: DifferenceKind, h: Fraction):
    if kind is FORWARD:
        return lambda x: g(x + h) - g(x)
    if kind is BACKWARD:
        return lambda x: g(x) - g(x - h)
    if kind is CENTRAL_HALF:
        half = h / 2
        return lambda x: g(x + half) - g(x - half)
    return lambda x: g(x + h) - g(x - h)


def _memo(g):
    cache = {}

    def wrapped(x):
        if x not in cache:
            cache[x] = g(x)
        return cache[x]

    return wrapped


def nth_difference_cascade(f: Polynomial, req: DifferenceRequest) -> Fraction:
    g = _memo(lambda x: poly_eval(f, x))
    for _ in range(req.order):
        # memoized per level: without it the cascade costs 2**order evaluations
        g = _memo(_first_difference(g, req.kind, req.step))
    return g(req.at)


def divisor(kind: DifferenceKind, order: int, step) -> Fraction:
    return (kind.span() * as_rational(step)) ** order


def divided_difference(f: Polynomial, req: DifferenceRequest) -> Fraction:
    """Finite difference over ``step**n``; the full-step central one over ``(2 step)**n``."""
    return nth_difference(f, req) / divisor(req.kind, req.order, req.step)


EQUALITY_KINDS = (FORWARD, BACKWARD, CENTRAL_HALF)


def equality_operator(f: Polynomial, order: int, step, at) -> Fraction:
    """Common value of the forward, backward and half-step central divided
    differences of the given order; raises :class:`NotEqual` otherwise."""
    values = {
        kind: divided_difference(f, DifferenceRequest(kind, order, step, at))
        for kind in EQUALITY_KINDS
    }
    if len(set(values.values())) != 1:
        raise NotEqual(values)
    return values[FORWARD]


def central_identity(f: Polynomial, x, h) -> tuple[Fraction, Fraction]:
    """Both sides of ``2 * delta_div f(x) * h = forward f(x) + backward f(x)``."""
    x, h = as_rational(x), as_rational(h)
    if h <= 0:
        raise ValueError("step must be positive")
    fp, f0, fm = poly_eval(f, x + h), poly_eval(f, x), poly_eval(f, x - h)
    delta_div = (fp - fm) / (2 * h)
    lhs = 2 * delta_div * h
    rhs = (fp - f0) + (f0 - fm)
    return lhs, rhs


def linearity_check(f: Polynomial, g: Polynomial, c, req: DifferenceRequest) -> bool:
    c = as_rational(c)
    df, dg = nth_difference(f, req), nth_difference(g, req)
    additive = nth_difference(f + g, req) == df + dg
    homogeneous = nth_difference(f * c, req) == c * df
    return additive and homogeneous
