"""Partial and diagonal differences of multivariate polynomials.

A diagonal difference shifts every variable of a set ``M`` at once, each by
its own step.  It is evaluated by cascade and serves as the reference against
which the closed product and sum forms are compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import ArityMismatch, MultiPolynomial, Polynomial, as_rational, multi_eval, multi_partial_derivative
from .differences import (
    BACKWARD,
    CENTRAL_FULL,
    FORWARD,
    DifferenceKind,
    divisor,
)

PARTIAL_KINDS = (FORWARD, BACKWARD, CENTRAL_FULL)


@dataclass(frozen=True)
class PartialRequest:
    kind: DifferenceKind
    order: int
    vars: tuple
    steps: Mapping[int, Fraction]
    at: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(set(self.vars))))
        object.__setattr__(self, "at", tuple(as_rational(a) for a in self.at))
        steps = self.steps
        if not isinstance(steps, Mapping):
            steps = dict(zip(self.vars, steps))
        object.__setattr__(self, "steps", {int(v): as_rational(h) for v, h in steps.items()})
        if not self.vars:
            raise ValueError("variable set must be nonempty")
        if self.kind not in PARTIAL_KINDS:
            raise ValueError(f"{self.kind.value} is not a partial difference kind")
        if self.order < 0:
            raise ValueError("difference order must be non-negative")
        if set(self.steps) != set(self.vars):
            raise ValueError("steps must be given for exactly the variables in the set")
        if any(h <= 0 for h in self.steps.values()):
            raise ValueError("steps must be positive")

    def validate(self, m: MultiPolynomial):
        if len(self.at) != m.arity:
            raise ArityMismatch(f"point has {len(self.at)} coordinates, polynomial has arity {m.arity}")
        for v in self.vars:
            if not 0 <= v < m.arity:
                raise ArityMismatch(f"variable index {v} outside 0..{m.arity - 1}")


def _check_point(m: MultiPolynomial, at: Sequence) -> tuple:
    if len(at) != m.arity:
        raise ArityMismatch(f"point has {len(at)} coordinates, polynomial has arity {m.arity}")
    return tuple(as_rational(a) for a in at)


def partial_difference(m: MultiPolynomial, var: int, kind: DifferenceKind, order: int, step, at: Sequence) -> Fraction:
    """Order-``order`` difference in ``var`` alone (binomial sum)."""
    if kind not in PARTIAL_KINDS:
        raise ValueError(f"{kind.value} is not a partial difference kind")
    at = _check_point(m, at)
    if not 0 <= var < m.arity:
        raise ArityMismatch(f"variable index {var} outside 0..{m.arity - 1}")
    h = as_rational(step)
    total = Fraction(0)
    for w, s in kind.offsets(order):
        pt = list(at)
        pt[var] += s * h
        total += w * multi_eval(m, pt)
    return total


def partial_divided_difference(m, var, kind, order, step, at) -> Fraction:
    return partial_difference(m, var, kind, order, step, at) / divisor(kind, order, step)


def diagonal_difference(m: MultiPolynomial, req: PartialRequest) -> Fraction:
    """Simultaneous-shift difference of order ``req.order`` by cascade."""
    req.validate(m)

    def shifted(point, sign):
        pt = list(point)
        for v in req.vars:
            pt[v] += sign * req.steps[v]
        return tuple(pt)

    def g0(point):
        return multi_eval(m, point)

    g = g0
    for _ in range(req.order):
        g = _diagonal_step(g, req.kind, shifted)
    return g(req.at)


def _diagonal_step(g, kind, shifted):
    if kind is FORWARD:
        return lambda p: g(shifted(p, 1)) - g(p)
    if kind is BACKWARD:
        return lambda p: g(p) - g(shifted(p, -1))
    return lambda p: g(shifted(p, 1)) - g(shifted(p, -1))


def diagonal_divided_difference(m: MultiPolynomial, req: PartialRequest) -> Fraction:
    """Diagonal difference over ``step**n`` (``(2 step)**n`` for central).

    Only defined when all variables share one step.
    """
    steps = set(req.steps.values())
    if len(steps) != 1:
        raise ValueError("divided diagonal difference needs a common step")
    return diagonal_difference(m, req) / divisor(req.kind, req.order, steps.pop())


@dataclass
class IdentityCheck:
    """One side-by-side comparison; ``asserted`` False means report-only."""

    name: str
    lhs: object
    rhs: object
    asserted: bool = True

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def passed(self) -> bool:
        return self.holds or not self.asserted

    def line(self) -> str:
        mark = ("PASS" if self.holds else "FAIL") if self.asserted else ("AGREE" if self.holds else "DIFFER")
        return f"{mark} {self.name}: {self.lhs} vs {self.rhs}"


@dataclass
class CheckReport:
    checks: list = field(default_factory=list)
    value: Fraction | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, lhs, rhs, asserted=True):
        self.checks.append(IdentityCheck(name, lhs, rhs, asserted))

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


@dataclass
class Theorem54Report:
    derivative: Fraction
    divided: dict  # kind -> value
    order: int

    @property
    def equal(self) -> bool:
        return all(v == self.derivative for v in self.divided.values())

    @property
    def ratio(self) -> Fraction:
        """The free constant: common value over ``order!``."""
        return self.derivative / math.factorial(self.order)

    def lines(self) -> list[str]:
        out = [f"derivative = {self.derivative}"]
        out += [f"{k.value} divided = {v}" for k, v in self.divided.items()]
        out.append(f"{'EQUAL' if self.equal else 'NOT EQUAL'}; value/{self.order}! = {self.ratio}")
        return out


def check_theorem54(m: MultiPolynomial, var: int, order: int, step, at: Sequence) -> Theorem54Report:
    at = _check_point(m, at)
    deriv = multi_eval(multi_partial_derivative(m, var, order), at)
    divided = {k: partial_divided_difference(m, var, k, order, step, at) for k in PARTIAL_KINDS}
    return Theorem54Report(deriv, divided, order)


def power_shape_weights(m: MultiPolynomial) -> list[Fraction]:
    """Weights ``M_i`` of ``sum_i M_i u_i**i``; raises if ``m`` has another shape."""
    weights = [Fraction(0)] * m.arity
    for exps, c in m.terms.items():
        nz = [(v, e) for v, e in enumerate(exps) if e]
        if len(nz) != 1 or nz[0][1] != nz[0][0] + 1:
            raise ValueError(f"term {exps} is not of the form u_i^i")
        weights[nz[0][0]] = c
    return weights


def check_theorem516(m: MultiPolynomial, k: int | None, steps, at: Sequence) -> CheckReport:
    """For each checked ``k`` (1-based variable and order), compare the
    order-``k`` partial differences in ``u_k`` with ``M_k k! h**k`` and their
    divided forms with the partial derivative ``M_k k!``."""
    weights = power_shape_weights(m)
    at = _check_point(m, at)
    if not isinstance(steps, (list, tuple)):
        steps = [steps] * m.arity
    steps = [as_rational(h) for h in steps]
    ks = range(1, m.arity + 1) if k is None else [k]
    report = CheckReport()
    for kk in ks:
        if not 1 <= kk <= m.arity:
            raise ArityMismatch(f"order {kk} outside 1..{m.arity}")
        var, h = kk - 1, steps[kk - 1]
        target = weights[var] * math.factorial(kk)
        deriv = multi_eval(multi_partial_derivative(m, var, kk), at)
        report.add(f"k={kk} derivative = M_k k!", deriv, target)
        for kind in PARTIAL_KINDS:
            diff = partial_difference(m, var, kind, kk, h, at)
            report.add(f"k={kk} {kind.value} difference = M_k k! h^k", diff, target * divisor(kind, kk, h))
            report.add(f"k={kk} {kind.value} divided = derivative", diff / divisor(kind, kk, h), deriv)
    report.value = None if k is None else weights[k - 1] * math.factorial(k)
    return report


def sum_shape(m: MultiPolynomial) -> tuple[int, dict]:
    """``(n, {var: coefficient})`` for ``m = sum c_v u_v**n``."""
    n = None
    coeffs = {}
    for exps, c in m.terms.items():
        nz = [(v, e) for v, e in enumerate(exps) if e]
        if len(nz) != 1:
            raise ValueError(f"term {exps} is not a pure power of one variable")
        v, e = nz[0]
        if n is None:
            n = e
        elif e != n:
            raise ValueError("all terms must share one exponent")
        coeffs[v] = c
    if n is None:
        raise ValueError("polynomial has no non-constant terms")
    return n, coeffs


def check_sum_relations(m: MultiPolynomial, order: int | None = None, at: Sequence | None = None) -> CheckReport:
    """Unit-step diagonal difference of ``sum +-u_i**n`` against the sum form,
    the sum of single-variable derivatives, and the sum of partial derivatives,
    for each of the three partial kinds."""
    n, coeffs = sum_shape(m)
    order = n if order is None else order
    at = tuple(Fraction(0) for _ in range(m.arity)) if at is None else _check_point(m, at)
    vars_ = tuple(sorted(coeffs))
    report = CheckReport()
    closed = math.factorial(order) * sum(coeffs.values()) if order == n else 0
    single = Fraction(0)
    for v in vars_:
        single += Polynomial.monomial(n, coeffs[v]).derivative(order)(at[v])
    partial_sum = sum(
        (multi_eval(multi_partial_derivative(m, v, order), at) for v in range(m.arity)),
        Fraction(0),
    )
    for kind in PARTIAL_KINDS:
        req = PartialRequest(kind, order, vars_, {v: 1 for v in vars_}, at)
        diag = diagonal_difference(m, req) / divisor(kind, order, 1)
        report.add(f"{kind.value} diagonal = n! sum(+-h^n)", diag, Fraction(closed))
        report.add(f"{kind.value} diagonal = sum d^n/du_i^n f(u_i)", diag, single)
        report.add(f"{kind.value} diagonal = sum partial^n f", diag, partial_sum)
    report.value = partial_sum
    return report


def product_form(m: MultiPolynomial, kind: DifferenceKind, steps: Mapping[int, Fraction]) -> Fraction:
    """Closed product form: signed term count times ``n!`` times the product
    of the per-variable increments to the ``n``."""
    n, coeffs = sum_shape(m)
    prod = Fraction(1)
    for v in coeffs:
        prod *= (kind.span() * as_rational(steps[v])) ** n
    return sum(coeffs.values()) * math.factorial(n) * prod


def sum_form(m: MultiPolynomial, kind: DifferenceKind, steps: Mapping[int, Fraction]) -> Fraction:
    """Closed sum form ``n! * sum c_v (increment_v)**n``."""
    n, coeffs = sum_shape(m)
    return math.factorial(n) * sum(
        (c * (kind.span() * as_rational(steps[v])) ** n for v, c in coeffs.items()), Fraction(0)
    )
