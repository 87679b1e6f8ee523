"""Seeded randomized verification suites; the ``check`` CLI runs these."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import GridSpec, MultiPolynomial, Polynomial
from .differences import (
    BACKWARD,
    CENTRAL_FULL,
    FORWARD,
    DifferenceKind,
    DifferenceRequest,
    NotEqual,
    central_identity,
    divided_difference,
    equality_operator,
    linearity_check,
    nth_difference,
    nth_difference_cascade,
)
from .partial import check_sum_relations, check_theorem54, check_theorem516
from .table import build_table, verify_distribution

ALL_KINDS = tuple(DifferenceKind)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)  # (label, lhs, rhs)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, label, lhs, rhs):
        self.cases += 1
        if lhs != rhs:
            self.failures.append((label, lhs, rhs))

    def lines(self, limit: int = 20) -> list[str]:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.cases - len(self.failures)}/{self.cases} cases"
        out = [head]
        for label, lhs, rhs in self.failures[:limit]:
            out.append(f"  {label}: lhs = {lhs}, rhs = {rhs}")
        return out


def random_rational(rng: random.Random, lo, hi, max_den: int = 12) -> Fraction:
    """Uniform-ish rational in ``[lo, hi]`` with denominator up to ``max_den``."""
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(math.ceil(lo * q), math.floor(hi * q)), q)


def random_step(rng, hi=3, max_den=12) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(1, hi * q), q)


def random_polynomial(rng, degree: int, bound: int = 9) -> Polynomial:
    coeffs = [random_rational(rng, -bound, bound, 6) for _ in range(degree)]
    lead = Fraction(0)
    while lead == 0:
        lead = random_rational(rng, -bound, bound, 6)
    return Polynomial(coeffs + [lead])


def lemma31(rng, powers=range(1, 13), n_steps=20, n_points=10) -> SuiteResult:
    res = SuiteResult("lemma31")
    for n in powers:
        f = Polynomial.monomial(n)
        for _ in range(n_steps):
            h = random_step(rng)
            for _ in range(n_points):
                x = random_rational(rng, -10, 10)
                for kind in ALL_KINDS:
                    got = divided_difference(f, DifferenceRequest(kind, n, h, x))
                    res.expect(f"x^{n} {kind.value} h={h} x={x}", got, math.factorial(n))
    return res


def thm49(rng, count=100, max_degree=8) -> SuiteResult:
    res = SuiteResult("thm49")
    for _ in range(count):
        n = rng.randint(1, max_degree)
        p = random_polynomial(rng, n)
        h, x = random_step(rng), random_rational(rng, -10, 10)
        target = p.leading() * math.factorial(n)
        for kind in ALL_KINDS:
            res.expect(f"{p} {kind.value} n={n} h={h} x={x}", divided_difference(p, DifferenceRequest(kind, n, h, x)), target)
            for j in (1, 2):
                res.expect(f"{p} {kind.value} order {n + j}", nth_difference(p, DifferenceRequest(kind, n + j, h, x)), 0)
        try:
            e = equality_operator(p, n, h, x)
        except NotEqual as exc:
            e = exc.values
        res.expect(f"E({p}) h={h} x={x}", e, target)
    return res


def paths(rng, count=500, max_order=12) -> SuiteResult:
    res = SuiteResult("paths")
    for _ in range(count):
        p = random_polynomial(rng, rng.randint(0, 10))
        req = DifferenceRequest(rng.choice(ALL_KINDS), rng.randint(0, max_order), random_step(rng), random_rational(rng, -10, 10))
        res.expect(f"{p} {req}", nth_difference(p, req), nth_difference_cascade(p, req))
    return res


def identity62(rng, count=200) -> SuiteResult:
    res = SuiteResult("identity62")
    for _ in range(count):
        p = random_polynomial(rng, rng.randint(0, 10))
        x, h = random_rational(rng, -10, 10), random_step(rng)
        lhs, rhs = central_identity(p, x, h)
        res.expect(f"{p} x={x} h={h}", lhs, rhs)
    return res


def random_point(rng, arity):
    return tuple(random_rational(rng, -5, 5) for _ in range(arity))


def thm54(rng, count=100, max_arity=5, max_order=6) -> SuiteResult:
    """``A * u_var**n`` times frozen powers of the other variables."""
    res = SuiteResult("thm54")
    for _ in range(count):
        arity = rng.randint(1, max_arity)
        var = rng.randrange(arity)
        n = rng.randint(1, max_order)
        exps = [rng.randint(0, 3) for _ in range(arity)]
        exps[var] = n
        coef = random_rational(rng, -9, 9, 6) or Fraction(1)
        m = MultiPolynomial.monomial(exps, coef)
        at = random_point(rng, arity)
        rep = check_theorem54(m, var, n, random_step(rng), at)
        others = coef
        for j, e in enumerate(exps):
            if j != var:
                others *= at[j] ** e
        res.expect(f"{m} var={var} derivative", rep.derivative, others * math.factorial(n))
        for kind, v in rep.divided.items():
            res.expect(f"{m} var={var} {kind.value}", v, rep.derivative)
    return res


def thm516(rng, count=60, max_arity=5) -> SuiteResult:
    res = SuiteResult("thm516")
    for _ in range(count):
        arity = rng.randint(1, max_arity)
        weights = [random_rational(rng, -9, 9, 6) for _ in range(arity)]
        m = MultiPolynomial.power_shape(weights)
        steps = [random_step(rng) for _ in range(arity)]
        rep = check_theorem516(m, None, steps, random_point(rng, arity))
        for c in rep.checks:
            res.expect(f"{weights} {c.name}", c.lhs, c.rhs)
    return res


def sums(rng, count=60, max_power=8, max_vars=5) -> SuiteResult:
    res = SuiteResult("sums")
    for _ in range(count):
        arity = rng.randint(1, max_vars)
        n = rng.randint(1, max_power)
        signs = [rng.choice((1, -1)) for _ in range(arity)]
        terms = {tuple(n if j == v else 0 for j in range(arity)): s for v, s in enumerate(signs)}
        m = MultiPolynomial(terms, arity=arity)
        at = random_point(rng, arity)
        for c in check_sum_relations(m, n, at).checks:
            res.expect(f"n={n} signs={signs} {c.name}", c.lhs, c.rhs)
    return res


def properties(rng) -> SuiteResult:
    """Table distribution, parity and symmetry properties."""
    res = SuiteResult("properties")
    configs = [(10, GridSpec(1, 10))]
    for _ in range(4):
        n = rng.randint(1, 8)
        configs.append((n, GridSpec(random_step(rng), rng.randint(1, 8))))
    for n, grid in configs:
        rep = verify_distribution(build_table(n, grid))
        for r in rep.results:
            res.expect(f"table n={n} N={grid.half_range} step={grid.step} {r.name}", r.passed, True)
    for n in range(1, 13):
        f = Polynomial.monomial(n)
        for _ in range(3):
            h = random_step(rng)
            i = rng.randint(1, 6)
            for k in range(1, n + 1):
                fwd = nth_difference(f, DifferenceRequest(FORWARD, k, h, -i * h))
                bwd = nth_difference(f, DifferenceRequest(BACKWARD, k, h, i * h))
                sign = (-1) ** k if n % 2 == 0 else (-1) ** (k + 1)
                res.expect(f"mirror n={n} k={k} i={i} h={h}", fwd, sign * bwd)
            for k in range(1, n + 1):
                if (n % 2 == 0) == (k % 2 == 1):
                    res.expect(f"central parity n={n} k={k}", nth_difference(f, DifferenceRequest(CENTRAL_FULL, k, h, 0)), 0)
            if n % 2 == 0:
                res.expect(f"second central n={n} h={h}", nth_difference(f, DifferenceRequest(CENTRAL_FULL, 2, h, 0)), 2 * (2 * h) ** n)
            for j in (1, 2, 3):
                for kind in ALL_KINDS:
                    res.expect(f"annihilation n={n} j={j} {kind.value}", nth_difference(f, DifferenceRequest(kind, n + j, h, random_rational(rng, -5, 5))), 0)
    for _ in range(50):
        f, g = random_polynomial(rng, rng.randint(0, 6)), random_polynomial(rng, rng.randint(0, 6))
        req = DifferenceRequest(rng.choice(ALL_KINDS), rng.randint(0, 8), random_step(rng), random_rational(rng, -5, 5))
        res.expect(f"linearity {f}, {g}", linearity_check(f, g, random_rational(rng, -5, 5), req), True)
    return res


SUITES = {
    "lemma31": lemma31,
    "thm49": thm49,
    "paths": paths,
    "thm54": thm54,
    "thm516": thm516,
    "sums": sums,
    "identity62": identity62,
    "properties": properties,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    return SUITES[name](random.Random(seed))
