import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polydiff.core import ArityMismatch, MultiPolynomial, Polynomial
from polydiff.differences import BACKWARD, CENTRAL_FULL, CENTRAL_HALF, FORWARD, DifferenceRequest, nth_difference
from polydiff.partial import (
    PartialRequest,
    check_sum_relations,
    check_theorem54,
    check_theorem516,
    diagonal_difference,
    diagonal_divided_difference,
    partial_difference,
    power_shape_weights,
    product_form,
    sum_form,
)

from conftest import rationals, steps

U3V = MultiPolynomial.monomial((3, 1))
SQUARES = MultiPolynomial({(2, 0): 1, (0, 2): 1})


def brute_partial(m, var, n, h, at):
    """Recursive forward difference in one coordinate."""
    if n == 0:
        return m(at)
    up = list(at)
    up[var] += h
    return brute_partial(m, var, n - 1, h, tuple(up)) - brute_partial(m, var, n - 1, h, at)


def brute_diagonal(m, n, h, at):
    if n == 0:
        return m(at)
    up = tuple(a + s for a, s in zip(at, h))
    return brute_diagonal(m, n - 1, h, up) - brute_diagonal(m, n - 1, h, at)


def test_partial_examples():
    assert partial_difference(U3V, 0, FORWARD, 3, 1, (0, 5)) == brute_partial(U3V, 0, 3, 1, (0, 5)) == 30
    for h in (1, Fraction(2, 3)):
        assert partial_difference(U3V, 1, FORWARD, 2, h, (1, 2)) == 0


def test_partial_reduces_to_univariate():
    for kind in (FORWARD, BACKWARD, CENTRAL_FULL):
        m = MultiPolynomial.from_univariate(Polynomial.monomial(6))
        got = partial_difference(m, 0, kind, 4, Fraction(1, 2), (Fraction(3),))
        assert got == nth_difference(Polynomial.monomial(6), DifferenceRequest(kind, 4, Fraction(1, 2), 3))


def test_partial_rejects_half_step_kind():
    with pytest.raises(ValueError):
        partial_difference(U3V, 0, CENTRAL_HALF, 1, 1, (0, 0))


def test_partial_arity():
    with pytest.raises(ArityMismatch):
        partial_difference(U3V, 0, FORWARD, 1, 1, (0,))
    with pytest.raises(ArityMismatch):
        partial_difference(U3V, 3, FORWARD, 1, 1, (0, 0))


def test_diagonal_examples():
    req = PartialRequest(FORWARD, 2, (0, 1), {0: 1, 1: 1}, (0, 0))
    assert diagonal_difference(SQUARES, req) == brute_diagonal(SQUARES, 2, (1, 1), (0, 0)) == 4
    assert product_form(SQUARES, FORWARD, {0: 1, 1: 1}) == 4
    const = MultiPolynomial({(0, 0): 9})
    assert diagonal_difference(const, PartialRequest(BACKWARD, 1, (0, 1), {0: 1, 1: 2}, (3, 3))) == 0


@given(st.integers(1, 4), st.tuples(steps(), steps()), st.tuples(rationals(-4, 4), rationals(-4, 4)))
def test_diagonal_against_brute_force(n, h, at):
    m = MultiPolynomial({(3, 1): 2, (0, 2): -1, (1, 1): Fraction(1, 2)})
    req = PartialRequest(FORWARD, n, (0, 1), dict(enumerate(h)), at)
    assert diagonal_difference(m, req) == brute_diagonal(m, n, h, at)


def test_diagonal_subset_of_variables():
    m = MultiPolynomial({(2, 2, 2): 1})
    req = PartialRequest(FORWARD, 2, (0, 2), {0: 1, 2: 1}, (1, 5, 1))
    assert diagonal_difference(m, req) == brute_diagonal(m, 2, (1, 0, 1), (1, 5, 1))


def test_request_validation():
    with pytest.raises(ValueError):
        PartialRequest(FORWARD, 1, (), {}, (0,))
    with pytest.raises(ValueError):
        PartialRequest(FORWARD, 1, (0,), {1: 1}, (0, 0))
    with pytest.raises(ValueError):
        PartialRequest(CENTRAL_HALF, 1, (0,), {0: 1}, (0,))
    with pytest.raises(ArityMismatch):
        diagonal_difference(U3V, PartialRequest(FORWARD, 1, (0, 4), {0: 1, 4: 1}, (0, 0)))


def test_diagonal_divided_needs_common_step():
    req = PartialRequest(CENTRAL_FULL, 2, (0, 1), {0: 1, 1: 2}, (0, 0))
    with pytest.raises(ValueError):
        diagonal_divided_difference(SQUARES, req)
    req = PartialRequest(CENTRAL_FULL, 2, (0, 1), {0: Fraction(1, 3), 1: Fraction(1, 3)}, (0, 0))
    assert diagonal_divided_difference(SQUARES, req) == 4


def test_theorem54_examples():
    rep = check_theorem54(U3V, 0, 3, Fraction(1, 2), (Fraction(-7, 3), 5))
    assert rep.equal and rep.derivative == 30 and rep.ratio == 5
    rep = check_theorem54(MultiPolynomial.monomial((6,)), 0, 6, 2, (1,))
    assert rep.equal and rep.derivative == math.factorial(6)
    rep = check_theorem54(U3V, 0, 2, 1, (1, 5))
    assert not rep.equal
    assert rep.divided[FORWARD] != rep.divided[BACKWARD]


@given(
    st.integers(1, 5).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a - 1))),
    st.integers(1, 6),
    rationals(-9, 9),
    steps(),
    st.lists(rationals(-4, 4), min_size=5, max_size=5),
    st.lists(st.integers(0, 3), min_size=5, max_size=5),
)
def test_theorem54_randomized(arity_var, n, coef, h, point, others):
    arity, var = arity_var
    exps = others[:arity]
    exps[var] = n
    m = MultiPolynomial.monomial(exps, coef)
    rep = check_theorem54(m, var, n, h, point[:arity])
    assert rep.equal


def test_theorem516_examples():
    m = MultiPolynomial.power_shape([3, 5])
    rep = check_theorem516(m, 2, 1, (1, 1))
    assert rep.passed and rep.value == 10
    rep = check_theorem516(MultiPolynomial.power_shape([0, 0, 0]), 3, 1, (1, 2, 3))
    assert rep.passed and rep.value == 0
    m = MultiPolynomial.power_shape([1, 1, 1])
    rep = check_theorem516(m, 3, Fraction(1, 2), (0, 0, 0))
    assert rep.passed and rep.value == 6
    fwd = partial_difference(m, 2, FORWARD, 3, Fraction(1, 2), (0, 0, 0))
    assert fwd / Fraction(1, 8) == 6


def test_theorem516_all_orders():
    m = MultiPolynomial.power_shape([2, -3, Fraction(1, 2), 4])
    rep = check_theorem516(m, None, [1, Fraction(1, 3), 2, Fraction(5, 4)], (1, 2, 3, 4))
    assert rep.passed, rep.lines()
    assert len(rep.checks) == 4 * 7


def test_power_shape_rejects_other_shapes():
    with pytest.raises(ValueError):
        power_shape_weights(U3V)


def test_sum_relations_examples():
    rep = check_sum_relations(SQUARES)
    assert rep.passed and rep.value == 4
    cubes = MultiPolynomial({(3, 0): 1, (0, 3): -1})
    rep = check_sum_relations(cubes, 3, (2, -1))
    assert rep.passed and rep.value == 0
    single = MultiPolynomial.monomial((5,))
    assert check_sum_relations(single).value == math.factorial(5)


@given(st.integers(1, 8), st.lists(st.sampled_from([1, -1]), min_size=1, max_size=5))
def test_sum_relations_randomized(n, signs):
    k = len(signs)
    m = MultiPolynomial({tuple(n if j == v else 0 for j in range(k)): s for v, s in enumerate(signs)}, arity=k)
    assert check_sum_relations(m, n, tuple(Fraction(v, 3) for v in range(k))).passed


def test_closed_forms_at_nonunit_steps():
    steps_ = {0: Fraction(1, 2), 1: 3}
    req = PartialRequest(FORWARD, 2, (0, 1), steps_, (0, 0))
    diag = diagonal_difference(SQUARES, req)
    assert sum_form(SQUARES, FORWARD, steps_) == diag == Fraction(37, 2)
    assert product_form(SQUARES, FORWARD, steps_) != diag
