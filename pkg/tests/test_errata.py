import math
from fractions import Fraction

from polydiff.core import MultiPolynomial
from polydiff.errata import central_coefficient, product_vs_diagonal, sign_law


def test_sign_law():
    stated, mirror = sign_law(10, 3)
    assert mirror.agreeing == len(mirror.rows)
    # the stated factor is right exactly when it coincides with the mirror factor
    assert 0 < stated.agreeing < len(stated.rows)
    wrong = {r.label for r in stated.rows if not r.agrees}
    assert "n=2 k=2 i=2" in wrong


def test_central_coefficient():
    stated, alt = central_coefficient(12)
    assert alt.agreeing == 12
    assert [r.agrees for r in stated.rows] == [True] + [False] * 11
    assert alt.rows[9].computed == math.factorial(10) * 2**10 == 3715891200


def test_product_form_only_at_unit_steps():
    m = MultiPolynomial({(2, 0): 1, (0, 2): 1})
    prod, summ = product_vs_diagonal(m, {0: 1, 1: 1})
    assert prod.rows[0].agrees and summ.agreeing == 3
    prod, summ = product_vs_diagonal(m, {0: Fraction(1, 2), 1: 3})
    assert prod.agreeing == 0 and summ.agreeing == 3
