import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydiff.core import GridSpec
from polydiff.error import DegenerateInput
from polydiff.fit import (
    StencilOutOfRange,
    TooFewPoints,
    backward_sequence,
    compare_forward_prediction,
    fit_damped_sine,
    forward_from_backward_fit,
)

FIGURE = [10000000000, -6513215599, 4100173022, -2478397020, 1425878520, -771309000,
          385363440, -172972800, 66528000, -19958400, 3628800]


def synthetic(a, beta, omega, phi, n=11):
    k = np.arange(n)
    return a * np.exp(-beta * k) * np.sin(omega * k + phi)


def test_figure_sequence():
    seq = backward_sequence(10, -10, GridSpec(1, 10))
    assert list(seq.exact) == FIGURE
    assert seq.values[0] == (-10.0) ** 10


def test_linear_sequence():
    assert backward_sequence(1, -1, GridSpec(1, 1)).exact == (-1, 1)


def test_last_entry_factorial_times_step():
    h = Fraction(1, 2)
    seq = backward_sequence(6, 4, GridSpec(h, 10))
    assert seq.exact[-1] == math.factorial(6) * h**6


def test_stencil_out_of_range():
    with pytest.raises(StencilOutOfRange):
        backward_sequence(10, -2, GridSpec(1, 5))
    with pytest.raises(StencilOutOfRange):
        backward_sequence(6, 2, GridSpec(1, 3))


def test_figure_fit_quality():
    fit = fit_damped_sine(backward_sequence(10, -10))
    model = fit.model(np.arange(11))
    assert np.all(np.sign(model) == np.sign(FIGURE))
    assert fit.sign_matches == 11
    assert fit.log_magnitude_rmse <= 0.35
    assert fit.amplitude > 0 and all(math.isfinite(p) for p in fit.params)


def test_round_trip_example():
    fit = fit_damped_sine(synthetic(7, 0.4, 3.1, 1.2))
    assert np.allclose(fit.params, (7, 0.4, 3.1, 1.2), atol=1e-6, rtol=0)


@given(
    st.floats(0.5, 50),
    st.floats(0.05, 0.8),
    st.floats(0.2, math.pi - 0.2),
    st.floats(-math.pi + 0.2, math.pi - 0.2),
)
def test_round_trip_random(a, beta, omega, phi):
    v = synthetic(a, beta, omega, phi)
    # keep away from samples that land almost on a zero of the sine
    if np.min(np.abs(np.sin(omega * np.arange(11) + phi))) < 0.05:
        return
    fit = fit_damped_sine(v)
    assert np.allclose(fit.params, (a, beta, omega, phi), atol=1e-6 * max(1, a), rtol=1e-6)


def test_deterministic():
    seq = backward_sequence(10, -10)
    a, b = fit_damped_sine(seq), fit_damped_sine(seq)
    assert a == b


def test_zero_sequence():
    with pytest.raises(DegenerateInput):
        fit_damped_sine([0.0] * 8)


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        fit_damped_sine([1.0, -0.5, 0.25, -0.1])


def test_impossible_sign_pattern():
    with pytest.raises(DegenerateInput):
        fit_damped_sine([1, -1, -1, -1, -1, 1, -1, 1])


def test_forward_prediction_sign_factor():
    fit = fit_damped_sine(backward_sequence(10, -10))
    pred = forward_from_backward_fit(fit, 10)
    assert np.allclose(pred, -fit.model(np.arange(11)))
    assert np.allclose(forward_from_backward_fit(fit, 1, [0, 1]), fit.model(np.arange(2)))


def test_forward_comparison_reports_disagreements():
    seq = backward_sequence(10, -10)
    cmp = compare_forward_prediction(fit_damped_sine(seq), seq)
    assert cmp.exact[10] == math.factorial(10)
    assert cmp.exact[0] == 10**10
    # exact forward values at +10 are all positive; the stated factor flips the even orders
    assert cmp.disagreements == [0, 2, 4, 6, 8, 10]
