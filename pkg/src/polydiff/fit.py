"""Damped-sine fits of difference-versus-order sequences.

The model is ``A * exp(-beta k) * sin(omega k + phi)``.  The parameters are
found by Gauss-Newton
with backtracking on relative residuals ``(v_k - model_k) / |v_k|``, which
weights every order equally even though the magnitudes span ten decades.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import GridSpec, Polynomial
from .differences import BACKWARD, FORWARD, DifferenceRequest, nth_difference
from .error import DegenerateInput

MAX_ITER = 200
STEP_TOL = 1e-10
MIN_POINTS = 5


class TooFewPoints(ValueError):
    pass


class StencilOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class DiffSequence:
    values: tuple  # floats
    exact: tuple  # Fractions
    power: int
    at_index: int
    step: float

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class OscillatorFit:
    amplitude: float
    damping: float
    frequency: float
    phase: float
    log_magnitude_rmse: float
    sign_matches: int
    n_points: int
    iterations: int
    converged: bool

    @property
    def params(self) -> tuple:
        return (self.amplitude, self.damping, self.frequency, self.phase)

    def model(self, k):
        return _model(np.log(self.amplitude), self.damping, self.frequency, self.phase, np.asarray(k, float))

    def as_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "damping": self.damping,
            "frequency": self.frequency,
            "phase": self.phase,
            "log_magnitude_rmse": self.log_magnitude_rmse,
            "sign_matches": self.sign_matches,
            "n_points": self.n_points,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def backward_sequence(n: int, i: int, grid: GridSpec | None = None) -> DiffSequence:
    """Orders ``0..n`` of the table row at index ``i``.

    These are the differences taken toward the origin: forward on negative
    rows and at 0, backward on positive rows.  The row ``i = -10`` of the
    tenth-power table is the classic alternating example.
    """
    grid = grid or GridSpec()
    N = grid.half_range
    kind = FORWARD if i <= 0 else BACKWARD
    lo, hi = (i, i + n) if kind is FORWARD else (i - n, i)
    if lo < -N or hi > N:
        raise StencilOutOfRange(f"order-{n} stencil from index {i} leaves the grid -{N}..{N}")
    f = Polynomial.monomial(n)
    x = grid.x(i)
    exact = tuple(nth_difference(f, DifferenceRequest(kind, k, grid.step, x)) for k in range(n + 1))
    return DiffSequence(tuple(float(v) for v in exact), exact, n, i, float(grid.step))


def _model(log_a, beta, omega, phi, k):
    return np.exp(log_a - beta * k) * np.sin(omega * k + phi)


def _jacobian(p, k):
    log_a, beta, omega, phi = p
    env = np.exp(log_a - beta * k)
    s, c = np.sin(omega * k + phi), np.cos(omega * k + phi)
    return np.stack([env * s, -k * env * s, k * env * c, env * c], axis=1)


def _sign_pattern_compatible(values) -> bool:
    """Necessary condition for a sampled sinusoid: interior sign runs differ in
    length by at most one and the end runs are at most one longer."""
    signs = [v > 0 for v in values if v != 0]
    runs = []
    for s in signs:
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    lengths = [r[1] for r in runs]
    if len(lengths) <= 2:
        return True
    inner = lengths[1:-1]
    return max(inner) - min(inner) <= 1 and max(lengths[0], lengths[-1]) <= min(inner) + 1


def _starts(k, v, w):
    """Spec-style start plus the best points of a (beta, omega) grid with
    amplitude and phase solved linearly."""
    v0, v1 = abs(v[0]) or np.max(np.abs(v)), abs(v[1]) or np.max(np.abs(v))
    beta0 = math.log(v0 / v1) if v0 > 0 and v1 > 0 else 0.0
    phi0 = math.pi / 2 if v[0] >= 0 else -math.pi / 2
    starts = [np.array([math.log(v0), beta0, math.pi, phi0])]
    scored = []
    for beta in np.linspace(-1.0, 3.0, 33):
        env = np.exp(-beta * k)
        for omega in np.linspace(math.pi / 48, math.pi, 48):
            X = np.stack([env * np.sin(omega * k), env * np.cos(omega * k)], axis=1) * w[:, None]
            coef, *_ = np.linalg.lstsq(X, v * w, rcond=None)
            r = X @ coef - v * w
            amp = math.hypot(*coef)
            if amp == 0:
                continue
            scored.append((float(r @ r), beta, omega, math.log(amp), math.atan2(coef[1], coef[0])))
    scored.sort()
    for _, beta, omega, log_a, phi in scored[:4]:
        starts.append(np.array([log_a, beta, omega, phi]))
    return starts


def _gauss_newton(p, k, v, w):
    def resid(q):
        return w * (v - _model(*q, k))

    r = resid(p)
    cost = float(r @ r)
    converged = False
    it = 0
    for it in range(1, MAX_ITER + 1):
        J = -w[:, None] * _jacobian(p, k)
        delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
        t = 1.0
        while t > 1e-12:
            cand = p + t * delta
            rc = resid(cand)
            cc = float(rc @ rc)
            if np.isfinite(cc) and cc <= cost:
                break
            t *= 0.5
        else:
            converged = True
            break
        moved = float(np.max(np.abs(t * delta)))
        p, r, cost = cand, rc, cc
        if moved < STEP_TOL:
            converged = True
            break
    return p, cost, it, converged


def _canonical(p):
    log_a, beta, omega, phi = (float(x) for x in p)
    omega = omega % (2 * math.pi)
    if omega > math.pi:
        omega, phi = 2 * math.pi - omega, math.pi - phi
    phi = math.remainder(phi, 2 * math.pi)
    return math.exp(log_a), beta, omega, phi


def fit_damped_sine(seq) -> OscillatorFit:
    """Fit the damped sine to ``seq`` (a :class:`DiffSequence` or plain values)."""
    values = seq.values if isinstance(seq, DiffSequence) else tuple(float(x) for x in seq)
    v = np.asarray(values, dtype=float)
    if len(v) < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} values, got {len(v)}")
    if not np.all(np.isfinite(v)) or not np.any(v):
        raise DegenerateInput("sequence is all zero or not finite")
    if not _sign_pattern_compatible(v):
        raise DegenerateInput("sign pattern cannot come from a single-frequency sine")
    k = np.arange(len(v), dtype=float)
    scale = np.abs(v)
    w = 1.0 / np.where(scale > 0, scale, np.max(scale))

    best = None
    for p0 in _starts(k, v, w):
        # trial steps may overflow; those are rejected by the line search
        with np.errstate(over="ignore", invalid="ignore"):
            p, cost, it, conv = _gauss_newton(p0, k, v, w)
        if np.all(np.isfinite(p)) and (best is None or cost < best[1]):
            best = (p, cost, it, conv)
    p, _, it, conv = best
    amp, beta, omega, phi = _canonical(p)
    m = _model(math.log(amp), beta, omega, phi, k)
    nz = v != 0
    with np.errstate(divide="ignore"):
        logerr = np.log(np.abs(m[nz])) - np.log(np.abs(v[nz]))
    rmse = float(np.sqrt(np.mean(logerr**2))) if np.all(np.isfinite(logerr)) else math.inf
    signs = int(np.sum(np.sign(m) == np.sign(v)))
    return OscillatorFit(amp, beta, omega, phi, rmse, signs, len(v), it, conv)


def forward_from_backward_fit(fit: OscillatorFit, n: int, orders=None) -> np.ndarray:
    """Forward prediction ``(-1)**(n-1) * model(k)`` for ``k = 0..n``."""
    k = np.arange(n + 1) if orders is None else np.asarray(orders)
    return (-1) ** (n - 1) * fit.model(k)


@dataclass
class ForwardComparison:
    orders: list
    predicted: list
    exact: list  # Fractions

    @property
    def disagreements(self) -> list:
        """Orders where the predicted sign differs from the exact one."""
        return [
            k
            for k, p, e in zip(self.orders, self.predicted, self.exact)
            if np.sign(p) != np.sign(float(e))
        ]


def compare_forward_prediction(fit: OscillatorFit, seq: DiffSequence) -> ForwardComparison:
    """Predicted forward values against exact forward differences at the mirrored argument ``-x_i``."""
    n = seq.power
    f = Polynomial.monomial(n)
    x = -seq.at_index * Fraction(seq.step)
    exact = [nth_difference(f, DifferenceRequest(FORWARD, k, Fraction(seq.step), x)) for k in range(n + 1)]
    pred = forward_from_backward_fit(fit, n)
    return ForwardComparison(list(range(n + 1)), [float(p) for p in pred], exact)
