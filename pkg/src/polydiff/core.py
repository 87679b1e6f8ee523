"""Exact scalars and polynomials.

Scalars are :class:`fractions.Fraction` throughout; ``Rational`` is an alias
kept for readability at call sites.  Both polynomial types are immutable and
hashable.
"""
from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class ArityMismatch(ValueError):
    """A point or variable index does not match the polynomial's arity."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently inject binary rounding into an
    exact computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        num, sep, den = text.partition("/")
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational of the form p or p/q: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """``"p/q"``, or just ``"p"`` for integers; the sign sits on ``p``."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero when k > n >= 0."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients.

    ``coefficients[i]`` multiplies ``x**i``.  Trailing zeros are stripped so
    the zero polynomial is the empty tuple and equality is structural.
    """

    __slots__ = ("coefficients", "_scaled")

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [as_rational(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))
        # integer coefficients over a common denominator, for fast evaluation
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        object.__setattr__(self, "_scaled", (tuple(c.numerator * (den // c.denominator) for c in coeffs), den))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, n: int, coefficient: Number = 1) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        return cls([0] * n + [coefficient])

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Parse ``"c0,c1,..."`` (lowest degree first)."""
        text = text.strip()
        if not text:
            return cls()
        return cls(parse_rational(part) for part in text.split(","))

    def format(self) -> str:
        return ",".join(format_rational(c) for c in self.coefficients) or "0"

    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return len(self.coefficients) - 1 if self.coefficients else None

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coefficients))

    def __repr__(self):
        return f"Polynomial({self.format()!r})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(format_rational(c) + (f"*{mono}" if mono else ""))
        return " + ".join(reversed(parts)).replace("+ -", "- ")

    def __add__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        other = _promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial(c * other for c in self.coefficients)
        other = _promote(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, c) -> "Polynomial":
        """The polynomial ``x -> p(x + c)``."""
        c = as_rational(c)
        out = Polynomial()
        # Horner in the shifted variable (x + c)
        lin = Polynomial([c, 1])
        for a in reversed(self.coefficients):
            out = out * lin + a
        return out

    def derivative(self, k: int = 1) -> "Polynomial":
        return poly_derivative(self, k)


def _promote(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Polynomial([value])
    return NotImplemented


def poly_eval(p: Polynomial, x) -> Fraction:
    """Exact Horner evaluation, done in integers: with ``x = a/b`` and
    integer coefficients ``C_i`` over denominator ``L``, the value is
    ``sum C_i a**i b**(n-i) / (L b**n)``."""
    x = as_rational(x)
    ints, den = p._scaled
    if not ints:
        return Fraction(0)
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    for c in reversed(ints):
        acc = acc * a + c * bpow
        bpow *= b
    return Fraction(acc, den * (bpow // b))


def poly_derivative(p: Polynomial, k: int) -> Polynomial:
    """k-th derivative; orders above the degree give the zero polynomial."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k == 0:
        return p
    return Polynomial(
        falling_factorial(i, k) * c for i, c in enumerate(p.coefficients) if i >= k
    )


@dataclass(frozen=True)
class GridSpec:
    """Symmetric grid ``x_i = i * step`` for ``i`` in ``-half_range .. half_range``."""

    step: Fraction = Fraction(1)
    half_range: int = 10

    def __post_init__(self):
        object.__setattr__(self, "step", as_rational(self.step))
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if self.half_range < 1:
            raise ValueError("grid half range must be at least 1")

    def x(self, i: int) -> Fraction:
        if abs(i) > self.half_range:
            raise IndexError(f"grid index {i} outside -{self.half_range}..{self.half_range}")
        return i * self.step

    def indices(self) -> range:
        return range(-self.half_range, self.half_range + 1)

    def contains(self, i: int) -> bool:
        return -self.half_range <= i <= self.half_range



class MultiPolynomial:
    """Sparse multivariate polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[Sequence[int], Number] | None = None, arity: int | None = None):
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if arity is None:
                arity = len(exps)
            elif len(exps) != arity:
                raise ArityMismatch(f"exponent vector {exps} does not have length {arity}")
            c = as_rational(c)
            total = clean.get(exps, Fraction(0)) + c
            if total:
                clean[exps] = total
            else:
                clean.pop(exps, None)
        if arity is None:
            raise ValueError("arity is required for an empty polynomial")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "arity", arity)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPolynomial is immutable")

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: Number = 1) -> "MultiPolynomial":
        return cls({tuple(exponents): coefficient}, arity=len(exponents))

    @classmethod
    def zero(cls, arity: int) -> "MultiPolynomial":
        return cls({}, arity=arity)

    @classmethod
    def from_univariate(cls, p: Polynomial, arity: int = 1, var: int = 0) -> "MultiPolynomial":
        terms = {}
        for i, c in enumerate(p.coefficients):
            exps = [0] * arity
            exps[var] = i
            terms[tuple(exps)] = c
        return cls(terms, arity=arity)

    @classmethod
    def power_shape(cls, weights: Sequence[Number]) -> "MultiPolynomial":
        """``sum_i weights[i-1] * u_i**i`` over ``len(weights)`` variables."""
        arity = len(weights)
        terms = {}
        for idx, w in enumerate(weights):
            exps = [0] * arity
            exps[idx] = idx + 1
            terms[tuple(exps)] = w
        return cls(terms, arity=arity)

    def __eq__(self, other):
        if isinstance(other, MultiPolynomial):
            return self.arity == other.arity and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(("MultiPolynomial", self.arity, tuple(self.terms.items())))

    def __repr__(self):
        return f"MultiPolynomial({self.terms!r}, arity={self.arity})"

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, var: int) -> int | None:
        self._check_var(var)
        if not self.terms:
            return None
        return max(e[var] for e in self.terms)

    def _check_var(self, var: int):
        if not 0 <= var < self.arity:
            raise ArityMismatch(f"variable index {var} outside 0..{self.arity - 1}")

    def __add__(self, other):
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityMismatch("cannot add polynomials of different arity")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPolynomial(terms, arity=self.arity)

    def __neg__(self):
        return MultiPolynomial({e: -c for e, c in self.terms.items()}, arity=self.arity)

    def __sub__(self, other):
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPolynomial({e: c * other for e, c in self.terms.items()}, arity=self.arity)
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityMismatch("cannot multiply polynomials of different arity")
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPolynomial(terms, arity=self.arity)

    __rmul__ = __mul__

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return multi_eval(self, point)

    def restrict(self, var: int, point: Sequence) -> Polynomial:
        """Univariate polynomial in ``var`` with the other coordinates frozen."""
        self._check_var(var)
        if len(point) != self.arity:
            raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has arity {self.arity}")
        pt = [as_rational(p) for p in point]
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            w = c
            for j, (x, k) in enumerate(zip(pt, e)):
                if j != var and k:
                    w *= x**k
            coeffs[e[var]] = coeffs.get(e[var], Fraction(0)) + w
        if not coeffs:
            return Polynomial()
        return Polynomial(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def multi_eval(m: MultiPolynomial, point: Sequence) -> Fraction:
    if len(point) != m.arity:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has arity {m.arity}")
    pt = [as_rational(p) for p in point]
    total = Fraction(0)
    for exps, c in m.terms.items():
        term = c
        for x, k in zip(pt, exps):
            if k:
                term *= x**k
        total += term
    return total


def multi_partial_derivative(m: MultiPolynomial, var: int, k: int) -> MultiPolynomial:
    m._check_var(var)
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    terms = {}
    for exps, c in m.terms.items():
        if exps[var] < k:
            continue
        new = list(exps)
        new[var] -= k
        terms[tuple(new)] = c * falling_factorial(exps[var], k)
    return MultiPolynomial(terms, arity=m.arity)
