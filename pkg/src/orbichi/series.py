"""Truncated power series in t and the power structure over the L-ring.

A series lives in 1 + t*R[[t]] truncated at a fixed degree D, with
coefficients in the ring of integer combinations of rational powers of L
(plain ints embed as constants).

The power structure assigns a series A(t)^m to any such A and any ring
element m.  It is generated by the monomial rule

    (1 - t)^(-L^a)        = (1 - L^a t)^(-1)

together with the exponential laws A^(m+m') = A^m A^m', (AB)^m = A^m B^m,
(A^m)^m' = A^(m m'), and the substitution rules (A(t^s))^m = A^m |_{t->t^s}
and (A(L^s t))^m = A^(L^s m).  General exponentiation goes through the unique
standard-form factorization A = prod_i (1 - t^i)^(-b_i): raising to m then
multiplies every b_i by m, and each monomial of b_i * m is handled by the
shift rule (1 - L^a t^s)^(-c L^b) = (1 - L^(a+b) t^s)^(-c).

The monomial rule above is stated for L-monomials with any rational exponent;
this is the unique extension compatible with exponent shifts once fractional
powers of L are adjoined to the ring.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

from .errors import UsageError
from .motivic import LPolynomial

Coefficient = Union[int, LPolynomial]


def _as_lpoly(value) -> LPolynomial:
    if isinstance(value, LPolynomial):
        return value
    if isinstance(value, int):
        return LPolynomial.constant(value)
    raise UsageError(f"cannot use {value!r} as a series coefficient")


class TruncatedSeries:
    """A power series modulo t^(D+1) with LPolynomial coefficients."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients: Sequence[Coefficient]):
        if degree < 0:
            raise UsageError("truncation degree must be >= 0")
        coeffs = [_as_lpoly(c) for c in coefficients[: degree + 1]]
        coeffs.extend([LPolynomial.zero()] * (degree + 1 - len(coeffs)))
        self.degree = degree
        self.coefficients = tuple(coeffs)

    @classmethod
    def one(cls, degree: int) -> "TruncatedSeries":
        return cls(degree, [LPolynomial.one()])

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Coefficient], degree: Optional[int] = None) -> "TruncatedSeries":
        if degree is None:
            degree = len(coefficients) - 1
        return cls(degree, coefficients)

    def coefficient(self, n: int) -> LPolynomial:
        return self.coefficients[n]

    def has_unit_constant_term(self) -> bool:
        return self.coefficients[0] == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.degree == other.degree and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.degree, self.coefficients))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d = min(self.degree, other.degree)
        a, b = self.coefficients, other.coefficients
        out = []
        for n in range(d + 1):
            acc = LPolynomial.zero()
            for i in range(n + 1):
                ca = a[i]
                if ca:
                    cb = b[n - i]
                    if cb:
                        acc = acc + ca * cb
            out.append(acc)
        return TruncatedSeries(d, out)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d = min(self.degree, other.degree)
        return TruncatedSeries(
            d, [a + b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d = min(self.degree, other.degree)
        return TruncatedSeries(
            d, [a - b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def substitute_t_power(self, s: int) -> "TruncatedSeries":
        """t -> t^s, at the same truncation degree."""
        if s < 1:
            raise UsageError("substitution power must be >= 1")
        out = [LPolynomial.zero()] * (self.degree + 1)
        for i, c in enumerate(self.coefficients):
            if i * s > self.degree:
                break
            out[i * s] = c
        return TruncatedSeries(self.degree, out)

    def scale_t(self, exponent: Fraction) -> "TruncatedSeries":
        """t -> L^exponent * t."""
        out = []
        for n, c in enumerate(self.coefficients):
            out.append(c * LPolynomial.L_power(exponent * n))
        return TruncatedSeries(self.degree, out)

    def euler_image(self) -> tuple[int, ...]:
        return tuple(c.specialize_euler() for c in self.coefficients)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be 1."""
        if not self.has_unit_constant_term():
            raise UsageError("series inverse needs constant term 1")
        out = [LPolynomial.one()]
        for n in range(1, self.degree + 1):
            acc = LPolynomial.zero()
            for i in range(1, n + 1):
                ci = self.coefficients[i]
                if ci:
                    acc = acc + ci * out[n - i]
            out.append(-acc)
        return TruncatedSeries(self.degree, out)

    def int_pow(self, n: int) -> "TruncatedSeries":
        """Classical integer power (negative allowed when invertible)."""
        base = self if n >= 0 else self.inverse()
        result = TruncatedSeries.one(self.degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    def render_lines(self) -> list[str]:
        return [f"t^{n} : {c.render()}" for n, c in enumerate(self.coefficients)]

    def __str__(self) -> str:
        return "\n".join(self.render_lines())

    def __repr__(self) -> str:
        return f"TruncatedSeries(D={self.degree}, {[c.render() for c in self.coefficients]})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_product(family: Iterable[TruncatedSeries], degree: Optional[int] = None) -> TruncatedSeries:
    """Product of a family, folded left to right (deterministic)."""
    result: Optional[TruncatedSeries] = None
    for s in family:
        result = s if result is None else result * s
    if result is None:
        if degree is None:
            raise UsageError("empty product needs an explicit degree")
        return TruncatedSeries.one(degree)
    return result


def monomial_geometric_power(a, s: int, n: int, degree: int) -> TruncatedSeries:
    """(1 - L^a t^s)^(-n) mod t^(degree+1), for any integer n.

    Nonnegative n expands as a geometric-type series with binomial
    coefficients; negative n gives the plain polynomial (1 - L^a t^s)^|n|.
    """
    if s < 1:
        raise UsageError("t-power s must be >= 1")
    a = Fraction(a)
    coeffs = [LPolynomial.zero()] * (degree + 1)
    coeffs[0] = LPolynomial.one()
    jmax = degree // s
    if n >= 0:
        for j in range(1, jmax + 1):
            coeffs[j * s] = LPolynomial.monomial(comb(n - 1 + j, j), a * j)
    else:
        for j in range(1, min(jmax, -n) + 1):
            sign = -1 if j % 2 else 1
            coeffs[j * s] = LPolynomial.monomial(sign * comb(-n, j), a * j)
    return TruncatedSeries(degree, coeffs)


def factor_standard(series: TruncatedSeries) -> dict[int, LPolynomial]:
    """The unique exponents b_i with  A = prod_{i=1}^{D} (1 - t^i)^(-b_i).

    Determined degree by degree: b_n is fixed by matching the t^n coefficient
    of A against the partial product over i < n; reconstruction reproduces A
    exactly modulo t^(D+1).
    """
    if not series.has_unit_constant_term():
        raise UsageError("standard-form factorization needs constant term 1")
    degree = series.degree
    exponents: dict[int, LPolynomial] = {}
    partial = TruncatedSeries.one(degree)
    for n in range(1, degree + 1):
        b = series.coefficient(n) - partial.coefficient(n)
        exponents[n] = b
        if b:
            partial = partial * _one_minus_tn_pow(n, b, degree)
    return exponents


def _one_minus_tn_pow(n: int, exponent: LPolynomial, degree: int) -> TruncatedSeries:
    """(1 - t^n)^(-exponent) for an LPolynomial exponent, via the monomial rule."""
    out = TruncatedSeries.one(degree)
    for a, c in exponent.terms():
        out = out * monomial_geometric_power(a, n, c, degree)
    return out


def power_structure_pow(series: TruncatedSeries, exponent) -> TruncatedSeries:
    """A(t)^m for a ring-element exponent m, via the standard factorization.

    For a pure integer m this agrees with the classical integer power.
    """
    m = _as_lpoly(exponent)
    degree = series.degree
    std = factor_standard(series)
    out = TruncatedSeries.one(degree)
    for i in range(1, degree + 1):
        b = std.get(i)
        if b:
            out = out * _one_minus_tn_pow(i, b * m, degree)
    return out


def kapranov_zeta(exponent, degree: int) -> TruncatedSeries:
    """(1 - t)^(-m): coefficient n is the class of the n-th symmetric power."""
    geometric = monomial_geometric_power(0, 1, 1, degree)
    return power_structure_pow(geometric, exponent)


def phi_weight(phis: Sequence[Fraction], radii: Sequence[int]) -> Fraction:
    """phi_1 (r_1 - 1) + phi_2 r_1 (r_2 - 1) + ... for a tuple of radii."""
    acc = Fraction(0)
    running = Fraction(1)
    for phi, r in zip(phis, radii):
        acc += Fraction(phi) * running * (r - 1)
        running *= r
    return acc


def _radius_tuples(k: int, degree: int):
    """All (r_1..r_k) with product <= degree, lexicographically."""
    def extend(prefix: tuple[int, ...], prod: int):
        if len(prefix) == k:
            yield prefix
            return
        r = 1
        while prod * r <= degree:
            yield from extend(prefix + (r,), prod * r)
            r += 1
    yield from extend((), 1)


def rhs_principal(
    k: int,
    phis: Sequence,
    dimension: int,
    cls: LPolynomial,
    degree: int,
) -> TruncatedSeries:
    """The product side of the main generating-series identity.

    Product over tuples (r_1..r_k) with r_1...r_k <= degree of
    (1 - L^(w d/2) t^(r_1...r_k)) raised, via the power structure, to
    -(r_2 r_3^2 ... r_k^(k-1)) * cls, where w is the phi-weight of the tuple.
    Tuples with larger products cannot touch coefficients below t^(D+1).
    """
    if k < 1:
        raise UsageError("order k must be >= 1")
    phis = [Fraction(p) for p in phis]
    if len(phis) < k:
        raise UsageError(f"need at least {k} phi values, got {len(phis)}")
    cls = _as_lpoly(cls)
    result = TruncatedSeries.one(degree)
    if cls.is_zero():
        return result
    half_d = Fraction(dimension, 2)
    for radii in _radius_tuples(k, degree):
        t_power = 1
        mult = 1
        for i, r in enumerate(radii):
            t_power *= r
            if i >= 1:
                mult *= r ** i
        shift = phi_weight(phis, radii) * half_d
        for a, c in cls.terms():
            result = result * monomial_geometric_power(shift + a, t_power, mult * c, degree)
    return result
