"""Exact cyclotomic arithmetic and exact linear algebra over Q(zeta_N).

An element of Q(zeta_N) is stored as its residue modulo the N-th cyclotomic
polynomial Phi_N, in the power basis 1, x, ..., x^(deg Phi_N - 1), with
Fraction coefficients.  Working modulo Phi_N (rather than x^N - 1) makes the
structure a field, so every nonzero element is invertible and Gaussian
elimination never gets stuck.  All values are immutable and every operation
is exact; no floating point appears anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import UsageError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _int_poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Divide integer polynomials exactly; ``den`` must be monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise UsageError("exact integer division needs a monic divisor")
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise UsageError("integer polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial as little-endian integer coefficients.

    Computed by exact division of x^n - 1 by Phi_d over the proper divisors
    d of n.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if n < 1:
        raise UsageError(f"cyclotomic order must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def cyclotomic_degree(n: int) -> int:
    """deg Phi_n, i.e. Euler's totient of n."""
    return len(cyclotomic_polynomial(n)) - 1


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a dense coefficient list modulo Phi_n and pad to full degree."""
    phi = cyclotomic_polynomial(n)
    dn = len(phi) - 1
    p = list(coeffs)
    for i in range(len(p) - 1, dn - 1, -1):
        c = p[i]
        if c:
            p[i] = _ZERO
            for j in range(dn):
                if phi[j]:
                    p[i - dn + j] -= c * phi[j]
    p = p[:dn]
    p.extend([_ZERO] * (dn - len(p)))
    return tuple(p)


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    while num and num[-1] == 0:
        num.pop()
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [_ZERO] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + len(den) - 1] / lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_invert_mod(a: list[Fraction], modulus: Sequence[int]) -> list[Fraction]:
    """Inverse of ``a`` modulo the (irreducible) integer polynomial ``modulus``.

    Extended Euclid over Q[x]; the gcd must come out as a nonzero constant.
    """
    r0 = [Fraction(c) for c in modulus]
    r1 = list(a)
    while r1 and r1[-1] == 0:
        r1.pop()
    s0: list[Fraction] = []
    s1: list[Fraction] = [_ONE]
    while r1:
        quot, rem = _poly_divmod(list(r0), list(r1))
        # s_next = s0 - quot * s1
        prod = [_ZERO] * (len(quot) + len(s1))
        for i, qc in enumerate(quot):
            if qc:
                for j, sc in enumerate(s1):
                    prod[i + j] += qc * sc
        s_next = [
            (s0[i] if i < len(s0) else _ZERO) - (prod[i] if i < len(prod) else _ZERO)
            for i in range(max(len(s0), len(prod)))
        ]
        r0, r1 = r1, rem
        s0, s1 = s1, s_next
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo Phi_N")
    g = r0[0]
    return [c / g for c in s0]


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicNumber:
    """An element of Q(zeta_N) in canonical reduced form.

    Equality is structural: two values are equal iff they have the same order
    and the same coefficient tuple.  Values of different orders are never
    coerced implicitly; use :meth:`embed_order` first.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(order: int, coeffs: Iterable) -> "CyclotomicNumber":
        dense = [Fraction(c) for c in coeffs]
        return CyclotomicNumber(order, _reduce_mod_phi(dense, order))

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CyclotomicNumber":
        return cls.make(order, [Fraction(value)])

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        """zeta_order^power, reduced to canonical form."""
        power %= order
        return cls.make(order, [_ZERO] * power + [_ONE])

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise UsageError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}; "
                    "embed both operands into a common order first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        prod = [_ZERO] * (len(a) + len(b) - 1 if a else 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return CyclotomicNumber(self.order, _reduce_mod_phi(prod, self.order))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        inv = _poly_invert_mod(list(self.coeffs), cyclotomic_polynomial(self.order))
        return CyclotomicNumber(self.order, _reduce_mod_phi(inv, self.order))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "CyclotomicNumber":
        base = self if exponent >= 0 else self.inverse()
        result = CyclotomicNumber.one(self.order)
        for bit in bin(abs(exponent))[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    # -- predicates and conversions ------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational(self) -> Optional[Fraction]:
        """The value as a Fraction if it is rational, else None."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def as_integer(self) -> Optional[int]:
        """The value as an int if it is a rational integer, else None."""
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return q.numerator

    def embed_order(self, target: int) -> "CyclotomicNumber":
        """The same field element expressed in Q(zeta_target).

        Uses zeta_N = zeta_target^(target/N); ``target`` must be a multiple of
        the current order.
        """
        if target == self.order:
            return self
        if target % self.order != 0:
            raise UsageError(
                f"cannot embed order {self.order} into non-multiple order {target}"
            )
        stride = target // self.order
        dense = [_ZERO] * ((len(self.coeffs) - 1) * stride + 1)
        for j, c in enumerate(self.coeffs):
            dense[j * stride] = c
        return CyclotomicNumber(target, _reduce_mod_phi(dense, target))

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                sym = f"z{self.order}" if j == 1 else f"z{self.order}^{j}"
                parts.append(sym if c == 1 else f"{c}*{sym}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {self})"


def common_order(a: CyclotomicNumber, b: CyclotomicNumber):
    """Embed both operands into Q(zeta_lcm) and return the pair."""
    m = lcm(a.order, b.order)
    return a.embed_order(m), b.embed_order(m)


def cyclo_arith(a: CyclotomicNumber, b: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """Dispatch form of field arithmetic; ``op`` is ``add``, ``sub`` or ``mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown arithmetic op {op!r}")


def cyclo_inverse(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.inverse()


def embed_order(a: CyclotomicNumber, target: int) -> CyclotomicNumber:
    return a.embed_order(target)


def as_integer(a: CyclotomicNumber) -> Optional[int]:
    return a.as_integer()


# ---------------------------------------------------------------------------
# matrices and exact linear algebra
# ---------------------------------------------------------------------------

Vector = tuple[CyclotomicNumber, ...]


@dataclass(frozen=True)
class CycloMatrix:
    """A dense matrix over Q(zeta_order), row-major, immutable."""

    order: int
    rows: int
    cols: int
    entries: tuple[CyclotomicNumber, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise UsageError("entry count does not match matrix shape")

    @classmethod
    def from_rows(cls, order: int, rows: Sequence[Sequence[CyclotomicNumber]]) -> "CycloMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise UsageError("ragged matrix rows")
            for e in row:
                flat.append(e.embed_order(order) if e.order != order else e)
        return cls(order, nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int, order: int) -> "CycloMatrix":
        one = CyclotomicNumber.one(order)
        zero = CyclotomicNumber.zero(order)
        return cls(order, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int) -> "CycloMatrix":
        zero = CyclotomicNumber.zero(order)
        return cls(order, rows, cols, (zero,) * (rows * cols))

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._shape_check(other)
        return CycloMatrix(
            self.order, self.rows, self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._shape_check(other)
        return CycloMatrix(
            self.order, self.rows, self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def _shape_check(self, other: "CycloMatrix"):
        if (self.rows, self.cols, self.order) != (other.rows, other.cols, other.order):
            raise UsageError("matrix shape or order mismatch")

    def matmul(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.cols != other.rows or self.order != other.order:
            raise UsageError("matrix shape or order mismatch in product")
        zero = CyclotomicNumber.zero(self.order)
        out = []
        for i in range(self.rows):
            base = i * self.cols
            for j in range(other.cols):
                acc = zero
                for t in range(self.cols):
                    a = self.entries[base + t]
                    if not a.is_zero():
                        acc = acc + a * other.entries[t * other.cols + j]
                out.append(acc)
        return CycloMatrix(self.order, self.rows, other.cols, tuple(out))

    def __mul__(self, other):
        if isinstance(other, CycloMatrix):
            return self.matmul(other)
        scalar = other
        if isinstance(scalar, (int, Fraction)):
            scalar = CyclotomicNumber.from_rational(scalar, self.order)
        return CycloMatrix(
            self.order, self.rows, self.cols, tuple(e * scalar for e in self.entries)
        )

    def matpow(self, t: int) -> "CycloMatrix":
        if self.rows != self.cols:
            raise UsageError("matrix power needs a square matrix")
        result = CycloMatrix.identity(self.rows, self.order)
        base = self
        while t > 0:
            if t & 1:
                result = result.matmul(base)
            t >>= 1
            if t:
                base = base.matmul(base)
        return result

    def trace(self) -> CyclotomicNumber:
        acc = CyclotomicNumber.zero(self.order)
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entry(i, i)
        return acc

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise UsageError("vector length does not match matrix columns")
        zero = CyclotomicNumber.zero(self.order)
        out = []
        for i in range(self.rows):
            acc = zero
            base = i * self.cols
            for j, x in enumerate(v):
                e = self.entries[base + j]
                if not e.is_zero():
                    acc = acc + e * x
            out.append(acc)
        return tuple(out)

    def embed_order(self, target: int) -> "CycloMatrix":
        if target == self.order:
            return self
        return CycloMatrix(
            target, self.rows, self.cols,
            tuple(e.embed_order(target) for e in self.entries),
        )

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            for j in range(self.cols):
                v = self.entry(i, j).as_rational()
                if v != (1 if i == j else 0):
                    return False
        return True


def _rref(rows: list[list[CyclotomicNumber]], ncols: int):
    """Reduced row echelon form in place; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


def rref_rows(vectors: Sequence[Vector], ncols: int, order: int):
    """Canonical reduced echelon form of the span of the given row vectors."""
    rows = [[e.embed_order(order) if e.order != order else e for e in v] for v in vectors]
    return _rref(rows, ncols)


def matrix_rank(m: CycloMatrix) -> int:
    rows = [list(m.row(i)) for i in range(m.rows)]
    _, pivots = _rref(rows, m.cols)
    return len(pivots)


def kernel_basis(m: CycloMatrix) -> tuple[Vector, ...]:
    """Canonical exact basis of the null space of ``m``.

    The basis comes from the reduced echelon form: one vector per free column,
    with a unit in the free position, so the output is unique for a given
    matrix.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    rr, pivots = _rref(rows, m.cols)
    one = CyclotomicNumber.one(m.order)
    zero = CyclotomicNumber.zero(m.order)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [zero] * m.cols
        vec[free] = one
        for i, p in enumerate(pivots):
            vec[p] = -rr[i][free]
        basis.append(tuple(vec))
    return tuple(basis)


def solve_in_span(basis: Sequence[Vector], v: Vector) -> Optional[tuple[CyclotomicNumber, ...]]:
    """Coordinates of ``v`` in the span of independent ``basis`` vectors.

    Returns None when ``v`` is not in the span.
    """
    if not basis:
        return () if all(e.is_zero() for e in v) else None
    order = basis[0][0].order
    dim = len(v)
    w = len(basis)
    rows = []
    for i in range(dim):
        row = [basis[j][i] for j in range(w)]
        row.append(v[i])
        rows.append(row)
    pivots: list[int] = []
    r = 0
    for c in range(w):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != w:
        raise UsageError("solve_in_span requires an independent basis")
    for i in range(r, len(rows)):
        if not rows[i][w].is_zero():
            return None
    zero = CyclotomicNumber.zero(order)
    coords = [zero] * w
    for i, p in enumerate(pivots):
        coords[p] = rows[i][w]
    return tuple(coords)
