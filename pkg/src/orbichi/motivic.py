"""The value ring for motivic invariants: integer combinations of L^a, a in Q.

L stands for the class of the affine line.  Every invariant this package
computes lands in the subring of integer-coefficient sums of rational powers
of L; under the Euler specialization L maps to 1, under the Hodge-Deligne
specialization L maps to uv.  Exponents are exact rationals on purpose: shift
exponents mix arbitrary rational weights with ages whose denominators grow
with cycle lengths, so no fixed denominator lattice is assumed.

Coefficients are integers by construction; a rational coefficient appearing
anywhere signals a bug upstream and raises immediately.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ConsistencyError, InputError

_EXACT_INT = int


class LPolynomial:
    """A finite integer-coefficient combination of L^a with rational a.

    Values are immutable; zero coefficients are never stored, so equality is
    structural.  Arithmetic accepts plain ints, which embed as constants.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Fraction, int], Iterable, None] = None):
        clean: dict[Fraction, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                if not isinstance(coeff, _EXACT_INT):
                    raise ConsistencyError(
                        f"non-integer coefficient {coeff!r} for L^{exp}; "
                        "all invariants in scope are integer combinations of L-powers"
                    )
                if coeff == 0:
                    continue
                exp = Fraction(exp)
                clean[exp] = clean.get(exp, 0) + coeff
                if clean[exp] == 0:
                    del clean[exp]
        object.__setattr__(self, "_terms", clean)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "LPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LPolynomial":
        return cls({Fraction(0): 1})

    @classmethod
    def constant(cls, c: int) -> "LPolynomial":
        return cls({Fraction(0): c})

    @classmethod
    def L_power(cls, exponent) -> "LPolynomial":
        return cls({Fraction(exponent): 1})

    @classmethod
    def monomial(cls, coeff: int, exponent) -> "LPolynomial":
        return cls({Fraction(exponent): coeff})

    # -- structure ------------------------------------------------------------

    def terms(self) -> tuple[tuple[Fraction, int], ...]:
        """Terms as (exponent, coefficient) pairs sorted by increasing exponent."""
        return tuple(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def as_int(self) -> int:
        """The value as a plain integer; raises unless it is a constant."""
        if not self._terms:
            return 0
        if set(self._terms) == {Fraction(0)}:
            return self._terms[Fraction(0)]
        raise ConsistencyError(f"{self} is not an integer constant")

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {Fraction(0)}

    # -- ring operations --------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "LPolynomial":
        if isinstance(value, LPolynomial):
            return value
        if isinstance(value, _EXACT_INT):
            return LPolynomial.constant(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return LPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "LPolynomial":
        return LPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Fraction, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LPolynomial":
        if n < 0:
            raise ConsistencyError("negative powers are not defined in this ring")
        result = LPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, _EXACT_INT):
            other = LPolynomial.constant(other)
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self.terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- specializations ----------------------------------------------------------

    def specialize_euler(self) -> int:
        """Substitute L^a -> 1: the integer Euler image."""
        return sum(self._terms.values())

    def specialize_hodge_deligne(self) -> str:
        """Render the image under L -> uv as a sum of (uv)^a terms."""
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in self.terms():
            if exp == 0:
                body = ""
            elif exp == 1:
                body = "uv"
            else:
                body = f"(uv)^{_render_exponent(exp)}"
            if body == "":
                text = str(coeff)
            elif coeff == 1:
                text = body
            elif coeff == -1:
                text = f"-{body}"
            else:
                text = f"{coeff}{body}"
            parts.append(text)
        return _join_signed(parts)

    # -- rendering and parsing -----------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms by increasing exponent, ``c * L^(p/q)``."""
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in self.terms():
            if exp == 0:
                parts.append(str(coeff))
            elif exp == 1:
                parts.append(f"{coeff} * L")
            else:
                parts.append(f"{coeff} * L^{_render_exponent(exp)}")
        return _join_signed(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"LPolynomial({self.render()!r})"

    def to_pairs(self) -> list[list]:
        """JSON form: sorted [exponent "p/q", coefficient] pairs."""
        return [[str(e), c] for e, c in self.terms()]

    @classmethod
    def from_pairs(cls, pairs) -> "LPolynomial":
        terms = {}
        for pair in pairs:
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                raise InputError("", f"bad L-polynomial pair {pair!r}")
            exp, coeff = pair
            if not isinstance(coeff, _EXACT_INT):
                raise InputError("", f"non-integer coefficient {coeff!r}")
            terms[Fraction(str(exp))] = coeff
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "LPolynomial":
        """Parse the rendered form, e.g. ``1 * L + 3 * L^(1/2)`` or ``L^2 - 1``."""
        src = text.strip()
        if not src:
            raise InputError("", "empty L-polynomial")
        if src == "0":
            return cls.zero()
        out = cls.zero()
        pos = 0
        sign = 1
        term_re = re.compile(
            r"\s*(?P<coeff>[+-]?\d+|[+-])?\s*(?:(?P<star>\*)\s*)?"
            r"(?P<L>L(?:\^(?:(?P<iexp>-?\d+)|\(\s*(?P<num>-?\d+)\s*(?:/\s*(?P<den>\d+))?\s*\)))?)?"
        )
        while pos < len(src):
            m = term_re.match(src, pos)
            if not m or m.end() == pos or (m.group("coeff") is None and m.group("L") is None):
                raise InputError("", f"cannot parse L-polynomial near {src[pos:]!r}")
            raw_coeff = m.group("coeff")
            if raw_coeff is None:
                coeff = 1
            elif raw_coeff == "+":
                coeff = 1
            elif raw_coeff == "-":
                coeff = -1
            else:
                coeff = int(raw_coeff)
            if raw_coeff in ("+", "-") and not m.group("L"):
                raise InputError("", f"dangling sign in {text!r}")
            if m.group("L"):
                if m.group("iexp") is not None:
                    exp = Fraction(int(m.group("iexp")))
                elif m.group("num") is not None:
                    exp = Fraction(int(m.group("num")), int(m.group("den") or 1))
                else:
                    exp = Fraction(1)
            else:
                if m.group("star"):
                    raise InputError("", f"dangling '*' in {text!r}")
                exp = Fraction(0)
            out = out + cls.monomial(sign * coeff, exp)
            pos = m.end()
            rest = src[pos:].lstrip()
            if not rest:
                break
            if rest[0] == "+":
                sign = 1
            elif rest[0] == "-":
                sign = -1
            else:
                raise InputError("", f"expected '+' or '-' near {rest!r}")
            pos = len(src) - len(rest) + 1
        return out


def _render_exponent(exp: Fraction) -> str:
    if exp.denominator == 1:
        return str(exp.numerator) if exp.numerator >= 0 else f"({exp.numerator})"
    return f"({exp.numerator}/{exp.denominator})"


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def lpoly_arith(a: LPolynomial, b: LPolynomial, op: str) -> LPolynomial:
    """Dispatch form of ring arithmetic; ``op`` is ``add``, ``sub`` or ``mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError("", f"unknown arithmetic op {op!r}")


def specialize_euler(p: LPolynomial) -> int:
    return p.specialize_euler()


def specialize_hodge_deligne(p: LPolynomial) -> str:
    return p.specialize_hodge_deligne()
