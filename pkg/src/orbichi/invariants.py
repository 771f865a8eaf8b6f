"""The order-k invariants, their generating series, and the verifier.

Two computation routes are kept deliberately independent:

* the left-hand side of every identity is honest brute force on the wreath
  group (full multiplication table, full matrices, conjugacy classes by
  conjugation) with no use of types, cycle-products, or the structure of
  wreath centralizers;
* the right-hand side comes from the power-structure product formula.

The wreath combinatorics (types, centralizer-order formula) live in
``groups`` and are used only by the cross-check suite, never by the verifier
itself.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ConsistencyError, UsageError
from .gmodel import (
    FiniteGSet,
    GSetView,
    LinearGAction,
    LinearView,
    whole_view,
    wreath_model,
)
from .groups import commuting_tuples, conjugacy_classes_of
from .motivic import LPolynomial
from .series import TruncatedSeries, rhs_principal


def normalize_phis(phis: Sequence, k: int) -> tuple[Fraction, ...]:
    out = tuple(Fraction(p) for p in phis)
    if len(out) < k:
        raise UsageError(f"need at least {k} phi values, got {len(out)}")
    return out


# ---------------------------------------------------------------------------
# integer-valued order-k Euler characteristics (finite backend)
# ---------------------------------------------------------------------------

def chi_k_recursive(model: Union[FiniteGSet, GSetView], k: int) -> int:
    """Order-k Euler characteristic by recursion over conjugacy classes.

    Order 0 is the orbit count; order k sums the order-(k-1) value of
    (fixed set of g, centralizer of g) over conjugacy classes [g].
    """
    if k < 0:
        raise UsageError("order k must be >= 0")
    view = whole_view(model)
    if not isinstance(view, GSetView):
        raise UsageError("chi invariants need the finite-set backend")
    memo: dict = {}

    def rec(v: GSetView, kk: int) -> int:
        if kk == 0:
            return v.orbit_count()
        key = (v.key(), kk)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for cls in conjugacy_classes_of(v.group, v.members):
            total += rec(v.restrict(cls[0]), kk - 1)
        memo[key] = total
        return total

    return rec(view, k)


def chi_k_commuting(model: Union[FiniteGSet, GSetView], k: int) -> int:
    """Order-k Euler characteristic as a normalized sum over commuting tuples.

    Sums |X^<g_0..g_k>| over pairwise-commuting (k+1)-tuples and divides by
    |G|; the division must be exact, and a remainder aborts the run.
    """
    if k < 1:
        raise UsageError("the commuting-tuple form needs order k >= 1")
    view = whole_view(model)
    if not isinstance(view, GSetView):
        raise UsageError("chi invariants need the finite-set backend")
    group = view.group
    if view.members != tuple(range(group.order)):
        raise UsageError("the commuting-tuple form is defined on whole models")
    table = group.table
    fixed = [frozenset(view.fixed_points(g)) for g in range(group.order)]
    members = list(view.members)
    all_points = frozenset(view.points)
    total = 0

    def rec(depth: int, candidates: list[int], fx: frozenset):
        nonlocal total
        if depth == k:
            total += sum(len(fx & fixed[g]) for g in candidates)
            return
        for g in candidates:
            row_g = table[g]
            rec(
                depth + 1,
                [h for h in candidates if row_g[h] == table[h][g]],
                fx & fixed[g],
            )

    rec(0, members, all_points)
    if total % group.order != 0:
        raise ConsistencyError(
            f"commuting-tuple sum {total} is not divisible by the group order {group.order}"
        )
    return total // group.order


# ---------------------------------------------------------------------------
# L-valued order-k classes (linear backend)
# ---------------------------------------------------------------------------

def class_k(
    model: Union[LinearGAction, LinearView],
    phis: Sequence,
    k: int,
) -> LPolynomial:
    """The order-k generalized class of the pair (action space, group).

    Recursion over conjugacy classes: each representative g contributes the
    order-(k-1) class of (fixed subspace of g, centralizer of g), shifted by
    L^(phi_k * age(g)) with the age taken in the current ambient space.
    Order 0 is the quotient class L^dim.
    """
    if k < 1:
        raise UsageError("order k must be >= 1")
    view = whole_view(model)
    if not isinstance(view, LinearView):
        raise UsageError("order-k classes need the linear backend")
    phis_f = normalize_phis(phis, k)
    memo: dict = {}

    def rec(v: LinearView, kk: int) -> LPolynomial:
        if kk == 0:
            return v.quotient_class()
        key = (v.key(), kk)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = LPolynomial.zero()
        phi = phis_f[kk - 1]
        for cls in conjugacy_classes_of(v.group, v.members):
            g = cls[0]
            shift = LPolynomial.L_power(phi * v.age(g))
            total = total + rec(v.restrict(g), kk - 1) * shift
        memo[key] = total
        return total

    return rec(view, k)


def inertia_class(model: Union[LinearGAction, LinearView]) -> LPolynomial:
    """The shift-free specialization: class_k at order 1 with phi = 0."""
    return class_k(model, (Fraction(0),), 1)


# ---------------------------------------------------------------------------
# generating series
# ---------------------------------------------------------------------------

def _map_degrees(fn, degrees, jobs: int):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, degrees))
    return [fn(n) for n in degrees]


def lhs_series(
    model: LinearGAction,
    phis: Sequence,
    k: int,
    degree: int,
    jobs: int = 1,
    cap: Optional[int] = None,
) -> TruncatedSeries:
    """Brute-force generating series: t^n carries class_k of the n-th wreath power."""
    phis_f = normalize_phis(phis, k)

    def coefficient(n: int) -> LPolynomial:
        return class_k(wreath_model(model, n, cap=cap), phis_f, k)

    coeffs = [LPolynomial.one()]
    coeffs.extend(_map_degrees(coefficient, range(1, degree + 1), jobs))
    return TruncatedSeries(degree, coeffs)


def chi_lhs_series(
    model: FiniteGSet,
    k: int,
    degree: int,
    jobs: int = 1,
    cap: Optional[int] = None,
    commuting_cap: int = 1500,
) -> TruncatedSeries:
    """Integer generating series of the order-k invariants of wreath powers.

    Each coefficient comes from the conjugacy-class recursion and, when the
    wreath group is small enough, is cross-checked against the commuting-tuple
    form; disagreement aborts.
    """

    def coefficient(n: int) -> LPolynomial:
        wm = wreath_model(model, n, cap=cap)
        value = chi_k_recursive(wm, k)
        if k >= 1 and wm.group.order <= commuting_cap:
            other = chi_k_commuting(wm, k)
            if other != value:
                raise ConsistencyError(
                    f"the two order-{k} forms disagree on the wreath power n={n}: "
                    f"{value} (recursive) vs {other} (commuting)"
                )
        return LPolynomial.constant(value)

    coeffs = [LPolynomial.one()]
    coeffs.extend(_map_degrees(coefficient, range(1, degree + 1), jobs))
    return TruncatedSeries(degree, coeffs)


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeRecord:
    degree: int
    lhs: LPolynomial
    rhs: LPolynomial

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class VerificationReport:
    """Per-degree comparison of the brute-force and product-formula series."""

    kind: str  # "principal" or "chi"
    order: int
    phis: Optional[tuple[Fraction, ...]]
    max_degree: int
    records: tuple[DegreeRecord, ...]
    elapsed: float = field(compare=False, default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.equal for r in self.records)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _compare(kind, order, phis, lhs: TruncatedSeries, rhs: TruncatedSeries, started: float):
    records = tuple(
        DegreeRecord(n, lhs.coefficient(n), rhs.coefficient(n))
        for n in range(lhs.degree + 1)
    )
    return VerificationReport(
        kind=kind,
        order=order,
        phis=phis,
        max_degree=lhs.degree,
        records=records,
        elapsed=time.monotonic() - started,
    )


def verify_principal(
    model: LinearGAction,
    phis: Sequence,
    k: int,
    degree: int,
    jobs: int = 1,
    cap: Optional[int] = None,
) -> VerificationReport:
    """Compare the brute-force series against the power-structure product.

    The two sides share nothing but the order-k class of the base model; the
    report lists both coefficients for every degree and an exact-equality
    verdict.
    """
    started = time.monotonic()
    phis_f = normalize_phis(phis, k)
    cls = class_k(model, phis_f, k)
    rhs = rhs_principal(k, phis_f, model.dimension, cls, degree)
    lhs = lhs_series(model, phis_f, k, degree, jobs=jobs, cap=cap)
    return _compare("principal", k, phis_f, lhs, rhs, started)


def chi_series_check(
    model: FiniteGSet,
    k: int,
    degree: int,
    jobs: int = 1,
    cap: Optional[int] = None,
    commuting_cap: int = 1500,
) -> VerificationReport:
    """Integer-level series identity for the order-k invariant.

    The right side is the product formula at dimension 0 with the integer
    invariant of the base model as exponent class.
    """
    started = time.monotonic()
    if k < 1:
        raise UsageError("order k must be >= 1")
    base = chi_k_recursive(model, k)
    other = chi_k_commuting(model, k)
    if other != base:
        raise ConsistencyError(
            f"the two order-{k} forms disagree on the base model: {base} vs {other}"
        )
    rhs = rhs_principal(k, (Fraction(0),) * k, 0, LPolynomial.constant(base), degree)
    lhs = chi_lhs_series(model, k, degree, jobs=jobs, cap=cap, commuting_cap=commuting_cap)
    return _compare("chi", k, None, lhs, rhs, started)
