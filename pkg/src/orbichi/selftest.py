"""A fast self-check suite over the bundled models, used by the CLI.

Each check is a named callable that raises (or returns a message) on
failure.  The random checks use a fixed seed so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .bundled import bundled_document, bundled_model, bundled_names
from .documents import document_from_model, load_document
from .gmodel import central_extension_model, product_model
from .invariants import (
    chi_k_commuting,
    chi_k_recursive,
    chi_series_check,
    class_k,
    inertia_class,
    verify_principal,
)
from .motivic import LPolynomial
from .exactnum import CyclotomicNumber, cyclotomic_polynomial
from .series import TruncatedSeries, monomial_geometric_power, power_structure_pow


def random_lpolynomial(rng: random.Random, max_terms: int = 3) -> LPolynomial:
    exponents = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(1, 3)]
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[rng.choice(exponents)] = rng.randint(-3, 3)
    return LPolynomial(terms)


def random_unit_series(rng: random.Random, degree: int) -> TruncatedSeries:
    coeffs = [LPolynomial.one()]
    coeffs.extend(random_lpolynomial(rng) for _ in range(degree))
    return TruncatedSeries(degree, coeffs)


def _check_documents():
    for name in bundled_names():
        doc = bundled_document(name)
        loaded = load_document(doc)
        if document_from_model(loaded.model, name=name) != doc:
            return f"bundled document {name} does not round-trip"
    return None


def _check_cyclotomic():
    i = CyclotomicNumber.zeta(4)
    if i * i != CyclotomicNumber.from_rational(-1, 4):
        return "zeta_4^2 != -1"
    z = CyclotomicNumber.zeta(3)
    if not (1 + z + z * z).is_zero():
        return "1 + zeta_3 + zeta_3^2 != 0"
    for n in range(1, 13):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                phi = cyclotomic_polynomial(d)
                nxt = [0] * (len(prod) + len(phi) - 1)
                for a, ca in enumerate(prod):
                    for b, cb in enumerate(phi):
                        nxt[a + b] += ca * cb
                prod = nxt
        expected = [-1] + [0] * (n - 1) + [1]
        if prod != expected:
            return f"product of Phi_d over d | {n} is not x^{n} - 1"
    return None


def _check_chi_forms():
    cases = [("z2-swap", 2), ("s3-point", 2), ("s3-on-3", 1)]
    for name, kmax in cases:
        model = bundled_model(name)
        for k in range(1, kmax + 1):
            a = chi_k_recursive(model, k)
            b = chi_k_commuting(model, k)
            if a != b:
                return f"chi forms disagree on {name} at order {k}: {a} vs {b}"
    return None


def _check_class_values():
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    expected = {
        ("z2-on-c", 1): LPolynomial({Fraction(1): 1, half: 1}),
        ("z2-on-c", 2): LPolynomial({Fraction(1): 1, half: 3}),
        ("z3-on-c", 1): LPolynomial({Fraction(1): 1, third: 1, 2 * third: 1}),
    }
    for (name, k), want in expected.items():
        got = class_k(bundled_model(name), (1,) * k, k)
        if got != want:
            return f"class of {name} at order {k}: got {got}, want {want}"
    if inertia_class(bundled_model("z2-on-c")) != LPolynomial({Fraction(1): 1, Fraction(0): 1}):
        return "inertia class of z2-on-c is not L + 1"
    return None


def _check_products():
    m1 = bundled_model("z2-swap")
    m2 = bundled_model("s3-point")
    prod = product_model(m1, m2)
    for k in range(1, 3):
        if chi_k_recursive(prod, k) != chi_k_recursive(m1, k) * chi_k_recursive(m2, k):
            return f"chi of a product is not the product of chis at order {k}"
    l1 = bundled_model("z2-on-c")
    l2 = bundled_model("z3-on-c")
    lp = product_model(l1, l2)
    phis = (1,)
    if class_k(lp, phis, 1) != class_k(l1, phis, 1) * class_k(l2, phis, 1):
        return "order-1 class of a linear product is not multiplicative"
    return None


def _check_central_extension():
    model = bundled_model("z2-on-c")
    extended, _ext = central_extension_model(model, model.group.identity, 2)
    phis = (1,)
    if class_k(extended, phis, 1) != 2 * class_k(model, phis, 1):
        return "central extension by r=2 does not scale the order-1 class by 2"
    return None


def _check_power_axioms():
    rng = random.Random(20240803)
    for _ in range(10):
        degree = rng.randint(2, 4)
        a = random_unit_series(rng, degree)
        b = random_unit_series(rng, degree)
        m1 = random_lpolynomial(rng)
        m2 = random_lpolynomial(rng)
        if power_structure_pow(a, m1 + m2) != power_structure_pow(a, m1) * power_structure_pow(a, m2):
            return "A^(m+m') != A^m A^m'"
        if power_structure_pow(a * b, m1) != power_structure_pow(a, m1) * power_structure_pow(b, m1):
            return "(AB)^m != A^m B^m"
        if power_structure_pow(a, 1) != a:
            return "A^1 != A"
    if monomial_geometric_power(1, 1, 1, 3) != power_structure_pow(
        monomial_geometric_power(0, 1, 1, 3), LPolynomial.L_power(1)
    ):
        return "Kapranov zeta of L does not match the monomial rule"
    return None


def _check_verify_small():
    report = verify_principal(bundled_model("z2-on-c"), (1,), 1, 2)
    if not report.passed:
        return "principal identity failed at order 1, degree 2"
    report = chi_series_check(bundled_model("z2-swap"), 1, 3)
    if not report.passed:
        return "chi series identity failed on z2-swap at order 1, degree 3"
    return None


CHECKS = (
    ("bundled documents round-trip", _check_documents),
    ("cyclotomic identities", _check_cyclotomic),
    ("order-k forms agree", _check_chi_forms),
    ("frozen class values", _check_class_values),
    ("product multiplicativity", _check_products),
    ("central extension scaling", _check_central_extension),
    ("power structure axioms", _check_power_axioms),
    ("series identities at small degree", _check_verify_small),
)


def run_selftest():
    """Run all checks; returns a list of (name, passed, detail)."""
    results = []
    for name, check in CHECKS:
        try:
            detail = check()
        except Exception as exc:  # a failing check must not stop the others
            detail = f"{type(exc).__name__}: {exc}"
        results.append((name, detail is None, detail))
    return results
