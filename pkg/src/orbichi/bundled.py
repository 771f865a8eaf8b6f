"""Bundled example models: the smallest actions that exercise everything.

Linear models cover half- and third-integer exponents; the finite models
cover nonabelian classes and nontrivial orbit counts.  Each model is also
available as an input document through :func:`bundled_document`.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UsageError
from .exactnum import CycloMatrix, CyclotomicNumber
from .gmodel import FiniteGSet, LinearGAction
from .groups import FiniteGroup, group_from_permutations


def _cyclic_group(n: int, labels=None) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, identity=0, labels=labels)


def _linear_model(group, dimension, root_order, rows_per_element) -> LinearGAction:
    matrices = [
        CycloMatrix.from_rows(root_order, rows) for rows in rows_per_element
    ]
    return LinearGAction(group, dimension, root_order, matrices)


@lru_cache(maxsize=None)
def _z2_on_c() -> LinearGAction:
    group = _cyclic_group(2, labels=["e", "s"])
    one = CyclotomicNumber.one(2)
    return _linear_model(group, 1, 2, [[[one]], [[-one]]])


@lru_cache(maxsize=None)
def _z3_on_c() -> LinearGAction:
    group = _cyclic_group(3, labels=["e", "g", "g2"])
    z = CyclotomicNumber.zeta(3)
    one = CyclotomicNumber.one(3)
    return _linear_model(group, 1, 3, [[[one]], [[z]], [[z * z]]])


@lru_cache(maxsize=None)
def _z3_on_c2() -> LinearGAction:
    group = _cyclic_group(3, labels=["e", "g", "g2"])
    z = CyclotomicNumber.zeta(3)
    zero = CyclotomicNumber.zero(3)
    one = CyclotomicNumber.one(3)
    z2 = z * z
    return _linear_model(
        group,
        2,
        3,
        [
            [[one, zero], [zero, one]],
            [[z, zero], [zero, z2]],
            [[z2, zero], [zero, z]],
        ],
    )


@lru_cache(maxsize=None)
def _z2_swap() -> FiniteGSet:
    group = _cyclic_group(2, labels=["e", "s"])
    return FiniteGSet(group, [(0, 1), (1, 0)])


@lru_cache(maxsize=None)
def _s3_group():
    return group_from_permutations([(1, 0, 2), (1, 2, 0)])


@lru_cache(maxsize=None)
def _s3_on_3() -> FiniteGSet:
    group, perms = _s3_group()
    return FiniteGSet(group, perms)


@lru_cache(maxsize=None)
def _s3_point() -> FiniteGSet:
    group, _perms = _s3_group()
    return FiniteGSet.trivial_point(group)


_BUILDERS = {
    "z2-on-c": _z2_on_c,
    "z3-on-c": _z3_on_c,
    "z3-on-c2": _z3_on_c2,
    "z2-swap": _z2_swap,
    "s3-on-3": _s3_on_3,
    "s3-point": _s3_point,
}

_DESCRIPTIONS = {
    "z2-on-c": "Z/2 acting on C^1 by negation (linear, half-integer exponents)",
    "z3-on-c": "Z/3 acting on C^1 by a primitive cube root of unity (linear)",
    "z3-on-c2": "Z/3 acting on C^2 by diag(z3, z3^2) (linear)",
    "z2-swap": "Z/2 swapping two points (finite)",
    "s3-on-3": "S_3 permuting three points naturally (finite)",
    "s3-point": "S_3 acting trivially on one point (finite)",
}


def bundled_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def bundled_model(name: str):
    builder = _BUILDERS.get(name)
    if builder is None:
        raise UsageError(
            f"unknown bundled model {name!r}; available: {', '.join(bundled_names())}"
        )
    return builder()


def bundled_description(name: str) -> str:
    return _DESCRIPTIONS.get(name, "")


def bundled_document(name: str) -> dict:
    """The bundled model rendered as an input document."""
    from .documents import document_from_model

    return document_from_model(bundled_model(name), name=name)
