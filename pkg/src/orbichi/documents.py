"""Input documents: the JSON schema for groups and actions.

A document is one JSON object with a ``group`` and an ``action``:

    {
      "name": "optional string",
      "group": {"order": 2, "table": [[0,1],[1,0]], "labels": ["e","s"]}
             | {"permutation_generators": [[2,1]], "degree": 2},
      "action": {"kind": "finite_set", "points": 2, "maps": [[1,2],[2,1]]}
              | {"kind": "finite_set", "natural": true}
              | {"kind": "linear", "dimension": 1, "root_order": 2,
                 "matrices": [[[[0,1,1]]], [[[1,1,1]]]]}
    }

Permutations in documents are 1-based image lists.  A linear matrix entry is
a list of terms [k, num, den], read as (num/den) * zeta_N^k summed over the
terms; the empty list is zero.  Rationals never appear as floats anywhere.

With ``"generators_only": true`` the ``maps`` / ``matrices`` field is an
object keyed by element index covering a generating set; the rest is filled
in through the multiplication table and then validated.  The ``natural``
finite-set action is available for groups given by permutation generators.

Validation reports the first failure with its path, e.g.
``action.matrices[1][0][0]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError, OrbichiError
from .exactnum import CycloMatrix, CyclotomicNumber
from .gmodel import FiniteGSet, LinearGAction
from .groups import FiniteGroup, group_from_permutations, perm_inverse

Model = Union[FiniteGSet, LinearGAction]


@dataclass
class LoadedDocument:
    name: Optional[str]
    group: FiniteGroup
    model: Model
    natural_perms: Optional[tuple[tuple[int, ...], ...]] = None


def _expect(condition: bool, path: str, message: str):
    if not condition:
        raise InputError(path, message)


def _get(obj: dict, key: str, path: str, required: bool = True):
    if key not in obj:
        if required:
            raise InputError(path, f"missing required field {key!r}")
        return None
    return obj[key]


def _expect_int(value, path: str, minimum: Optional[int] = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InputError(path, f"expected an integer >= {minimum}, got {value}")
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise InputError(path, f"expected a list, got {type(value).__name__}")
    return value


def load_document(doc, size_cap: Optional[int] = None) -> LoadedDocument:
    """Validate a parsed JSON document into model objects.

    Raises InputError with the path of the first offending value; group and
    action axioms are checked after the structural pass.
    """
    if not isinstance(doc, dict):
        raise InputError("", "document must be a JSON object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("name", "name must be a string")
    group_spec = _get(doc, "group", "")
    if not isinstance(group_spec, dict):
        raise InputError("group", "group must be an object")
    group, natural_perms = _load_group(group_spec, size_cap)
    action_spec = _get(doc, "action", "")
    if not isinstance(action_spec, dict):
        raise InputError("action", "action must be an object")
    model = _load_action(action_spec, group, natural_perms)
    return LoadedDocument(name=name, group=group, model=model, natural_perms=natural_perms)


def load_document_text(text: str, size_cap: Optional[int] = None) -> LoadedDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("", f"invalid JSON: {exc}") from exc
    return load_document(doc, size_cap=size_cap)


def _load_group(spec: dict, cap: Optional[int]):
    has_table = "table" in spec or "order" in spec
    has_perms = "permutation_generators" in spec
    if has_table and has_perms:
        raise InputError("group", "give either a table or permutation generators, not both")
    if has_perms:
        degree = _expect_int(_get(spec, "degree", "group"), "group.degree", minimum=1)
        gens_raw = _expect_list(spec["permutation_generators"], "group.permutation_generators")
        gens = []
        for i, g in enumerate(gens_raw):
            path = f"group.permutation_generators[{i}]"
            g = _expect_list(g, path)
            _expect(len(g) == degree, path, f"permutation must have length {degree}")
            images = []
            for j, v in enumerate(g):
                v = _expect_int(v, f"{path}[{j}]", minimum=1)
                _expect(v <= degree, f"{path}[{j}]", f"image {v} exceeds the degree {degree}")
                images.append(v - 1)
            _expect(sorted(images) == list(range(degree)), path, "not a permutation")
            gens.append(tuple(images))
        try:
            group, perms = group_from_permutations(gens, degree=degree, cap=cap)
        except OrbichiError as exc:
            raise InputError("group.permutation_generators", str(exc)) from exc
        return group, perms
    if not has_table:
        raise InputError("group", "group needs either a table or permutation generators")
    order = _expect_int(_get(spec, "order", "group"), "group.order", minimum=1)
    table_raw = _expect_list(_get(spec, "table", "group"), "group.table")
    _expect(len(table_raw) == order, "group.table", f"expected {order} rows")
    table = []
    for i, row in enumerate(table_raw):
        row = _expect_list(row, f"group.table[{i}]")
        _expect(len(row) == order, f"group.table[{i}]", f"expected {order} entries")
        out = []
        for j, v in enumerate(row):
            v = _expect_int(v, f"group.table[{i}][{j}]", minimum=0)
            _expect(v < order, f"group.table[{i}][{j}]", f"index {v} out of range")
            out.append(v)
        table.append(out)
    labels = spec.get("labels")
    if labels is not None:
        labels = _expect_list(labels, "group.labels")
        _expect(len(labels) == order, "group.labels", f"expected {order} labels")
        for i, lab in enumerate(labels):
            _expect(isinstance(lab, str), f"group.labels[{i}]", "labels must be strings")
    identity = spec.get("identity")
    if identity is not None:
        identity = _expect_int(identity, "group.identity", minimum=0)
    try:
        group = FiniteGroup(table, identity=identity, labels=labels)
    except OrbichiError as exc:
        raise InputError("group.table", str(exc)) from exc
    return group, None


def _element_keyed(raw, path: str, order: int, generators_only: bool):
    """Yield (element index, value, value path) from a list or an indexed object."""
    if generators_only:
        if not isinstance(raw, dict):
            raise InputError(path, "generators_only data must be an object keyed by element index")
        items = []
        for key, value in raw.items():
            try:
                g = int(key)
            except (TypeError, ValueError):
                raise InputError(f"{path}.{key}", "keys must be element indices")
            _expect(0 <= g < order, f"{path}.{key}", f"element index {g} out of range")
            items.append((g, value, f"{path}.{key}"))
        items.sort()
        return items
    raw = _expect_list(raw, path)
    _expect(len(raw) == order, path, f"expected one entry per group element ({order})")
    return [(g, raw[g], f"{path}[{g}]") for g in range(order)]


def _load_action(spec: dict, group: FiniteGroup, natural_perms):
    kind = _get(spec, "kind", "action")
    if kind == "finite_set":
        return _load_finite_action(spec, group, natural_perms)
    if kind == "linear":
        return _load_linear_action(spec, group)
    raise InputError("action.kind", f"unknown action kind {kind!r}")


def _load_finite_action(spec: dict, group: FiniteGroup, natural_perms):
    if spec.get("natural"):
        if natural_perms is None:
            raise InputError(
                "action.natural",
                "the natural action is only available for permutation-generator groups",
            )
        return FiniteGSet(group, natural_perms)
    points = _expect_int(_get(spec, "points", "action"), "action.points", minimum=1)
    generators_only = bool(spec.get("generators_only", False))
    raw = _get(spec, "maps", "action")
    entries = _element_keyed(raw, "action.maps", group.order, generators_only)
    maps: dict[int, tuple[int, ...]] = {group.identity: tuple(range(points))}
    for g, value, path in entries:
        value = _expect_list(value, path)
        _expect(len(value) == points, path, f"expected a permutation of {points} points")
        images = []
        for j, v in enumerate(value):
            v = _expect_int(v, f"{path}[{j}]", minimum=1)
            _expect(v <= points, f"{path}[{j}]", f"image {v} exceeds the point count {points}")
            images.append(v - 1)
        _expect(sorted(images) == list(range(points)), path, "not a permutation")
        maps[g] = tuple(images)
    if generators_only:
        _fill_by_table(group, maps, "action.maps", compose=lambda a, b: tuple(a[x] for x in b))
    missing = [g for g in range(group.order) if g not in maps]
    if missing:
        raise InputError("action.maps", f"no map given for element {missing[0]}")
    try:
        return FiniteGSet(group, [maps[g] for g in range(group.order)])
    except OrbichiError as exc:
        raise InputError("action.maps", str(exc)) from exc


def _load_linear_action(spec: dict, group: FiniteGroup):
    dimension = _expect_int(_get(spec, "dimension", "action"), "action.dimension", minimum=0)
    root_order = _expect_int(_get(spec, "root_order", "action"), "action.root_order", minimum=1)
    generators_only = bool(spec.get("generators_only", False))
    raw = _get(spec, "matrices", "action")
    entries = _element_keyed(raw, "action.matrices", group.order, generators_only)
    matrices: dict[int, CycloMatrix] = {
        group.identity: CycloMatrix.identity(dimension, root_order)
    }
    for g, value, path in entries:
        matrices[g] = _parse_matrix(value, path, dimension, root_order)
    if generators_only:
        _fill_by_table(group, matrices, "action.matrices", compose=lambda a, b: a.matmul(b))
    missing = [g for g in range(group.order) if g not in matrices]
    if missing:
        raise InputError("action.matrices", f"no matrix given for element {missing[0]}")
    try:
        return LinearGAction(group, dimension, root_order, [matrices[g] for g in range(group.order)])
    except OrbichiError as exc:
        raise InputError("action.matrices", str(exc)) from exc


def _fill_by_table(group: FiniteGroup, known: dict, path: str, compose):
    """Extend generator data to the whole group through the table."""
    supplied = sorted(known)
    frontier = supplied
    while frontier:
        nxt = []
        for g in frontier:
            for a in supplied:
                ga = group.table[g][a]
                if ga not in known:
                    known[ga] = compose(known[g], known[a])
                    nxt.append(ga)
        frontier = nxt
    if len(known) != group.order:
        raise InputError(path, "the supplied elements do not generate the whole group")


def _parse_matrix(value, path: str, dimension: int, root_order: int) -> CycloMatrix:
    rows = _expect_list(value, path)
    _expect(len(rows) == dimension, path, f"expected {dimension} rows")
    out_rows = []
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{path}[{i}]")
        _expect(len(row) == dimension, f"{path}[{i}]", f"expected {dimension} entries")
        out_row = []
        for j, entry in enumerate(row):
            out_row.append(_parse_entry(entry, f"{path}[{i}][{j}]", root_order))
        out_rows.append(out_row)
    if dimension == 0:
        return CycloMatrix(root_order, 0, 0, ())
    return CycloMatrix.from_rows(root_order, out_rows)


def _parse_entry(entry, path: str, root_order: int) -> CyclotomicNumber:
    terms = _expect_list(entry, path)
    acc = CyclotomicNumber.zero(root_order)
    for t, term in enumerate(terms):
        term_path = f"{path}[{t}]"
        term = _expect_list(term, term_path)
        _expect(len(term) == 3, term_path, "a term is [zeta_power, numerator, denominator]")
        k = _expect_int(term[0], f"{term_path}[0]")
        num = _expect_int(term[1], f"{term_path}[1]")
        den = _expect_int(term[2], f"{term_path}[2]", minimum=1)
        acc = acc + CyclotomicNumber.zeta(root_order, k) * Fraction(num, den)
    return acc


# ---------------------------------------------------------------------------
# serialization back to documents
# ---------------------------------------------------------------------------

def _entry_terms(value: CyclotomicNumber) -> list[list[int]]:
    return [
        [j, c.numerator, c.denominator]
        for j, c in enumerate(value.coeffs)
        if c != 0
    ]


def document_from_model(model: Model, name: Optional[str] = None) -> dict:
    """Render a model as a schema-valid input document."""
    group = model.group
    group_spec: dict = {"order": group.order, "table": [list(row) for row in group.table]}
    if group.labels is not None:
        group_spec["labels"] = list(group.labels)
    group_spec["identity"] = group.identity
    if isinstance(model, FiniteGSet):
        action: dict = {
            "kind": "finite_set",
            "points": model.size,
            "maps": [[x + 1 for x in perm] for perm in model.action],
        }
    else:
        action = {
            "kind": "linear",
            "dimension": model.dimension,
            "root_order": model.root_order,
            "matrices": [
                [
                    [_entry_terms(m.entry(i, j)) for j in range(model.dimension)]
                    for i in range(model.dimension)
                ]
                for m in model.matrices
            ],
        }
    doc: dict = {"group": group_spec, "action": action}
    if name is not None:
        doc["name"] = name
    return doc
