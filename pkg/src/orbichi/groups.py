"""Finite groups as explicit multiplication tables.

Elements are integers 0..n-1; the table maps (i, j) to the index of the
product.  Everything downstream (conjugacy classes, centralizers, wreath
products, commuting tuples) is computed by honest brute force on the table.
Deterministic conventions throughout: conjugacy classes are listed by their
smallest member, which also serves as the canonical representative.

Associativity is validated with Light's test against a generating set, which
is exact: once the table is closed and every row/column is a permutation,
associativity on generators propagates to all products.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations as _permutations, product as _product
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import GroupValidationError, SizeCapExceeded, UsageError

DEFAULT_SIZE_CAP = 20000
_SIZE_CAP_ENV = "ORBICHI_SIZE_CAP"


def size_cap(override: Optional[int] = None) -> int:
    """The effective group-size cap: explicit override, else env, else default."""
    if override is not None:
        return override
    env = os.environ.get(_SIZE_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{_SIZE_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_SIZE_CAP


def _check_cap(order: int, cap: Optional[int]):
    limit = size_cap(cap)
    if order > limit:
        raise SizeCapExceeded(
            f"group of order {order} exceeds the size cap {limit}"
        )


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        identity: Optional[int] = None,
        labels: Optional[Sequence[str]] = None,
        generators: Optional[Sequence[int]] = None,
        validate: bool = True,
    ):
        self.order = len(table)
        if self.order == 0:
            raise GroupValidationError("shape", "a group needs at least one element")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for i, row in enumerate(self.table):
            if len(row) != self.order:
                raise GroupValidationError("shape", f"row {i} has length {len(row)}, expected {self.order}")
            for j, v in enumerate(row):
                if not 0 <= v < self.order:
                    raise GroupValidationError("shape", f"entry ({i},{j}) = {v} is out of range")
        self.identity = self._resolve_identity(identity)
        if validate:
            self._check_latin()
        self.inverses = self._build_inverses()
        if generators is not None:
            self.generators = tuple(generators)
        else:
            self.generators = _greedy_generators(self.table, self.identity)
        if validate:
            self._check_associativity()
        if labels is not None:
            if len(labels) != self.order:
                raise GroupValidationError("shape", "label count does not match group order")
            self.labels: Optional[tuple[str, ...]] = tuple(str(x) for x in labels)
        else:
            self.labels = None
        self._classes: Optional[tuple[tuple[int, ...], ...]] = None
        self._class_rep: Optional[tuple[int, ...]] = None
        self._orders: dict[int, int] = {}
        self.caches: dict = {}

    # -- validation ------------------------------------------------------------

    def _resolve_identity(self, identity: Optional[int]) -> int:
        n = self.order
        straight = tuple(range(n))
        if identity is not None:
            if not 0 <= identity < n:
                raise GroupValidationError("identity", f"identity index {identity} out of range")
            if self.table[identity] != straight or tuple(row[identity] for row in self.table) != straight:
                raise GroupValidationError("identity", f"element {identity} is not a two-sided identity")
            return identity
        for e in range(n):
            if self.table[e] == straight and all(self.table[g][e] == g for g in range(n)):
                return e
        raise GroupValidationError("identity", "table has no two-sided identity element")

    def _check_latin(self):
        full = set(range(self.order))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise GroupValidationError("latin", f"row {i} is not a permutation of the elements")
        for j in range(self.order):
            if {row[j] for row in self.table} != full:
                raise GroupValidationError("latin", f"column {j} is not a permutation of the elements")

    def _build_inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for g, row in enumerate(self.table):
            try:
                h = row.index(self.identity)
            except ValueError:
                raise GroupValidationError("inverses", f"element {g} has no right inverse")
            if self.table[h][g] != self.identity:
                raise GroupValidationError("inverses", f"element {g} has no two-sided inverse")
            inv[g] = h
        return tuple(inv)

    def _check_associativity(self):
        table = self.table
        for a in self.generators:
            row_a = table[a]
            for x in range(self.order):
                row_x = table[x]
                if table[row_x[a]] != tuple(row_x[v] for v in row_a):
                    for y in range(self.order):
                        if table[row_x[a]][y] != row_x[row_a[y]]:
                            raise GroupValidationError(
                                "associativity",
                                f"associativity fails at ({x}, {a}, {y})",
                            )

    # -- basic queries ------------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, g: int, h: int) -> int:
        """h^-1 g h."""
        return self.table[self.table[self.inverses[h]][g]][h]

    def element_order(self, g: int) -> int:
        cached = self._orders.get(g)
        if cached is not None:
            return cached
        n = 1
        x = g
        while x != self.identity:
            x = self.table[x][g]
            n += 1
        self._orders[g] = n
        return n

    def power(self, g: int, t: int) -> int:
        if t < 0:
            return self.power(self.inverses[g], -t)
        x = self.identity
        for _ in range(t):
            x = self.table[x][g]
        return x

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def elements(self) -> range:
        return range(self.order)

    # -- conjugacy machinery --------------------------------------------------------

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        if self._classes is None:
            self._classes = conjugacy_classes_of(self, range(self.order))
        return self._classes

    def class_representative(self, g: int) -> int:
        """The smallest element conjugate to g."""
        if self._class_rep is None:
            rep = [0] * self.order
            for cls in self.conjugacy_classes():
                for x in cls:
                    rep[x] = cls[0]
            self._class_rep = tuple(rep)
        return self._class_rep[g]

    def centralizer(self, g: int) -> "Subgroup":
        return Subgroup(self, centralizer_members(self, range(self.order), g))


def _close_under(table: Sequence[Sequence[int]], identity: int, gens: Iterable[int]) -> set[int]:
    members = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for a in gens:
                y = table[x][a]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return members


def _greedy_generators(table: Sequence[Sequence[int]], identity: int) -> tuple[int, ...]:
    n = len(table)
    gens: list[int] = []
    covered = _close_under(table, identity, gens)
    g = 0
    while len(covered) < n:
        while g in covered:
            g += 1
        gens.append(g)
        covered = _close_under(table, identity, gens)
    return tuple(gens)


def group_from_table(
    table: Sequence[Sequence[int]],
    identity: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """Validate a raw multiplication table into a FiniteGroup."""
    return FiniteGroup(table, identity=identity, labels=labels)


class Subgroup:
    """A subgroup of a parent group, stored as a sorted member tuple."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int], _checked: bool = True):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self.member_set = frozenset(self.members)
        if not _checked:
            self._validate()
        self._classes: Optional[tuple[tuple[int, ...], ...]] = None

    def _validate(self):
        t = self.parent.table
        if self.parent.identity not in self.member_set:
            raise UsageError("subgroup does not contain the identity")
        for a in self.members:
            if self.parent.inverses[a] not in self.member_set:
                raise UsageError(f"subgroup is not closed under inverses at {a}")
            for b in self.members:
                if t[a][b] not in self.member_set:
                    raise UsageError(f"subgroup is not closed under products at ({a},{b})")

    @classmethod
    def whole(cls, parent: FiniteGroup) -> "Subgroup":
        return cls(parent, range(parent.order))

    @classmethod
    def generated(cls, parent: FiniteGroup, gens: Iterable[int]) -> "Subgroup":
        return cls(parent, _close_under(parent.table, parent.identity, gens))

    @classmethod
    def from_members(cls, parent: FiniteGroup, members: Iterable[int]) -> "Subgroup":
        return cls(parent, members, _checked=False)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        if self._classes is None:
            self._classes = conjugacy_classes_of(self.parent, self.members)
        return self._classes

    def centralizer_members(self, g: int) -> tuple[int, ...]:
        return centralizer_members(self.parent, self.members, g)

    def element_order(self, g: int) -> int:
        return self.parent.element_order(g)


def conjugacy_classes_of(group: FiniteGroup, members: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes of a subgroup, conjugating only by its own members.

    Classes are ordered (and internally sorted) by smallest element.
    """
    table = group.table
    inv = group.inverses
    member_list = sorted(set(members))
    classes = []
    seen: set[int] = set()
    for g in member_list:
        if g in seen:
            continue
        orbit = {table[table[inv[h]][g]][h] for h in member_list}
        cls = tuple(sorted(orbit))
        classes.append(cls)
        seen.update(orbit)
    return tuple(classes)


def centralizer_members(group: FiniteGroup, members: Iterable[int], g: int) -> tuple[int, ...]:
    table = group.table
    row_g = table[g]
    return tuple(h for h in sorted(set(members)) if table[h][g] == row_g[h])


def centralizer(group: FiniteGroup, g: int) -> Subgroup:
    """{h : hg = gh} as a Subgroup of ``group``."""
    return group.centralizer(g)


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup.generated(group, gens)


def element_order(group: FiniteGroup, g: int) -> int:
    return group.element_order(g)


def commuting_tuples(group: Union[FiniteGroup, Subgroup], k: int) -> Iterator[tuple[int, ...]]:
    """Lazily enumerate (k+1)-tuples of pairwise commuting elements.

    Tuples appear in lexicographic order of element indices.
    """
    if k < 0:
        raise UsageError("tuple order k must be >= 0")
    if isinstance(group, Subgroup):
        table = group.parent.table
        members: Sequence[int] = group.members
    else:
        table = group.table
        members = range(group.order)

    def extend(prefix: tuple[int, ...], candidates: Sequence[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k + 1:
            yield prefix
            return
        for g in candidates:
            row_g = table[g]
            narrowed = [h for h in candidates if row_g[h] == table[h][g]]
            yield from extend(prefix + (g,), narrowed)

    return extend((), list(members))


# ---------------------------------------------------------------------------
# permutation groups
# ---------------------------------------------------------------------------

def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p . q)(i) = p(q(i)); permutations as 0-based image tuples."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_cycles(p: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, each starting at its smallest point."""
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def group_from_permutations(
    generators: Sequence[Sequence[int]],
    degree: Optional[int] = None,
    cap: Optional[int] = None,
):
    """Close a set of permutations into a FiniteGroup.

    Permutations are 0-based image tuples of a common degree.  Returns the
    group together with the permutation of each element (indexed like the
    group), which doubles as a faithful finite G-set when the generators are
    nontrivial.  Elements are sorted lexicographically, so the identity is
    element 0.
    """
    if degree is None:
        if not generators:
            raise UsageError("degree is required when no generators are given")
        degree = len(generators[0])
    gens = []
    for i, g in enumerate(generators):
        p = tuple(int(x) for x in g)
        if sorted(p) != list(range(degree)):
            raise UsageError(f"generator {i} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    identity = tuple(range(degree))
    members = {identity}
    frontier = [identity]
    limit = size_cap(cap)
    while frontier:
        nxt = []
        for x in frontier:
            for a in gens:
                y = perm_compose(x, a)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
                    if len(members) > limit:
                        raise SizeCapExceeded(
                            f"permutation closure exceeds the size cap {limit}"
                        )
        frontier = nxt
    elements = sorted(members)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[perm_compose(a, b)] for b in elements] for a in elements]
    gen_indices = tuple(sorted({index[g] for g in gens})) or None
    group = FiniteGroup(table, identity=index[identity], generators=gen_indices)
    return group, tuple(elements)


# ---------------------------------------------------------------------------
# wreath products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WreathElement:
    """An element (g_1..g_n ; s) of G wr S_n.

    ``components`` hold indices into the base group; ``permutation`` is the
    0-based image tuple of s.  Multiplication follows
    (g, s)(h, t) = (g . s(h), s t) with s(h)_i = h_{s^-1(i)}.
    """

    components: tuple[int, ...]
    permutation: tuple[int, ...]


class WreathGroup(FiniteGroup):
    """G wr S_n with bidirectional index <-> WreathElement maps."""

    def __init__(self, base: FiniteGroup, copies: int, cap: Optional[int] = None):
        order = base.order ** copies * factorial(copies)
        _check_cap(order, cap)
        self.base = base
        self.copies = copies
        vectors = list(_product(range(base.order), repeat=copies))
        perms = list(_permutations(range(copies)))
        self._vectors = vectors
        self._perms = perms
        vec_index = {v: i for i, v in enumerate(vectors)}
        nfact = len(perms)
        perm_index = {p: i for i, p in enumerate(perms)}
        table = _wreath_table(base.table, vectors, perms, vec_index, perm_index)
        self._vec_index = vec_index
        self._perm_index = perm_index
        e_vec = (base.identity,) * copies
        identity = vec_index[e_vec] * nfact if copies else 0
        generators = self._wreath_generators(e_vec, nfact)
        super().__init__(table, identity=identity, generators=generators)

    def _wreath_generators(self, e_vec: tuple[int, ...], nfact: int) -> tuple[int, ...]:
        gens = []
        n = self.copies
        if n >= 1:
            for a in self.base.generators:
                vec = (a,) + e_vec[1:]
                gens.append(self._vec_index[vec] * nfact)
        if n >= 2:
            swap = (1, 0) + tuple(range(2, n))
            gens.append(self._vec_index[e_vec] * nfact + self._perm_index[swap])
            cycle = tuple(range(1, n)) + (0,)
            if cycle != swap:
                gens.append(self._vec_index[e_vec] * nfact + self._perm_index[cycle])
        return tuple(dict.fromkeys(gens))

    def element(self, index: int) -> WreathElement:
        nfact = len(self._perms)
        return WreathElement(
            components=self._vectors[index // nfact],
            permutation=self._perms[index % nfact],
        )

    def index_of(self, w: WreathElement) -> int:
        return (
            self._vec_index[tuple(w.components)] * len(self._perms)
            + self._perm_index[tuple(w.permutation)]
        )

    def describe(self, index: int) -> str:
        w = self.element(index)
        comps = ",".join(self.base.label(g) for g in w.components)
        return f"({comps};{''.join(map(str, w.permutation))})"


def _wreath_table(base_table, vectors, perms, vec_index, perm_index):
    nfact = len(perms)
    n = len(perms[0]) if perms and perms[0] else 0
    rng = range(n)
    perm_inv = [perm_inverse(p) for p in perms]
    # composed-permutation index rows: comp[i][j] = index of perms[i] . perms[j]
    comp_rows = [
        [perm_index[perm_compose(p, q)] for q in perms] for p in perms
    ]
    rows = []
    for v1 in vectors:
        for i1, p1 in enumerate(perms):
            inv1 = perm_inv[i1]
            comp = comp_rows[i1]
            row = []
            for v2 in vectors:
                moved = tuple(v2[inv1[i]] for i in rng)
                base = vec_index[tuple(base_table[v1[i]][moved[i]] for i in rng)] * nfact
                row.extend(base + comp[j2] for j2 in range(nfact))
            rows.append(row)
    return rows


def wreath_product(base: FiniteGroup, copies: int, cap: Optional[int] = None) -> WreathGroup:
    """The wreath product G wr S_n as an explicit table group."""
    _check_cap(base.order ** copies * factorial(copies), cap)
    key = ("wreath_product", copies)
    cached = base.caches.get(key)
    if cached is None:
        cached = WreathGroup(base, copies, cap=cap)
        base.caches[key] = cached
    return cached


@dataclass(frozen=True)
class WreathType:
    """Multiplicities m_r(c): r-cycles whose cycle-product lies in class c.

    Classes are identified by their canonical (smallest) representative in the
    base group.
    """

    entries: tuple[tuple[tuple[int, int], int], ...]  # ((cycle length, class rep), mult)

    @classmethod
    def from_dict(cls, data: dict[tuple[int, int], int]) -> "WreathType":
        return cls(tuple(sorted((k, m) for k, m in data.items() if m)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def total(self) -> int:
        return sum(r * m for (r, _c), m in self.entries)

    def render(self, base: Optional[FiniteGroup] = None) -> str:
        if not self.entries:
            return "(empty)"
        parts = []
        for (r, c), m in self.entries:
            name = base.label(c) if base is not None else str(c)
            parts.append(f"{r}[{name}]^{m}")
        return " ".join(parts)


def cycle_product(base: FiniteGroup, w: WreathElement, cycle: Sequence[int]) -> int:
    """g_{i_r} ... g_{i_1} for a cycle (i_1, ..., i_r) of the permutation."""
    acc = w.components[cycle[0]]
    for idx in cycle[1:]:
        acc = base.table[w.components[idx]][acc]
    return acc


def wreath_type(base: FiniteGroup, copies: int, w: WreathElement) -> WreathType:
    """The type of a wreath element: tally cycle-products by conjugacy class."""
    if len(w.components) != copies or len(w.permutation) != copies:
        raise UsageError("wreath element does not match the number of copies")
    tally: dict[tuple[int, int], int] = {}
    for cyc in perm_cycles(w.permutation):
        rep = base.class_representative(cycle_product(base, w, cyc))
        key = (len(cyc), rep)
        tally[key] = tally.get(key, 0) + 1
    return WreathType.from_dict(tally)


def type_class_count(base: FiniteGroup, copies: int) -> int:
    """Number of realizable types, i.e. conjugacy classes of G wr S_n.

    Counts class-colored partitions of n by dynamic programming; every type
    with total weight n is realized by some element.
    """
    n = copies
    num_classes = len(base.conjugacy_classes())
    ways = [1] + [0] * n
    for r in range(1, n + 1):
        for _ in range(num_classes):
            for v in range(r, n + 1):
                ways[v] += ways[v - r]
    return ways[n]


def centralizer_order_from_type(base: FiniteGroup, wtype: WreathType) -> int:
    """Predicted centralizer order: prod over (r,c) of r^m * m! * |C_G(c)|^m."""
    out = 1
    for (r, rep), m in wtype.entries:
        c_order = len(centralizer_members(base, range(base.order), rep))
        out *= (r ** m) * factorial(m) * (c_order ** m)
    return out


# ---------------------------------------------------------------------------
# central extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralExtension:
    """G extended by a central element a with a^r = c and <a> meet G = <c>.

    Realized as (G x Z/(r * ord(c))) / <(c^-1, r)>; elements are canonically
    the pairs (g, j) with 0 <= j < r, so the order is |G| * r.
    """

    group: FiniteGroup
    embedding: tuple[int, ...]  # G index -> extension index
    a_index: int
    pairs: tuple[tuple[int, int], ...]  # extension index -> (g, j)


def central_extension(base: FiniteGroup, c: int, r: int, cap: Optional[int] = None) -> CentralExtension:
    if r < 1:
        raise UsageError("extension degree r must be >= 1")
    row_c = base.table[c]
    if any(base.table[h][c] != row_c[h] for h in range(base.order)):
        raise UsageError(f"element {c} is not central, cannot build the extension")
    _check_cap(base.order * r, cap)
    n = base.order

    def normalize(g: int, j: int) -> tuple[int, int]:
        while j >= r:
            j -= r
            g = base.table[g][c]
        return g, j

    pairs = [(g, j) for g in range(n) for j in range(r)]
    index = {p: i for i, p in enumerate(pairs)}
    table = []
    for (g, j) in pairs:
        row = []
        for (h, l) in pairs:
            row.append(index[normalize(base.table[g][h], j + l)])
        table.append(row)
    labels = None
    if base.labels is not None:
        labels = [
            base.labels[g] if j == 0 else f"{base.labels[g]}*a^{j}" if j > 1 else f"{base.labels[g]}*a"
            for (g, j) in pairs
        ]
    embedding = tuple(index[(g, 0)] for g in range(n))
    a_index = index[normalize(base.identity, 1)]
    gens = tuple(dict.fromkeys(tuple(embedding[g] for g in base.generators) + (a_index,)))
    group = FiniteGroup(table, identity=index[(base.identity, 0)], labels=labels, generators=gens)
    return CentralExtension(group=group, embedding=embedding, a_index=a_index, pairs=tuple(pairs))
