"""The two action backends: finite G-sets and linear actions on C^d.

A finite G-set supports the integer-valued invariants (fixed points are
counted, quotients are orbit counts).  A linear action stores one exact
matrix over Q(zeta_N) per group element and supports the L-valued invariants:
fixed loci are kernels, ages come from eigenvalue multiplicities, and the
class of a quotient of a linear subspace C^w by a finite group of complex
linear maps is L^w (its Hodge-Deligne image; invariant cohomology of C^w is
the single top class).  The package therefore computes the Euler and
Hodge-Deligne images of the motivic invariants, never symbolic variety
classes.

In the linear backend every fixed locus is a linear subspace, hence
connected, so component bookkeeping is trivial by construction: each
conjugacy class contributes a single term.

Recursion states are lightweight views (a subgroup of the root group acting
on a subspace or point subset); restriction closes over views, so the
order-k recursion never leaves this module's types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from .errors import ConsistencyError, ModelValidationError, SizeCapExceeded, UsageError
from .exactnum import (
    CycloMatrix,
    CyclotomicNumber,
    Vector,
    kernel_basis,
    rref_rows,
    solve_in_span,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    WreathGroup,
    centralizer_members,
    perm_inverse,
    size_cap,
    wreath_product,
)
from .motivic import LPolynomial
from itertools import product as _product


# ---------------------------------------------------------------------------
# finite G-sets
# ---------------------------------------------------------------------------

class FiniteGSet:
    """A finite set with a G-action, one permutation per group element."""

    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]], validate: bool = True):
        self.group = group
        self.size = len(action[group.identity]) if action else 0
        self.action = tuple(tuple(int(x) for x in p) for p in action)
        self.caches: dict = {}
        if len(self.action) != group.order:
            raise ModelValidationError(
                f"action has {len(self.action)} maps, expected one per group element ({group.order})"
            )
        if validate:
            self._validate()

    backend = "finite"

    def _validate(self):
        full = list(range(self.size))
        for g, p in enumerate(self.action):
            if sorted(p) != full:
                raise ModelValidationError(f"action of element {g} is not a permutation of the points")
        if self.action[self.group.identity] != tuple(full):
            raise ModelValidationError("the identity element does not act as the identity map")
        table = self.group.table
        act = self.action
        for a in self.group.generators:
            pa = act[a]
            for g in range(self.group.order):
                pg = act[g]
                if act[table[g][a]] != tuple(pg[pa[x]] for x in range(self.size)):
                    raise ModelValidationError(
                        f"action is not a homomorphism: acting by product of {g} and {a} "
                        "differs from acting in sequence"
                    )

    @classmethod
    def trivial_point(cls, group: FiniteGroup) -> "FiniteGSet":
        """The one-point set with the trivial action."""
        return cls(group, [(0,)] * group.order, validate=False)

    def fixed_points(self, g: int) -> tuple[int, ...]:
        p = self.action[g]
        return tuple(x for x in range(self.size) if p[x] == x)


@dataclass(frozen=True)
class GSetView:
    """A subgroup of the root group acting on an invariant point subset."""

    root: FiniteGSet
    members: tuple[int, ...]
    points: tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.root.group

    def key(self):
        return (self.members, self.points)

    def fixed_points(self, g: int) -> tuple[int, ...]:
        p = self.root.action[g]
        return tuple(x for x in self.points if p[x] == x)

    def restrict(self, g: int) -> "GSetView":
        cz = centralizer_members(self.root.group, self.members, g)
        return GSetView(self.root, cz, self.fixed_points(g))

    def orbit_count(self) -> int:
        act = self.root.action
        point_set = set(self.points)
        seen: set[int] = set()
        count = 0
        for p in self.points:
            if p in seen:
                continue
            count += 1
            stack = [p]
            seen.add(p)
            while stack:
                x = stack.pop()
                for h in self.members:
                    y = act[h][x]
                    if y not in seen:
                        if y not in point_set:
                            raise ConsistencyError(
                                "acting subgroup does not preserve the point subset"
                            )
                        seen.add(y)
                        stack.append(y)
        return count

    def quotient_class(self) -> int:
        return self.orbit_count()


# ---------------------------------------------------------------------------
# linear actions
# ---------------------------------------------------------------------------

class LinearGAction:
    """An exact matrix action of a finite group on C^d over Q(zeta_N)."""

    def __init__(
        self,
        group: FiniteGroup,
        dimension: int,
        root_order: int,
        matrices: Sequence[CycloMatrix],
        validate: bool = True,
    ):
        self.group = group
        self.dimension = dimension
        self.root_order = root_order
        mats = []
        for m in matrices:
            if (m.rows, m.cols) != (dimension, dimension):
                raise ModelValidationError(
                    f"matrix shape {m.rows}x{m.cols} does not match dimension {dimension}"
                )
            mats.append(m.embed_order(root_order))
        self.matrices = tuple(mats)
        self.caches: dict = {}
        if len(self.matrices) != group.order:
            raise ModelValidationError(
                f"got {len(self.matrices)} matrices, expected one per group element ({group.order})"
            )
        if validate:
            self._validate()

    backend = "linear"

    def _validate(self):
        if not self.matrices[self.group.identity].is_identity():
            raise ModelValidationError("the identity element must map to the identity matrix")
        table = self.group.table
        for a in self.group.generators:
            ma = self.matrices[a]
            for g in range(self.group.order):
                if self.matrices[g].matmul(ma) != self.matrices[table[g][a]]:
                    raise ModelValidationError(
                        f"matrices are not a homomorphism at the product of {g} and {a}"
                    )

    @classmethod
    def from_generator_matrices(
        cls,
        group: FiniteGroup,
        gen_matrices: dict[int, CycloMatrix],
        dimension: int,
        root_order: int,
    ) -> "LinearGAction":
        """Extend matrices given on generators to the whole group by the table."""
        known: dict[int, CycloMatrix] = {
            group.identity: CycloMatrix.identity(dimension, root_order)
        }
        for g, m in gen_matrices.items():
            known[g] = m.embed_order(root_order)
        frontier = sorted(known)
        gen_items = sorted(gen_matrices.items())
        while frontier:
            nxt = []
            for g in frontier:
                for a, ma in gen_items:
                    ga = group.table[g][a]
                    if ga not in known:
                        known[ga] = known[g].matmul(ma.embed_order(root_order))
                        nxt.append(ga)
            frontier = nxt
        if len(known) != group.order:
            raise ModelValidationError(
                "the supplied matrix elements do not generate the whole group"
            )
        return cls(group, dimension, root_order, [known[g] for g in range(group.order)])


@dataclass(frozen=True)
class LinearView:
    """A subgroup acting on a subspace W of the root action space.

    ``basis`` is None for the full ambient space, otherwise a canonical
    reduced-echelon tuple of ambient row vectors spanning W.  Restricted
    matrices (one per needed element) are computed on demand by solving in
    the span and cached; a vector leaving the span aborts the run, because
    centralizer elements always preserve the fixed subspaces they are paired
    with.
    """

    root: LinearGAction
    members: tuple[int, ...]
    basis: Optional[tuple[Vector, ...]]
    _matrix_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def group(self) -> FiniteGroup:
        return self.root.group

    @property
    def dim(self) -> int:
        return self.root.dimension if self.basis is None else len(self.basis)

    def key(self):
        return (self.members, self.basis)

    def matrix(self, g: int) -> CycloMatrix:
        if self.basis is None:
            return self.root.matrices[g]
        cached = self._matrix_cache.get(g)
        if cached is not None:
            return cached
        order = self.root.root_order
        w = len(self.basis)
        columns = []
        for b in self.basis:
            image = self.root.matrices[g].apply(b)
            coords = solve_in_span(self.basis, image)
            if coords is None:
                raise ConsistencyError(
                    f"element {g} does not preserve the subspace it must act on"
                )
            columns.append(coords)
        entries = tuple(columns[j][i] for i in range(w) for j in range(w))
        mat = CycloMatrix(order, w, w, entries)
        self._matrix_cache[g] = mat
        return mat

    def age(self, g: int) -> Fraction:
        """Sum of the eigenvalue angles theta_j in [0,1) of the action on W.

        With r the order of g, the multiplicity of the eigenvalue
        zeta_r^j is (1/r) * sum_t trace(R(g^t)) zeta_r^(-jt); each must be a
        nonnegative integer and they must sum to dim W.
        """
        w = self.dim
        if w == 0:
            return Fraction(0)
        r = self.group.element_order(g)
        rg = self.matrix(g)
        m = lcm(self.root.root_order, r)
        traces = []
        power = CycloMatrix.identity(w, rg.order)
        for _ in range(r):
            traces.append(power.trace().embed_order(m))
            power = power.matmul(rg)
        stride = m // r
        zeta_pows = [CyclotomicNumber.zeta(m, e) for e in range(m)]
        total_mult = 0
        age = Fraction(0)
        for j in range(r):
            acc = CyclotomicNumber.zero(m)
            for t in range(r):
                acc = acc + traces[t] * zeta_pows[(-j * t * stride) % m]
            mult = (acc * Fraction(1, r)).as_integer()
            if mult is None or mult < 0:
                raise ConsistencyError(
                    f"eigenvalue multiplicity of element {g} is not a nonnegative integer; "
                    "the action data is inconsistent"
                )
            total_mult += mult
            age += mult * Fraction(j, r)
        if total_mult != w:
            raise ConsistencyError(
                f"eigenvalue multiplicities of element {g} sum to {total_mult}, expected {w}"
            )
        return age

    def fixed_subspace_basis(self, gens: Sequence[int]) -> tuple[Vector, ...]:
        """Canonical ambient basis of the joint fixed subspace of ``gens``."""
        order = self.root.root_order
        w = self.dim
        nontrivial = [g for g in gens if g != self.group.identity]
        if not nontrivial:
            kernel_vectors: Sequence[Vector] = tuple(
                tuple(
                    CyclotomicNumber.one(order) if i == j else CyclotomicNumber.zero(order)
                    for j in range(w)
                )
                for i in range(w)
            )
        else:
            ident = CycloMatrix.identity(w, order)
            stacked_rows = []
            for g in nontrivial:
                diff = self.matrix(g) - ident
                for i in range(w):
                    stacked_rows.append(diff.row(i))
            stacked = CycloMatrix(order, len(stacked_rows), w,
                                  tuple(e for row in stacked_rows for e in row))
            kernel_vectors = kernel_basis(stacked)
        ambient = [self._to_ambient(v) for v in kernel_vectors]
        rows, _ = rref_rows(ambient, self.root.dimension, order)
        return tuple(rows)

    def _to_ambient(self, coords: Vector) -> Vector:
        if self.basis is None:
            return coords
        order = self.root.root_order
        out = [CyclotomicNumber.zero(order)] * self.root.dimension
        for c, b in zip(coords, self.basis):
            if not c.is_zero():
                for i, e in enumerate(b):
                    out[i] = out[i] + c * e
        return tuple(out)

    def restrict(self, g: int) -> "LinearView":
        cz = centralizer_members(self.group, self.members, g)
        return LinearView(self.root, cz, self.fixed_subspace_basis([g]))

    def quotient_class(self) -> LPolynomial:
        return LPolynomial.L_power(self.dim)


Model = Union[FiniteGSet, LinearGAction]
View = Union[GSetView, LinearView]
ModelOrView = Union[Model, View]


def whole_view(model: ModelOrView) -> View:
    """The view of a model acted on by its whole group (views pass through)."""
    if isinstance(model, (GSetView, LinearView)):
        return model
    members = tuple(range(model.group.order))
    if isinstance(model, FiniteGSet):
        return GSetView(model, members, tuple(range(model.size)))
    if isinstance(model, LinearGAction):
        return LinearView(model, members, None)
    raise UsageError(f"not an action model: {model!r}")


def _member_indices(subgroup) -> tuple[int, ...]:
    if isinstance(subgroup, Subgroup):
        return subgroup.members
    return tuple(sorted(set(subgroup)))


def fixed_locus(model: ModelOrView, subgroup) -> View:
    """The locus fixed by every element of ``subgroup``.

    The returned view is acted on by the centralizer of the subgroup inside
    the current acting members (which always preserves the locus).
    """
    view = whole_view(model)
    gens = _member_indices(subgroup)
    table = view.root.group.table
    acting = tuple(
        h for h in view.members if all(table[h][g] == table[g][h] for g in gens)
    )
    if isinstance(view, GSetView):
        points = [x for x in view.points if all(view.root.action[g][x] == x for g in gens)]
        return GSetView(view.root, acting, tuple(points))
    return LinearView(view.root, acting, view.fixed_subspace_basis(gens))


def age(model: ModelOrView, g: int) -> Fraction:
    view = whole_view(model)
    if isinstance(view, GSetView):
        raise UsageError("ages are defined for the linear backend only")
    return view.age(g)


def restrict_to_fixed(model: ModelOrView, g: int) -> View:
    """The fixed locus of g with its centralizer action: one recursion step."""
    return whole_view(model).restrict(g)


def quotient_class(model: ModelOrView):
    """Orbit count (finite backend) or L^dim (linear backend)."""
    return whole_view(model).quotient_class()


# ---------------------------------------------------------------------------
# model constructors: products, wreath powers, symmetric orbits, extensions
# ---------------------------------------------------------------------------

class ProductGroup(FiniteGroup):
    """Direct product with pair packing a * |G2| + b."""

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup):
        self.factors = (g1, g2)
        n1, n2 = g1.order, g2.order
        table = [
            [
                g1.table[a1][b1] * n2 + g2.table[a2][b2]
                for b1 in range(n1)
                for b2 in range(n2)
            ]
            for a1 in range(n1)
            for a2 in range(n2)
        ]
        labels = None
        if g1.labels is not None and g2.labels is not None:
            labels = [f"({g1.labels[a]},{g2.labels[b]})" for a in range(n1) for b in range(n2)]
        gens = tuple(a * n2 + g2.identity for a in g1.generators) + tuple(
            g1.identity * n2 + b for b in g2.generators
        )
        super().__init__(
            table,
            identity=g1.identity * n2 + g2.identity,
            labels=labels,
            generators=tuple(dict.fromkeys(gens)),
        )

    def pair_index(self, a: int, b: int) -> int:
        return a * self.factors[1].order + b

    def unpair(self, i: int) -> tuple[int, int]:
        n2 = self.factors[1].order
        return divmod(i, n2)


def product_model(m1: Model, m2: Model) -> Model:
    """(X' x X'', G' x G''): product set or block-diagonal matrices."""
    if m1.backend != m2.backend:
        raise UsageError("cannot form the product of a finite and a linear model")
    pg = ProductGroup(m1.group, m2.group)
    if isinstance(m1, FiniteGSet) and isinstance(m2, FiniteGSet):
        s2 = m2.size
        action = []
        for a in range(m1.group.order):
            pa = m1.action[a]
            for b in range(m2.group.order):
                pb = m2.action[b]
                action.append(tuple(pa[x] * s2 + pb[y] for x in range(m1.size) for y in range(s2)))
        return FiniteGSet(pg, action)
    assert isinstance(m1, LinearGAction) and isinstance(m2, LinearGAction)
    order = lcm(m1.root_order, m2.root_order)
    d1, d2 = m1.dimension, m2.dimension
    d = d1 + d2
    zero = CyclotomicNumber.zero(order)
    matrices = []
    for a in range(m1.group.order):
        ma = m1.matrices[a].embed_order(order)
        for b in range(m2.group.order):
            mb = m2.matrices[b].embed_order(order)
            entries = []
            for i in range(d):
                for j in range(d):
                    if i < d1 and j < d1:
                        entries.append(ma.entry(i, j))
                    elif i >= d1 and j >= d1:
                        entries.append(mb.entry(i - d1, j - d1))
                    else:
                        entries.append(zero)
            matrices.append(CycloMatrix(order, d, d, entries))
    return LinearGAction(pg, d, order, matrices)


def wreath_model(model: Model, copies: int, cap: Optional[int] = None) -> Model:
    """The wreath power: G wr S_n acting on X^n.

    Finite backend: the product set with coordinates permuted and acted on.
    Linear backend: block-permutation matrices, block row i and block column
    s^-1(i) holding the matrix of the i-th component.
    """
    key = ("wreath_model", copies)
    cached = model.caches.get(key)
    if cached is not None:
        return cached
    group = wreath_product(model.group, copies, cap=cap)
    if isinstance(model, FiniteGSet):
        result = _wreath_gset(model, group, copies, cap)
    else:
        result = _wreath_linear(model, group, copies)
    model.caches[key] = result
    return result


def _wreath_gset(model: FiniteGSet, group: WreathGroup, copies: int, cap: Optional[int]) -> FiniteGSet:
    points = list(_product(range(model.size), repeat=copies))
    if len(points) > size_cap(cap) * 64:
        raise SizeCapExceeded("wreath power point set is unreasonably large")
    pindex = {p: i for i, p in enumerate(points)}
    act = model.action
    rng = range(copies)
    action = []
    for idx in range(group.order):
        w = group.element(idx)
        sinv = perm_inverse(w.permutation)
        comp = w.components
        action.append(
            tuple(
                pindex[tuple(act[comp[i]][x[sinv[i]]] for i in rng)]
                for x in points
            )
        )
    return FiniteGSet(group, action)


def _wreath_linear(model: LinearGAction, group: WreathGroup, copies: int) -> LinearGAction:
    d = model.dimension
    nd = copies * d
    order = model.root_order
    zero = CyclotomicNumber.zero(order)
    matrices = []
    for idx in range(group.order):
        w = group.element(idx)
        sinv = perm_inverse(w.permutation)
        entries = [zero] * (nd * nd)
        for i in range(copies):
            block = model.matrices[w.components[i]]
            j = sinv[i]
            for a in range(d):
                row_base = (i * d + a) * nd + j * d
                for b in range(d):
                    entries[row_base + b] = block.entry(a, b)
        matrices.append(CycloMatrix(order, nd, nd, tuple(entries)))
    return LinearGAction(group, nd, order, matrices)


def disjoint_union_gset(m1: FiniteGSet, m2: FiniteGSet) -> FiniteGSet:
    """X1 coprod X2 as a G-set; both models must share the same group."""
    if m1.group is not m2.group and m1.group.table != m2.group.table:
        raise UsageError("disjoint union needs both models over the same group")
    action = [
        tuple(m1.action[g]) + tuple(x + m1.size for x in m2.action[g])
        for g in range(m1.group.order)
    ]
    return FiniteGSet(m1.group, action)


def sym_orbit_model(m1: FiniteGSet, m2: FiniteGSet, n: int, m: int, cap: Optional[int] = None) -> FiniteGSet:
    """The orbit of X1^m x X2^(n-m) inside (X1 coprod X2)^n, as a G wr S_n set.

    Concretely: all coordinate tuples with exactly m entries from X1, which is
    exactly the S_n-orbit of the standard arrangement.
    """
    if not 0 <= m <= n:
        raise UsageError("need 0 <= m <= n")
    union = disjoint_union_gset(m1, m2)
    group = wreath_product(union.group, n, cap=cap)
    cut = m1.size
    points = [
        p
        for p in _product(range(union.size), repeat=n)
        if sum(1 for x in p if x < cut) == m
    ]
    pindex = {p: i for i, p in enumerate(points)}
    act = union.action
    rng = range(n)
    action = []
    for idx in range(group.order):
        w = group.element(idx)
        sinv = perm_inverse(w.permutation)
        comp = w.components
        row = []
        for x in points:
            y = tuple(act[comp[i]][x[sinv[i]]] for i in rng)
            target = pindex.get(y)
            if target is None:
                raise ConsistencyError("wreath action left the symmetric orbit")
            row.append(target)
        action.append(tuple(row))
    return FiniteGSet(group, action)


def central_extension_model(model: Model, c: int, r: int, cap: Optional[int] = None):
    """Extend the action to G.<a> with a acting trivially and a^r = c.

    Requires c to act trivially (otherwise the extension is not well defined
    on the same space).  Returns the extended model together with the
    underlying extension data.
    """
    from .groups import central_extension

    ext = central_extension(model.group, c, r, cap=cap)
    if isinstance(model, FiniteGSet):
        if model.action[c] != tuple(range(model.size)):
            raise UsageError("the chosen central element must act trivially")
        action = [model.action[g] for (g, _j) in ext.pairs]
        return FiniteGSet(ext.group, action), ext
    assert isinstance(model, LinearGAction)
    if not model.matrices[c].is_identity():
        raise UsageError("the chosen central element must act trivially")
    matrices = [model.matrices[g] for (g, _j) in ext.pairs]
    return LinearGAction(ext.group, model.dimension, model.root_order, matrices), ext
