"""Constructions on finite representations: Cartesian and filtered
products, generated subrepresentations, quotients of the acting group by
part of the kernel, and inflation along a group epimorphism.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidFilter, InvalidRepresentation, NotEpimorphism, NotInKernel, NotNormal
from .linalg import rref, solve
from .representation import (
    action_kernel, generate, is_normal, subgroup_closure,
)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def cartesian_product(reps, p=None, bound=None):
    """Direct product with componentwise action, realized block-diagonally.

    An empty list gives the zero module with the trivial group (``p`` is
    then required).
    """
    reps = list(reps)
    if not reps:
        if p is None:
            raise InvalidRepresentation("empty product needs an explicit prime")
        return generate(p, [], [], group_dim=1, action_dim=0)
    p = reps[0].p
    if any(r.p != p for r in reps):
        raise InvalidRepresentation("factors are over different primes")
    gdims = [r.group_dim for r in reps]
    adims = [r.action_dim for r in reps]
    ggens, agens = [], []
    for idx, r in enumerate(reps):
        for g, a in r.generator_pairs():
            ggens.append(_block_diag([g if j == idx else _eye(gdims[j]) for j in range(len(reps))]))
            agens.append(_block_diag([a if j == idx else _eye(adims[j]) for j in range(len(reps))]))
    expected = int(np.prod([r.order for r in reps]))
    out = generate(p, ggens, agens, bound=bound or max(expected, 1), group_dim=sum(gdims), action_dim=sum(adims))
    assert out.order == expected
    return out


# ---------------------------------------------------------------- filters

@dataclass(frozen=True)
class FilterSpec:
    """A filter on ``{1..n}`` given by its member sets."""

    n: int
    members: frozenset

    def __init__(self, n, members):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "members", frozenset(frozenset(int(i) for i in m) for m in members))

    @classmethod
    def principal(cls, n, core):
        core = frozenset(core)
        rest = [i for i in range(1, n + 1) if i not in core]
        members = [core | frozenset(extra) for k in range(len(rest) + 1) for extra in itertools.combinations(rest, k)]
        return cls(n, members)

    @classmethod
    def generated_by(cls, n, sets):
        """Smallest filter containing the given sets (upward and intersection closure)."""
        sets = [frozenset(s) for s in sets]
        if not sets:
            return cls.principal(n, range(1, n + 1))
        core = frozenset.intersection(*sets)
        return cls.principal(n, core)

    def validate(self):
        universe = frozenset(range(1, self.n + 1))
        if not self.members:
            raise InvalidFilter("filter is empty")
        for m in self.members:
            if not m <= universe:
                raise InvalidFilter(f"{sorted(m)} is not a subset of 1..{self.n}")
        if frozenset() in self.members:
            raise InvalidFilter("filter contains the empty set")
        for a in self.members:
            for b in self.members:
                if a & b not in self.members:
                    raise InvalidFilter(f"not closed under intersection: {sorted(a)}, {sorted(b)}")
            rest = sorted(universe - a)
            for i in rest:
                if a | {i} not in self.members:
                    raise InvalidFilter(f"not upward closed at {sorted(a)}")
        return self

    def core(self):
        self.validate()
        return frozenset.intersection(*self.members)

    def is_ultrafilter(self):
        return len(self.core()) == 1

    def __contains__(self, subset):
        return frozenset(subset) in self.members


@dataclass
class FilteredProduct:
    rep: object
    core: tuple          # sorted indices (1-based) kept by the collapse map
    collapse: object     # tuple over all factors -> tuple over the core


def filtered_product(reps, flt, bound=None):
    """Filtered product over a finite index set.

    Over a finite set every proper filter is principal, so the quotient is
    the Cartesian product over the core ``C = n F``; the collapse map
    restricts a tuple to C.
    """
    reps = list(reps)
    flt.validate()
    if len(reps) != flt.n:
        raise InvalidFilter(f"filter is over {flt.n} indices but {len(reps)} factors were given")
    if flt.members != FilterSpec.principal(flt.n, flt.core()).members:
        raise InvalidFilter("filter over a finite set is not principal")
    core = tuple(sorted(flt.core()))
    rep = cartesian_product([reps[i - 1] for i in core], bound=bound)

    def collapse(t):
        return tuple(t[i - 1] for i in core)

    return FilteredProduct(rep, core, collapse)


@dataclass
class LiteralFilteredProduct:
    """The quotient ``prod V_i / ~F`` computed from the definition.

    Classes are stored as frozensets of tuples; ``act`` is the induced
    table ``(vector class, group class) -> vector class``.
    """

    vector_classes: list
    group_classes: list
    act: dict
    add: dict


def _classes(tuples, flt):
    classes = []
    assigned = {}
    for t in tuples:
        if t in assigned:
            continue
        cls = [u for u in tuples
               if frozenset(i + 1 for i in range(len(t)) if t[i] == u[i]) in flt.members]
        cid = len(classes)
        for u in cls:
            if u in assigned:
                raise InvalidFilter("agreement relation is not an equivalence")
            assigned[u] = cid
        classes.append(frozenset(cls))
    return classes, assigned


def literal_filtered_product(reps, flt):
    flt.validate()
    vecs = list(itertools.product(*[r.vectors() for r in reps]))
    elems = list(itertools.product(*[range(r.order) for r in reps]))
    vclasses, vid = _classes(vecs, flt)
    gclasses, _ = _classes(elems, flt)
    act = {}
    add = {}
    for ci, vc in enumerate(vclasses):
        for gi, gc in enumerate(gclasses):
            images = {vid[tuple(r.act(v[j], g[j]) for j, r in enumerate(reps))] for v in vc for g in gc}
            if len(images) != 1:
                raise InvalidFilter("induced action is not well defined")
            act[ci, gi] = images.pop()
        for cj, wc in enumerate(vclasses):
            v, w = next(iter(vc)), next(iter(wc))
            s = tuple(tuple((a + b) % r.p for a, b in zip(v[j], w[j])) for j, r in enumerate(reps))
            add[ci, cj] = vid[s]
    return LiteralFilteredProduct(vclasses, gclasses, act, add)


def compare_filtered(reps, flt):
    """Check the literal quotient against the principal-core shortcut.

    Returns True when sizes agree and, under the collapse map, the action
    and addition tables coincide.
    """
    lit = literal_filtered_product(reps, flt)
    short = filtered_product(reps, flt)
    core = short.core
    rep = short.rep
    if len(lit.vector_classes) != rep.p ** rep.action_dim or len(lit.group_classes) != rep.order:
        return False
    # collapse classes to core coordinates: concatenated vector, tuple of factor elements
    vkey = [_flat(short.collapse(next(iter(c)))) for c in lit.vector_classes]
    if len(set(vkey)) != len(vkey):
        return False
    gkey = [short.collapse(next(iter(c))) for c in lit.group_classes]
    factor_reps = [reps[i - 1] for i in core]
    gindex = _product_element_index(rep, factor_reps)
    for (ci, gi), cj in lit.act.items():
        g = gindex[gkey[gi]]
        if rep.act(vkey[ci], g) != vkey[cj]:
            return False
    for (ci, cj), ck in lit.add.items():
        s = tuple((a + b) % rep.p for a, b in zip(vkey[ci], vkey[cj]))
        if s != vkey[ck]:
            return False
    return True


def _flat(t):
    return tuple(x for part in t for x in part)


def _product_element_index(prod, factors):
    """Map tuples of factor element indices to element indices of the block product."""
    out = {}
    for combo in itertools.product(*[range(r.order) for r in factors]):
        g = _block_diag([r.group_matrix(i) for r, i in zip(factors, combo)])
        key = tuple(tuple(row) for row in g) if g else ()
        out[combo] = prod.index[key]
    return out


# ---------------------------------------------------------------- subrepresentations

@dataclass
class Subrepresentation:
    parent: object
    module_basis: tuple   # RREF rows spanning V0
    group: tuple          # element indices of G0

    @property
    def dim(self):
        return len(self.module_basis)

    def as_representation(self):
        """(V0, G0) as a representation in its own right, coordinates in ``module_basis``."""
        parent = self.parent
        f = parent.field
        basis = [list(b) for b in self.module_basis]
        k = len(basis)
        cols = [list(c) for c in zip(*basis)] if basis else []

        def coords(v):
            x = solve(cols, list(v), f) if basis else ()
            assert x is not None
            return list(x)

        gens = [g for g in self.group if g != 0] or []
        ggens = [parent.group_matrix(g) for g in gens]
        agens = [[coords(parent.act(b, g)) for b in basis] for g in gens]
        return generate(parent.p, ggens, agens, bound=max(parent.order, 1),
                        group_dim=parent.group_dim, action_dim=k)


def generated_subrepresentation(rep, module_gens=(), group_gens=()):
    """Smallest (V0, G0) containing the generators: G0 is the subgroup
    closure, V0 the span closed under G0."""
    f = rep.field
    group = subgroup_closure(rep, group_gens)
    basis, _ = rref([tuple(int(x) % rep.p for x in v) for v in module_gens], f, rep.action_dim)
    while True:
        grown = list(basis) + [rep.act(b, g) for b in basis for g in group]
        new, _ = rref(grown, f, rep.action_dim)
        if len(new) == len(basis):
            break
        basis = new
    return Subrepresentation(rep, tuple(basis), tuple(group))


def is_subrepresentation(sub):
    rep = sub.parent
    f = rep.field
    n = len(sub.module_basis)
    for b in sub.module_basis:
        for g in sub.group:
            if len(rref(list(sub.module_basis) + [rep.act(b, g)], f, rep.action_dim)[0]) != n:
                return False
    s = set(sub.group)
    return 0 in s and all(rep.mul(a, b) in s for a in s for b in s)


# ---------------------------------------------------------------- quotient and inflation of the group

def factor_group(rep, normal):
    """(V, G/N) for a normal subgroup N acting trivially.

    G/N is realized by permutation matrices of its right regular action on
    the cosets; the action on V is inherited from the coset representatives.
    """
    normal = sorted(set(normal))
    if not is_normal(rep, normal):
        raise NotNormal("N is not a normal subgroup")
    ker = set(action_kernel(rep))
    if not set(normal) <= ker:
        raise NotInKernel("N does not act trivially")
    coset_of = {}
    reps_ = []
    for g in range(rep.order):
        if g in coset_of:
            continue
        cid = len(reps_)
        reps_.append(g)
        for n in normal:
            coset_of[rep.mul(n, g)] = cid
    m = len(reps_)

    def coset_matrix(g):
        mat = [[0] * m for _ in range(m)]
        for c, r in enumerate(reps_):
            mat[c][coset_of[rep.mul(r, g)]] = 1
        return mat

    ggens = [coset_matrix(g) for g in rep.generators]
    agens = [rep.action_matrix(g) for g in rep.generators]
    out = generate(rep.p, ggens, agens, bound=max(m, 1), group_dim=m, action_dim=rep.action_dim)
    assert out.order == m
    return out


def inflate_along_epimorphism(rep, group_gens, images, bound=None):
    """(V, G) where G (given by generator matrices) acts through an
    epimorphism onto the group of ``rep``; ``images[i]`` is the element
    index of ``rep`` that the i-th generator maps to."""
    if len(group_gens) != len(images):
        raise InvalidRepresentation("one image per generator is required")
    # first close (G, D) pairs: well-definedness makes phi a homomorphism
    dmats = [rep.group_matrix(i) for i in images]
    graph = generate(rep.p, group_gens, dmats, bound=bound or 5000, action_dim=rep.group_dim)
    hit = {graph.action_matrix(i) for i in range(graph.order)}
    if len(hit) != rep.order:
        raise NotEpimorphism(f"image has {len(hit)} of {rep.order} elements")
    agens = [rep.action_matrix(i) for i in images]
    return generate(rep.p, group_gens, agens, bound=graph.order, group_dim=graph.group_dim,
                    action_dim=rep.action_dim)


def restrict_action_group(rep, group_gens):
    """(V, H) for the subgroup H generated by ``group_gens`` with the full module."""
    return generated_subrepresentation(rep, [row for row in _eye(rep.action_dim)], group_gens)


__all__ = [
    "cartesian_product", "FilterSpec", "filtered_product", "FilteredProduct", "literal_filtered_product",
    "compare_filtered", "Subrepresentation", "generated_subrepresentation", "is_subrepresentation",
    "factor_group", "inflate_along_epimorphism", "restrict_action_group",
]
