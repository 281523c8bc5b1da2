"""The group algebra KG of a finite representation's group, right ideals,
quotient modules KG/U, annihilators and stabilizers.

An element of KG is a coordinate vector indexed by the element indices of
the underlying :class:`~repgeom.representation.FiniteRepresentation`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotRightIdeal, NotTwoSided
from .linalg import enumerate_subspaces, inverse, nullspace, rank, reduce_by, rref
from .representation import action_kernel, with_action


def unit_vector(rep, i):
    v = [0] * rep.order
    v[i] = 1
    return tuple(v)


def algebra_multiply(rep, a, b):
    f = rep.field
    out = [0] * rep.order
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    k = rep.mul(i, j)
                    out[k] += x * y
    return tuple(f(c) for c in out)


def right_multiply(rep, v, g):
    """``v * g`` for v in KG and a group element index g."""
    out = [0] * rep.order
    for h, c in enumerate(v):
        if c:
            out[rep.mul(h, g)] = c
    return tuple(out)


def left_multiply(rep, g, v):
    out = [0] * rep.order
    for h, c in enumerate(v):
        if c:
            out[rep.mul(g, h)] = c
    return tuple(out)


@dataclass(frozen=True)
class RightIdealBasis:
    """A right ideal U of KG, stored as a canonical RREF basis."""

    rep: object
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, rep, vectors, check=True):
        basis, pivots = rref(list(vectors), rep.field, rep.order)
        ideal = cls(rep, tuple(basis), tuple(pivots))
        if check and not ideal.is_right_ideal():
            raise NotRightIdeal("span is not closed under right multiplication by G")
        return ideal

    @classmethod
    def zero(cls, rep):
        return cls(rep, (), ())

    @classmethod
    def whole(cls, rep):
        return cls.span(rep, [unit_vector(rep, i) for i in range(rep.order)], check=False)

    @classmethod
    def augmentation(cls, rep):
        """The augmentation ideal, spanned by ``g - 1``."""
        f = rep.field
        vecs = []
        for g in range(1, rep.order):
            v = [0] * rep.order
            v[g] = 1
            v[0] = f(-1)
            vecs.append(v)
        return cls.span(rep, vecs)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return not any(reduce_by(v, self.basis, self.pivots, self.rep.field))

    def is_right_ideal(self):
        return all(self.contains(right_multiply(self.rep, b, g)) for b in self.basis for g in range(self.rep.order))

    def is_two_sided(self):
        return self.is_right_ideal() and all(
            self.contains(left_multiply(self.rep, g, b)) for b in self.basis for g in range(self.rep.order))

    def issubset(self, other):
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, RightIdealBasis) and self.basis == other.basis and self.rep is other.rep

    def __hash__(self):
        return hash(self.basis)


def quotient_module_representation(rep, ideal):
    """(KG/U, G) with basis the non-pivot coordinates of U's RREF.

    Returns ``(quotient_rep, project)`` where ``project`` maps a KG vector
    to its coordinates in KG/U.
    """
    if not ideal.is_right_ideal():
        raise NotRightIdeal("U is not a right ideal")
    f = rep.field
    free = [c for c in range(rep.order) if c not in ideal.pivots]
    dim = len(free)

    def project(v):
        r = reduce_by(v, ideal.basis, ideal.pivots, f)
        return tuple(r[c] for c in free)

    def action(i):
        return [project(right_multiply(rep, unit_vector(rep, j), i)) for j in free]

    return with_action(rep, action, dim), project


def annihilator(module_rep, subset):
    """``ann S = {r in KG : s r = 0 for all s in S}`` by exact linear algebra."""
    f = module_rep.field
    n = module_rep.order
    d = module_rep.action_dim
    rows = []
    for s in subset:
        images = [module_rep.act(s, g) for g in range(n)]
        for j in range(d):
            rows.append([images[g][j] for g in range(n)])
    if not rows:
        basis = [unit_vector(module_rep, i) for i in range(n)]
    else:
        basis = nullspace(rows, f, n)
    return RightIdealBasis.span(module_rep, basis)


def module_span_is_submodule(module_rep, subset):
    f = module_rep.field
    vecs = [tuple(f(x) for x in s) for s in subset]
    if not vecs:
        return True
    r = rank(vecs, f, module_rep.action_dim)
    return all(rank(vecs + [module_rep.act(v, g)], f, module_rep.action_dim) == r
               for v in vecs for g in module_rep.generators)


@dataclass(frozen=True)
class Stabilizer:
    """``stab S = 1 + ann S``: an affine coset of the annihilator."""

    ann: RightIdealBasis

    def contains(self, r):
        f = self.ann.rep.field
        shifted = list(r)
        shifted[0] = f(shifted[0] - 1)
        return self.ann.contains(tuple(shifted))

    def group_elements(self):
        rep = self.ann.rep
        return [g for g in range(rep.order) if self.contains(unit_vector(rep, g))]


def stabilizer(module_rep, subset):
    return Stabilizer(annihilator(module_rep, subset))


def stabilizer_direct(module_rep, subset):
    """Group elements fixing every vector of S, computed from the action."""
    subset = [tuple(int(x) % module_rep.p for x in s) for s in subset]
    return [g for g in range(module_rep.order) if all(module_rep.act(s, g) == s for s in subset)]


def kernel_via_ideal(rep, ideal):
    """``(1 + U) n G`` for a two-sided ideal U."""
    if not ideal.is_two_sided():
        raise NotTwoSided("U is not a two-sided ideal")
    f = rep.field
    out = []
    for g in range(rep.order):
        v = list(unit_vector(rep, g))
        v[0] = f(v[0] - 1)
        if ideal.contains(tuple(v)):
            out.append(g)
    return out


def quotient_kernel(rep, ideal):
    """``ker(KG/U, G)`` computed from the quotient representation's action."""
    q, _ = quotient_module_representation(rep, ideal)
    return action_kernel(q)


def all_right_ideals(rep):
    """Every right ideal of KG, by exhausting the subspaces (tiny groups only)."""
    spaces = (RightIdealBasis(rep, b, tuple(_pivots(b))) for b in enumerate_subspaces(rep.field, rep.order))
    return [u for u in spaces if u.is_right_ideal()]


def all_two_sided_ideals(rep):
    return [u for u in all_right_ideals(rep) if u.is_two_sided()]


def _pivots(basis):
    return [next(c for c, x in enumerate(row) if x) for row in basis]


def ann_of_quotient(rep, ideal):
    """``ann_KG(KG/U)`` as an ideal of KG."""
    q, _ = quotient_module_representation(rep, ideal)
    basis = [tuple(1 if i == j else 0 for j in range(q.action_dim)) for i in range(q.action_dim)]
    ann = annihilator(q, basis)
    return RightIdealBasis(rep, ann.basis, ann.pivots)


def random_intertwined_module(module_rep, rng):
    """An isomorphic copy of the module via a random invertible change of basis.

    Returns ``(copy, T)`` with ``copy.A_g = T^-1 A_g T``; ``v -> v T`` is the
    intertwiner.
    """
    f = module_rep.field
    d = module_rep.action_dim
    while True:
        t = tuple(tuple(rng.randrange(module_rep.p) for _ in range(d)) for _ in range(d))
        if rank(list(t), f, d) == d:
            break
    tinv = inverse(t, f)
    tn = np.array(t, dtype=np.int64).reshape(d, d)
    tinvn = np.array(tinv, dtype=np.int64).reshape(d, d)

    def action(i):
        return (tinvn @ module_rep.actions[i] @ tn % module_rep.p).tolist()

    return with_action(module_rep, action, d), t


__all__ = [
    "RightIdealBasis", "Stabilizer", "algebra_multiply", "annihilator", "stabilizer", "stabilizer_direct",
    "kernel_via_ideal", "quotient_kernel", "quotient_module_representation", "all_right_ideals",
    "all_two_sided_ideals", "ann_of_quotient", "unit_vector", "module_span_is_submodule",
]
