"""Finite representations (V, G) over GF(p).

A group element is stored as a pair ``(group_matrix, action_matrix)``: the
group matrix realizes G faithfully, the action matrix is rho(g) acting on
row vectors from the right (``v o g = v @ A_g``). Keeping both lets the
action have a nontrivial kernel.

Elements are addressed by their index in ``rep.elements``; index 0 is the
identity.
"""

import itertools
from collections import deque

import numpy as np

from .errors import GroupTooLarge, IllDefinedAction, IndexOutOfRange, InvalidRepresentation, SingularMatrix
from .field import PrimeField
from .linalg import rank_mod_p

DEFAULT_GROUP_BOUND = 5000
_TABLE_LIMIT = 512


def _as_matrix(m, p):
    return tuple(tuple(int(x) % p for x in row) for row in m)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a, b, p):
    if not a:
        return a
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def _check_square_invertible(m, p, what):
    n = len(m)
    if any(len(row) != n for row in m):
        raise InvalidRepresentation(f"{what} matrix is not square")
    if n and rank_mod_p(np.array(m, dtype=np.int64).reshape(n, n), p) < n:
        raise SingularMatrix(f"{what} matrix is singular mod {p}")


class FiniteRepresentation:
    """A finite group acting linearly on GF(p)^d. Build with :func:`generate`."""

    def __init__(self, p, group_dim, action_dim, elements, generators):
        self.p = p
        self.field = PrimeField(p)
        self.group_dim = group_dim
        self.action_dim = action_dim
        self.elements = elements
        self.generators = generators
        self.index = {g: i for i, (g, _) in enumerate(elements)}
        self.actions = np.array([a for _, a in elements], dtype=np.int64).reshape(len(elements), action_dim, action_dim)
        self._table = None
        self._inverses = None

    # -- basic structure

    @property
    def order(self):
        return len(self.elements)

    @property
    def dim(self):
        return self.action_dim

    def identity(self):
        return 0

    def group_matrix(self, i):
        return self.elements[i][0]

    def action_matrix(self, i):
        return self.elements[i][1]

    def generator_pairs(self):
        return [self.elements[i] for i in self.generators]

    def _product_index(self, i, j):
        g = _matmul(self.elements[i][0], self.elements[j][0], self.p)
        return self.index[g]

    @property
    def table(self):
        """Cayley table ``table[i, j] = index(g_i g_j)`` (small groups only)."""
        if self._table is None:
            n = self.order
            if n > _TABLE_LIMIT:
                return None
            t = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    t[i, j] = self._product_index(i, j)
            self._table = t
        return self._table

    def mul(self, i, j):
        t = self.table
        if t is not None:
            return int(t[i, j])
        return self._product_index(i, j)

    def inv(self, i):
        if self._inverses is None:
            n = self.order
            inv = [0] * n
            for a in range(n):
                for b in range(n):
                    if self.mul(a, b) == 0:
                        inv[a] = b
                        break
            self._inverses = inv
        return self._inverses[i]

    def act(self, v, i):
        """``v o g_i`` for a vector v in V."""
        if self.action_dim == 0:
            return ()
        return tuple(int(x) for x in np.asarray(v, dtype=np.int64) @ self.actions[i] % self.p)

    def vectors(self):
        """All vectors of V in lexicographic order."""
        return list(itertools.product(range(self.p), repeat=self.action_dim))

    def is_faithful(self):
        return len(action_kernel(self)) == 1

    def __repr__(self):
        return f"FiniteRepresentation(p={self.p}, |G|={self.order}, dim V={self.action_dim})"


def generate(p, group_gens, action_gens, bound=DEFAULT_GROUP_BOUND, group_dim=None, action_dim=None):
    """Breadth-first pair closure of ``(group_gens[i], action_gens[i])``.

    Raises if the group is larger than ``bound``, a matrix is singular, or
    the action is not a function of the group element.
    """
    PrimeField(p)
    if len(group_gens) != len(action_gens):
        raise InvalidRepresentation("group and action generator counts differ")
    ggens = [_as_matrix(m, p) for m in group_gens]
    agens = [_as_matrix(m, p) for m in action_gens]
    if group_dim is None:
        group_dim = len(ggens[0]) if ggens else 0
    if action_dim is None:
        action_dim = len(agens[0]) if agens else 0
    for m in ggens:
        if len(m) != group_dim:
            raise InvalidRepresentation("group generators have different sizes")
        _check_square_invertible(m, p, "group")
    for m in agens:
        if len(m) != action_dim:
            raise InvalidRepresentation("action generators have different sizes")
        _check_square_invertible(m, p, "action")

    one = (_identity(group_dim), _identity(action_dim))
    elements = [one]
    seen = {one[0]: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        g0, a0 = elements[i]
        for g, a in zip(ggens, agens):
            gp = _matmul(g0, g, p)
            ap = _matmul(a0, a, p)
            j = seen.get(gp)
            if j is None:
                if len(elements) >= bound:
                    raise GroupTooLarge(f"group has more than {bound} elements")
                seen[gp] = len(elements)
                elements.append((gp, ap))
                queue.append(len(elements) - 1)
            elif elements[j][1] != ap:
                raise IllDefinedAction(f"group element {gp} has two action matrices")
    gens = [seen[g] for g in ggens]
    return FiniteRepresentation(p, group_dim, action_dim, elements, gens)


def from_elements(p, group_dim, action_dim, pairs, generators):
    """Build directly from an already closed, ordered list of pairs."""
    pairs = [(_as_matrix(g, p), _as_matrix(a, p)) for g, a in pairs]
    return FiniteRepresentation(p, group_dim, action_dim, pairs, list(generators))


def with_action(rep, action_of_element, action_dim):
    """Same group (same element order), new action given per element index.

    The new action must be a homomorphism; this is checked on the
    generators against the Cayley table.
    """
    pairs = [(g, _as_matrix(action_of_element(i), rep.p)) for i, (g, _) in enumerate(rep.elements)]
    out = FiniteRepresentation(rep.p, rep.group_dim, action_dim, pairs, list(rep.generators))
    for i in range(rep.order):
        for s in rep.generators:
            j = rep.mul(i, s)
            if action_dim and not np.array_equal(out.actions[i] @ out.actions[s] % rep.p, out.actions[j]):
                raise IllDefinedAction("action is not a homomorphism")
    out._table = rep._table
    out._inverses = rep._inverses
    return out


# -- evaluation

def _lookup(mapping, k):
    if isinstance(mapping, dict):
        if k not in mapping:
            raise IndexOutOfRange(f"index {k} is not assigned")
        return mapping[k]
    if not 1 <= k <= len(mapping):
        raise IndexOutOfRange(f"index {k} is not assigned")
    return mapping[k - 1]


def eval_word(rep, beta, f):
    """Image of a word under the homomorphism sending ``y_k`` to ``beta[k]``."""
    out = 0
    for a in f.letters:
        g = _lookup(beta, abs(a))
        out = rep.mul(out, g if a > 0 else rep.inv(g))
    return out


def ring_image(rep, beta, u):
    """rho(u^beta) as a d x d integer matrix mod p."""
    d = rep.action_dim
    total = np.zeros((d, d), dtype=np.int64)
    for w, c in u.terms.items():
        total += int(c) * rep.actions[eval_word(rep, beta, w)]
    return total % rep.p


def eval_point(rep, alpha, beta, w):
    """``w^alpha`` for the point (alpha, beta): ``sum_k alpha(x_k) rho(u_k^beta)``."""
    rep.field.check_same(w.field)
    d = rep.action_dim
    total = np.zeros(d, dtype=np.int64)
    for k, u in w.components.items():
        v = np.asarray(_lookup(alpha, k), dtype=np.int64).reshape(d)
        total += v @ ring_image(rep, beta, u)
    return tuple(int(x) for x in total % rep.p)


# -- kernels and the faithful image

def is_subgroup(rep, subset):
    s = set(subset)
    if 0 not in s:
        return False
    return all(rep.mul(a, b) in s for a in s for b in s) and all(rep.inv(a) in s for a in s)


def is_normal(rep, subset):
    s = set(subset)
    if not is_subgroup(rep, s):
        return False
    return all(rep.mul(rep.mul(rep.inv(g), n), g) in s for g in range(rep.order) for n in s)


def action_kernel(rep):
    d = rep.action_dim
    eye = np.eye(d, dtype=np.int64)
    out = [i for i in range(rep.order) if np.array_equal(rep.actions[i], eye)]
    assert is_normal(rep, out)
    return out


def subgroup_closure(rep, gens):
    """Subgroup generated by the given element indices."""
    out = {0}
    queue = deque([0])
    gens = list(gens)
    while queue:
        i = queue.popleft()
        for s in gens:
            j = rep.mul(i, s)
            if j not in out:
                out.add(j)
                queue.append(j)
    return sorted(out)


def faithful_image(rep):
    """(V, G/ker): the group is realized by the action matrices themselves."""
    acts = [rep.action_matrix(i) for i in rep.generators]
    return generate(rep.p, acts, acts, bound=max(rep.order, 1), group_dim=rep.action_dim, action_dim=rep.action_dim)


def regular_representation(rep):
    """(KG, G) with basis indexed by the element indices of ``rep``."""
    n = rep.order

    def perm(i):
        m = [[0] * n for _ in range(n)]
        for h in range(n):
            m[h][rep.mul(h, i)] = 1
        return m

    return with_action(rep, perm, n)


def trivial_representation(p, dim=0):
    return generate(p, [], [], group_dim=1, action_dim=dim)


def is_isomorphic_action_table(rep1, rep2):
    """Cheap invariant check used in tests: same order and same multiset of action matrices."""
    key = lambda r: sorted(r.action_matrix(i) for i in range(r.order))
    return rep1.order == rep2.order and key(rep1) == key(rep2)


__all__ = [
    "FiniteRepresentation", "generate", "from_elements", "with_action", "eval_word", "eval_point",
    "ring_image", "action_kernel", "faithful_image", "regular_representation", "subgroup_closure",
    "is_subgroup", "is_normal", "trivial_representation",
]
