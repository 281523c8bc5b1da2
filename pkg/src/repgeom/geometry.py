"""Algebraic sets, action-type closures, quasi-identities and a bounded
refuter for action-type geometric equivalence over finite representations.

Two evaluation routes are kept apart on purpose:

* point enumeration (``enumerate_points``, ``algebraic_set``,
  ``check_quasi_identity``) walks the affine space point by point;
* fibre linear algebra (``closure_member`` and everything built on it)
  uses that for a fixed group assignment beta the admissible alphas form
  a subspace, so membership in the closure reduces to checking a basis.

The test suite cross-checks one against the other.
"""

import itertools
import os
import random
from math import comb
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, FieldMismatch
from .linalg import nullspace_mod_p, rref_mod_p
from .representation import eval_word
from .ring import FreeModuleElement, GroupRingElement
from .words import Word, all_words

DEFAULT_MAX_POINTS = int(os.environ.get("REPGEOM_MAX_POINTS", "1000000"))
DEFAULT_MAX_CANDIDATES = 50000


@dataclass(frozen=True)
class Point:
    alpha: tuple  # alpha[k-1] is the vector assigned to x_k
    beta: tuple   # beta[k-1] is the element index assigned to y_k


@dataclass(frozen=True)
class EquationSet:
    """Action equations ``w = 0`` and optional group equations ``f = 1``."""

    action: tuple = ()
    group: tuple = ()

    def __init__(self, action=(), group=()):
        object.__setattr__(self, "action", tuple(action))
        object.__setattr__(self, "group", tuple(group))

    def union(self, other):
        return EquationSet(self.action + tuple(w for w in other.action if w not in self.action),
                           self.group + tuple(f for f in other.group if f not in self.group))

    def add(self, *ws):
        return EquationSet(self.action + tuple(ws), self.group)

    def max_x(self):
        return max((w.max_x() for w in self.action), default=0)

    def max_y(self):
        return max([w.max_y() for w in self.action] + [f.max_generator() for f in self.group], default=0)

    def __len__(self):
        return len(self.action) + len(self.group)

    def __str__(self):
        parts = [str(w) for w in self.action] + [f"{f} = 1" for f in self.group]
        return "{" + "; ".join(parts) + "}"


@dataclass(frozen=True)
class QuasiIdentity:
    premises: tuple = ()
    conclusion: Optional[FreeModuleElement] = None
    group_premises: tuple = ()
    group_conclusion: Optional[Word] = None

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "group_premises", tuple(self.group_premises))
        if (self.conclusion is None) == (self.group_conclusion is None):
            raise ValueError("a quasi-identity needs exactly one conclusion")

    def equations(self):
        return EquationSet(self.premises, self.group_premises)

    def max_x(self):
        ws = list(self.premises) + ([self.conclusion] if self.conclusion is not None else [])
        return max((w.max_x() for w in ws), default=0)

    def max_y(self):
        ys = [w.max_y() for w in self.premises] + [f.max_generator() for f in self.group_premises]
        if self.conclusion is not None:
            ys.append(self.conclusion.max_y())
        if self.group_conclusion is not None:
            ys.append(self.group_conclusion.max_generator())
        return max(ys, default=0)

    def __str__(self):
        prem = [str(w) + " = 0" for w in self.premises] + [f"{f} = 1" for f in self.group_premises]
        concl = f"{self.conclusion} = 0" if self.conclusion is not None else f"{self.group_conclusion} = 1"
        return f"({' & '.join(prem) or 'true'}) => ({concl})"


def _as_equations(T):
    if isinstance(T, EquationSet):
        return T
    return EquationSet(tuple(T))


def _check_field(rep, elements):
    for w in elements:
        if w.field != rep.field:
            raise FieldMismatch(f"field mismatch: representation over {rep.field}, equation over {w.field}")


def _dims(nx, ny, *sources):
    mx = max((s.max_x() for s in sources if s is not None), default=0)
    my = max((s.max_y() for s in sources if s is not None), default=0)
    nx = mx if nx is None else nx
    ny = my if ny is None else ny
    if nx < mx or ny < my:
        raise ValueError(f"equations use x{mx}/y{my} but only |X|={nx}, |Y|={ny} were declared")
    return nx, ny


# ---------------------------------------------------------------- point enumeration

def count_points(rep, nx, ny):
    return rep.p ** (rep.action_dim * nx) * rep.order ** ny


def enumerate_points(rep, nx, ny, max_points=None):
    """Every point of Hom(W(X,Y), (V,G)) once, alpha-major lexicographic order."""
    budget = DEFAULT_MAX_POINTS if max_points is None else max_points
    total = count_points(rep, nx, ny)
    if total > budget:
        raise BudgetExceeded(f"affine space has {total} points, budget is {budget}")
    return _iter_points(rep, nx, ny)


def _iter_points(rep, nx, ny):
    d = rep.action_dim
    betas = list(itertools.product(range(rep.order), repeat=ny))
    for flat in itertools.product(range(rep.p), repeat=nx * d):
        alpha = tuple(flat[k * d:(k + 1) * d] for k in range(nx))
        for beta in betas:
            yield Point(alpha, beta)


class _PointwiseEvaluator:
    """Evaluates equations point by point, caching group-ring images per beta."""

    def __init__(self, rep):
        self.rep = rep
        self._images = {}

    def ring_image(self, beta, u):
        key = (beta, u)
        m = self._images.get(key)
        if m is None:
            rep = self.rep
            d = rep.action_dim
            m = np.zeros((d, d), dtype=np.int64)
            for w, c in u.terms.items():
                m += int(c) * rep.actions[eval_word(rep, beta, w)]
            m %= rep.p
            self._images[key] = m
        return m

    def value(self, point, w):
        rep = self.rep
        total = np.zeros(rep.action_dim, dtype=np.int64)
        for k, u in w.components.items():
            total += np.asarray(point.alpha[k - 1], dtype=np.int64) @ self.ring_image(point.beta, u)
        return total % rep.p

    def vanishes(self, point, w):
        return not self.value(point, w).any()

    def group_holds(self, point, f):
        return eval_word(self.rep, point.beta, f) == 0


def algebraic_set(rep, T, nx=None, ny=None, max_points=None):
    """Points where every action equation vanishes and every group equation holds."""
    T = _as_equations(T)
    _check_field(rep, T.action)
    nx, ny = _dims(nx, ny, T)
    ev = _PointwiseEvaluator(rep)
    return [pt for pt in enumerate_points(rep, nx, ny, max_points)
            if all(ev.group_holds(pt, f) for f in T.group) and all(ev.vanishes(pt, w) for w in T.action)]


def check_quasi_identity(rep, q, nx=None, ny=None, max_points=None):
    """Satisfaction by direct enumeration: premises hold => conclusion holds."""
    _check_field(rep, q.premises + ((q.conclusion,) if q.conclusion is not None else ()))
    nx, ny = _dims(nx, ny, q)
    ev = _PointwiseEvaluator(rep)
    for pt in enumerate_points(rep, nx, ny, max_points):
        if not all(ev.group_holds(pt, f) for f in q.group_premises):
            continue
        if not all(ev.vanishes(pt, w) for w in q.premises):
            continue
        if q.conclusion is not None:
            if not ev.vanishes(pt, q.conclusion):
                return False
        elif not ev.group_holds(pt, q.group_conclusion):
            return False
    return True


def find_counterexample(rep, q, nx=None, ny=None, max_points=None):
    """First point violating the quasi-identity, or None."""
    nx, ny = _dims(nx, ny, q)
    ev = _PointwiseEvaluator(rep)
    for pt in enumerate_points(rep, nx, ny, max_points):
        if all(ev.group_holds(pt, f) for f in q.group_premises) and all(ev.vanishes(pt, w) for w in q.premises):
            ok = ev.vanishes(pt, q.conclusion) if q.conclusion is not None else ev.group_holds(pt, q.group_conclusion)
            if not ok:
                return pt
    return None


# ---------------------------------------------------------------- fibre linear algebra

class FibreEngine:
    """Closure computations for a fixed representation and fixed |X|, |Y|.

    For each group assignment beta the images rho(f^beta) of words are
    cached, and the solution space of a set of action equations is
    computed as a left null space.
    """

    def __init__(self, rep, nx, ny, max_points=None):
        budget = DEFAULT_MAX_POINTS if max_points is None else max_points
        if rep.order ** ny > budget:
            raise BudgetExceeded(f"{rep.order ** ny} group assignments exceed budget {budget}")
        self.rep = rep
        self.nx = nx
        self.ny = ny
        self.p = rep.p
        self.d = rep.action_dim
        self.betas = list(itertools.product(range(rep.order), repeat=ny))
        self._word_elems = {}
        self._word_mats = {}
        self._module_mats = {}

    def word_elements(self, f):
        e = self._word_elems.get(f)
        if e is None:
            e = np.array([eval_word(self.rep, b, f) for b in self.betas], dtype=np.int64)
            self._word_elems[f] = e
        return e

    def word_images(self, f):
        m = self._word_mats.get(f)
        if m is None:
            m = self.rep.actions[self.word_elements(f)]
            self._word_mats[f] = m
        return m

    def ring_images(self, u):
        total = np.zeros((len(self.betas), self.d, self.d), dtype=np.int64)
        for w, c in u.terms.items():
            total += int(c) * self.word_images(w)
        return total % self.p

    def module_matrix(self, w):
        """Stacked ``(n_beta, nx*d, d)``: value at (alpha, beta) is ``alpha_flat @ M[beta]``."""
        m = self._module_mats.get(w)
        if m is None:
            if w.max_x() > self.nx or w.max_y() > self.ny:
                raise ValueError(f"{w} uses variables outside |X|={self.nx}, |Y|={self.ny}")
            m = np.zeros((len(self.betas), self.nx * self.d, self.d), dtype=np.int64)
            for k, u in w.components.items():
                m[:, (k - 1) * self.d:k * self.d, :] = self.ring_images(u)
            self._module_mats[w] = m
        return m

    def group_mask(self, words):
        mask = np.ones(len(self.betas), dtype=bool)
        for f in words:
            mask &= self.word_elements(f) == 0
        return mask

    def fibres(self, T):
        """List of ``(beta_index, alpha_basis)``: the algebraic set of T is the
        union of ``{beta} x span(alpha_basis)`` over admissible betas."""
        T = _as_equations(T)
        _check_field(self.rep, T.action)
        mask = self.group_mask(T.group)
        n = self.nx * self.d
        if T.action:
            stacked = np.concatenate([self.module_matrix(w) for w in T.action], axis=2)
        out = []
        for b in np.nonzero(mask)[0]:
            if not T.action or n == 0:
                basis = np.eye(n, dtype=np.int64)
            else:
                basis = nullspace_mod_p(stacked[b].T, self.p, n)
            out.append((int(b), basis))
        return out

    def point_count(self, T):
        return sum(self.p ** len(basis) for _, basis in self.fibres(T))

    def member(self, fibres, w0):
        m = self.module_matrix(w0)
        for b, basis in fibres:
            if len(basis) and (basis @ m[b] % self.p).any():
                return False
        return True

    def group_member(self, fibres, f0):
        # (0, beta) always solves the action equations, so every admissible beta counts
        e = self.word_elements(f0)
        return all(e[b] == 0 for b, _ in fibres)

    def fibres_key(self, fibres):
        return tuple((b, basis.tobytes()) for b, basis in fibres)

    def evaluation_rows(self, fibres, words):
        """Row space E whose kernel is the closure restricted to the window
        ``sum_k x_k o span(words)``; columns are ordered (k, word)."""
        d, nx = self.d, self.nx
        if not words:
            return np.zeros((0, 0), dtype=np.int64)
        imgs = np.stack([self.word_images(f) for f in words], axis=1)  # (n_beta, n_words, d, d)
        blocks = []
        for b, basis in fibres:
            if not len(basis) or d == 0:
                continue
            alphas = basis.reshape(len(basis), nx, d)
            # rows[a, j, k, f] = sum_i alpha[a, k, i] * img[b, f, i, j]
            rows = np.einsum("aki,fij->ajkf", alphas, imgs[b]) % self.p
            blocks.append(rows.reshape(len(basis) * d, nx * len(words)))
        if not blocks:
            return np.zeros((0, nx * len(words)), dtype=np.int64)
        return rref_mod_p(np.concatenate(blocks, axis=0), self.p)[0]


def fibres(rep, T, nx=None, ny=None, max_points=None):
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    return FibreEngine(rep, nx, ny, max_points).fibres(T)


def closure_member(rep, T, w0, nx=None, ny=None, max_points=None):
    """True when w0 vanishes on the whole algebraic set of T."""
    T = _as_equations(T)
    _check_field(rep, (w0,))
    nx, ny = _dims(nx, ny, T, w0)
    eng = FibreEngine(rep, nx, ny, max_points)
    return eng.member(eng.fibres(T), w0)


def group_closure_member(rep, T, f0, nx=None, ny=None, max_points=None):
    """Second component of the two-sided closure: ``f0^beta = 1`` on T'."""
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    ny = max(ny, f0.max_generator())
    eng = FibreEngine(rep, nx, ny, max_points)
    return eng.group_member(eng.fibres(T), f0)


def is_group_identity(rep, f, ny=None):
    ny = f.max_generator() if ny is None else ny
    return all(eval_word(rep, beta, f) == 0 for beta in itertools.product(range(rep.order), repeat=ny))


def group_identities(rep, ny, max_len):
    """Nontrivial words of length <= max_len that are identities of G."""
    return [f for f in all_words(ny, max_len) if f and is_group_identity(rep, f, ny)]


def group_identities_redundant(rep, T, nx=None, ny=None, identity_len=3, max_points=None):
    """Adding the group identities of G to T leaves its algebraic set unchanged.

    Identities are truncated to words of length <= identity_len.
    """
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    ids = group_identities(rep, ny, identity_len)
    lhs = algebraic_set(rep, EquationSet(T.action, ids), nx, ny, max_points)
    rhs = algebraic_set(rep, EquationSet(T.action), nx, ny, max_points)
    return lhs == rhs


# ---------------------------------------------------------------- finite families and signatures

def candidate_family(field, nx, ny, max_len):
    """Deterministic family of module elements with words of length <= max_len.

    Each member is supported on one module generator: monomials ``x_k o f``
    and binomials ``x_k o (g - c f)`` with ``f < g`` and ``c != 0``, sorted
    by summed word length, then generator, then words, then coefficient.
    """
    words = all_words(ny, max_len)
    if field.char:
        coeffs = list(range(1, field.char))
    else:
        coeffs = [1, -1]
    items = []
    for k in range(1, nx + 1):
        for f in words:
            items.append(((len(f), k, f.sort_key(), (), 0), FreeModuleElement(field, {k: GroupRingElement.from_word(field, f)})))
        for f, g in itertools.combinations(words, 2):
            for c in coeffs:
                u = GroupRingElement(field, {g: 1, f: -c})
                items.append(((len(f) + len(g), k, g.sort_key(), f.sort_key(), c), FreeModuleElement(field, {k: u})))
    items.sort(key=lambda t: t[0])
    return [w for _, w in items]


def _coefficient_matrix(elements, nx, words):
    col = {f: i for i, f in enumerate(words)}
    n = len(words)
    c = np.zeros((len(elements), nx * n), dtype=np.int64)
    for r, w in enumerate(elements):
        for k, u in w.components.items():
            for f, a in u.terms.items():
                c[r, (k - 1) * n + col[f]] = int(a)
    return c


def _membership(rows, cmat, p):
    if rows.shape[0] == 0:
        return np.ones(cmat.shape[0], dtype=bool)
    return ~((rows @ cmat.T) % p).any(axis=0)


def closed_submodule_signature(rep, T, max_len, nx=None, ny=None, max_points=None):
    """Closure-membership bits over :func:`candidate_family`."""
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    words = all_words(ny, max_len)
    eng = FibreEngine(rep, nx, ny, max_points)
    fam = candidate_family(rep.field, nx, ny, max_len)
    rows = eng.evaluation_rows(eng.fibres(T), words)
    bits = _membership(rows, _coefficient_matrix(fam, nx, words), rep.p)
    return tuple(bool(b) for b in bits)


def closed_window(rep, T, max_len, nx=None, ny=None, max_points=None):
    """Canonical RREF of the evaluation row space; its kernel is the closure
    of T intersected with the words of length <= max_len."""
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    eng = FibreEngine(rep, nx, ny, max_points)
    return eng.evaluation_rows(eng.fibres(T), all_words(ny, max_len))


def closure_basis(rep, T, max_len, nx=None, ny=None, max_points=None):
    """Basis of the closure of T restricted to words of length <= max_len."""
    T = _as_equations(T)
    nx, ny = _dims(nx, ny, T)
    words = all_words(ny, max_len)
    rows = closed_window(rep, T, max_len, nx, ny, max_points)
    ncols = nx * len(words)
    if rows.shape[0]:
        vecs = nullspace_mod_p(rows, rep.p, ncols)
    else:
        vecs = np.eye(ncols, dtype=np.int64)
    return [_vector_to_element(rep.field, [int(x) for x in v], nx, words) for v in vecs]


# ---------------------------------------------------------------- refuter

@dataclass
class Witness:
    premises: tuple
    conclusion: FreeModuleElement
    closed_in: int  # 1 or 2: the side where the conclusion lies in the closure

    def quasi_identity(self):
        return QuasiIdentity(self.premises, self.conclusion)


@dataclass
class RefutationResult:
    witness: Optional[Witness]
    sampled: bool
    candidates_checked: int
    candidates_total: int
    seed: Optional[int] = None
    notes: list = dc_field(default_factory=list)


def _subset_key(family_sizes, subset):
    return (len(subset), sum(family_sizes[i] for i in subset), subset)


def candidate_premise_sets(family, max_premises, budget, seed):
    """Premise index tuples in refuter order; seeded sample beyond budget.

    A budget of None means no limit. Returns ``(subsets, total, sampled)``.
    """
    n = len(family)
    total = sum(comb(n, j) for j in range(max_premises + 1))
    sizes = [sum(len(f) for u in w.components.values() for f in u.terms) for w in family]
    if budget is None or total <= budget:
        subsets = [s for j in range(max_premises + 1) for s in itertools.combinations(range(n), j)]
        subsets.sort(key=lambda s: _subset_key(sizes, s))
        return subsets, total, False
    rng = random.Random(seed)
    chosen = {()}
    while len(chosen) < budget:
        j = rng.randint(1, max_premises)
        chosen.add(tuple(sorted(rng.sample(range(n), j))))
    subsets = sorted(chosen, key=lambda s: _subset_key(sizes, s))
    return subsets, total, True


class _Side:
    def __init__(self, rep, nx, ny, words, max_points):
        self.eng = FibreEngine(rep, nx, ny, max_points)
        self.words = words
        self.cache = {}

    def window(self, T):
        fib = self.eng.fibres(T)
        key = self.eng.fibres_key(fib)
        rows = self.cache.get(key)
        if rows is None:
            rows = self.eng.evaluation_rows(fib, self.words)
            self.cache[key] = rows
        return rows


def _scan(rep1, rep2, nx, ny, max_len, family, subsets, max_points):
    """Return (position, conclusion_index_or_vector, side) of the first witness in ``subsets``."""
    words = all_words(ny, max_len)
    s1 = _Side(rep1, nx, ny, words, max_points)
    s2 = _Side(rep2, nx, ny, words, max_points)
    cmat = _coefficient_matrix(family, nx, words)
    p = rep1.p
    for pos, subset in enumerate(subsets):
        T = EquationSet([family[i] for i in subset])
        r1, r2 = s1.window(T), s2.window(T)
        if r1.shape == r2.shape and np.array_equal(r1, r2):
            continue
        m1 = _membership(r1, cmat, p)
        m2 = _membership(r2, cmat, p)
        diff = np.nonzero(m1 != m2)[0]
        if diff.size:
            i = int(diff[0])
            return pos, ("family", i), 1 if m1[i] else 2
        # windows differ but no family member separates them: use a kernel vector
        ncols = nx * len(words)
        for side, (ra, rb) in ((1, (r1, r2)), (2, (r2, r1))):
            ker = nullspace_mod_p(ra, p, ncols) if ra.shape[0] else np.eye(ncols, dtype=np.int64)
            for v in ker:
                if rb.shape[0] and (rb @ v % p).any():
                    return pos, ("vector", tuple(int(x) for x in v)), side
    return None


def _scan_chunk(args):
    return _scan(*args)


def _vector_to_element(field, vec, nx, words):
    n = len(words)
    comps = {}
    for k in range(1, nx + 1):
        terms = {words[j]: vec[(k - 1) * n + j] for j in range(n) if vec[(k - 1) * n + j]}
        if terms:
            comps[k] = GroupRingElement(field, terms)
    return FreeModuleElement(field, comps)


def refute_equivalence(rep1, rep2, nx=1, ny=1, max_premises=1, max_len=2,
                       budget=DEFAULT_MAX_CANDIDATES, seed=0, workers=1, max_points=None):
    """Search for premises T and a conclusion w0 whose closure membership
    differs between the two representations.

    A returned witness certifies that the representations are not
    action-type geometrically equivalent; ``witness is None`` is
    inconclusive. The result is independent of ``workers``.
    """
    if rep1.p != rep2.p:
        raise FieldMismatch(f"representations over GF({rep1.p}) and GF({rep2.p})")
    field = rep1.field
    family = candidate_family(field, nx, ny, max_len)
    subsets, total, sampled = candidate_premise_sets(family, max_premises, budget, seed)
    words = all_words(ny, max_len)

    found = None
    if workers <= 1 or len(subsets) < 2 * workers:
        found = _scan(rep1, rep2, nx, ny, max_len, family, subsets, max_points)
    else:
        nchunks = workers * 4
        size = -(-len(subsets) // nchunks)
        chunks = [subsets[i:i + size] for i in range(0, len(subsets), size)]
        args = [(rep1, rep2, nx, ny, max_len, family, c, max_points) for c in chunks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            offset = 0
            for chunk, res in zip(chunks, pool.map(_scan_chunk, args)):
                if res is not None:
                    found = (offset + res[0],) + res[1:]
                    break
                offset += len(chunk)

    if found is None:
        return RefutationResult(None, sampled, len(subsets), total, seed if sampled else None)
    pos, (kind, data), side = found
    premises = tuple(family[i] for i in subsets[pos])
    w0 = family[data] if kind == "family" else _vector_to_element(field, data, nx, words)
    return RefutationResult(Witness(premises, w0, side), sampled, pos + 1, total, seed if sampled else None)
