"""Shared builders, random generators and slow reference oracles for the tests."""

import itertools
import random

from repgeom.field import GF
from repgeom.linalg import rank
from repgeom.errors import GroupTooLarge
from repgeom.representation import generate
from repgeom.ring import FreeModuleElement, GroupRingElement
from repgeom.words import Word, random_word


def negation_c2(p=3):
    """C2 acting on GF(p) by -1."""
    return generate(p, [[[p - 1]]], [[[p - 1]]])


def trivial_action_c2(p=3):
    """C2 (realized by -1) acting trivially on GF(p)."""
    return generate(p, [[[p - 1]]], [[[1]]])


def trivial_group(p=3, d=1):
    return generate(p, [], [], group_dim=1, action_dim=d)


def cyclic_regular(p, n):
    """C_n acting on GF(p)^n by cyclic shift (faithful)."""
    shift = [[1 if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)]
    return generate(p, [shift], [shift])


def _random_invertible(rng, p, d):
    while True:
        m = [[rng.randrange(p) for _ in range(d)] for _ in range(d)]
        if rank([tuple(r) for r in m], GF(p), d) == d:
            return m


def _block(a, b):
    n, k = len(a), len(b)
    return [list(a[i]) + [0] * k for i in range(n)] + [[0] * n + list(b[i]) for i in range(k)]


def random_rep(rng, p, max_dim=2, max_order=8, ngens=None, extra=True, tries=200):
    """Random small representation. The group matrices carry an extra
    random block so the action may have a nontrivial kernel."""
    for _ in range(tries):
        d = rng.randint(1, max_dim)
        k = ngens if ngens is not None else rng.randint(1, 2)
        acts = [_random_invertible(rng, p, d) for _ in range(k)]
        if extra and rng.random() < 0.6:
            e = rng.randint(1, 2)
            grp = [_block(a, _random_invertible(rng, p, e)) for a in acts]
        else:
            grp = acts
        try:
            rep = generate(p, grp, acts, bound=max_order)
        except GroupTooLarge:
            continue
        return rep
    raise RuntimeError("could not build a small representation")


def random_non_faithful_rep(rng, p, max_order=8):
    """Random representation whose action kernel is nontrivial."""
    while True:
        rep = random_rep(rng, p, max_dim=2, max_order=max_order, extra=True)
        if not rep.is_faithful():
            return rep


def random_ring_element(rng, field, ny, max_len, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(rng, ny, max_len)
        terms[w] = rng.randint(-2, 2) or 1
    return GroupRingElement(field, terms)


def random_module_element(rng, field, nx, ny, max_len, max_terms=3):
    comps = {}
    for k in range(1, nx + 1):
        if rng.random() < 0.7 or k == 1:
            comps[k] = random_ring_element(rng, field, ny, max_len, max_terms)
    return FreeModuleElement(field, comps)


def random_equations(rng, field, nx, ny, max_len, count):
    return [random_module_element(rng, field, nx, ny, max_len) for _ in range(count)]


# ---------------------------------------------------------------- reference oracles


def naive_reduce(letters):
    """Free reduction by repeated left-to-right scans (confluence oracle)."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)


def matmul(a, b, p):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0]))] for i in range(len(a))]


def slow_eval(rep, alpha, beta, w):
    """Evaluate a module element by substituting matrices letter by letter."""
    p = rep.p
    d = rep.action_dim
    total = [0] * d
    for k, u in w.components.items():
        vec = list(alpha[k - 1])
        for word, c in u.terms.items():
            m = [[int(i == j) for j in range(d)] for i in range(d)]
            for a in word.letters:
                g = beta[abs(a) - 1]
                if a < 0:
                    g = rep.inv(g)
                m = matmul(m, [list(r) for r in rep.action_matrix(g)], p)
            img = [sum(vec[i] * m[i][j] for i in range(d)) for j in range(d)]
            total = [(t + int(c) * x) % p for t, x in zip(total, img)]
    return tuple(total)


def all_vectors(p, n):
    return list(itertools.product(range(p), repeat=n))


def seeded(seed):
    return random.Random(seed)
