"""Exact Gaussian elimination.

Two independent routes: a generic pure-Python one that works over any
:class:`~repgeom.field.Field` (used for Q and as a reference), and a numpy
int64 route for prime fields (used on the hot paths of the geometry
engine). Row-echelon forms are fully reduced, so the RREF of a row space
is a canonical key for the subspace.
"""

import itertools

import numpy as np

from .errors import SingularMatrix
from .field import PrimeField


# ---------------------------------------------------------------- generic

def rref(rows, field, ncols=None):
    """Reduced row echelon form. Returns ``(basis_rows, pivot_columns)``."""
    mat = [[field(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field(x * inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                factor = mat[i][c]
                mat[i] = [field(a - factor * b) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows, field, ncols=None):
    return len(rref(rows, field, ncols)[0])


def nullspace(rows, field, ncols):
    """Basis of ``{x : M x = 0}`` for the matrix with the given rows."""
    basis, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [field(0)] * ncols
        v[fc] = field(1)
        for row, pc in zip(basis, pivots):
            v[pc] = field(-row[fc])
        out.append(tuple(v))
    return out


def left_nullspace(rows, field):
    """Basis of ``{y : y M = 0}``."""
    if not rows:
        return []
    return nullspace(transpose(rows), field, len(rows))


def transpose(rows):
    return [tuple(col) for col in zip(*rows)]


def in_span(vector, basis, field):
    if not basis:
        return all(field(x) == 0 for x in vector)
    return rank(list(basis) + [vector], field) == rank(basis, field)


def reduce_by(vector, basis, pivots, field):
    """Remainder of ``vector`` against an RREF basis (zero iff in the span)."""
    v = [field(x) for x in vector]
    for row, pc in zip(basis, pivots):
        c = v[pc]
        if c:
            v = [field(a - c * b) for a, b in zip(v, row)]
    return tuple(v)


def solve(rows, rhs, field):
    """One solution ``x`` of ``M x = rhs`` or ``None``."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    basis, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field(0)] * ncols
    for row, pc in zip(basis, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def mat_mul(a, b, field):
    bt = list(zip(*b)) if b else []
    return tuple(tuple(field(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a)


def vec_mat(v, m, field):
    if not m:
        return ()
    return tuple(field(sum(x * m[i][j] for i, x in enumerate(v))) for j in range(len(m[0])))


def identity(n, field):
    return tuple(tuple(field(1 if i == j else 0) for j in range(n)) for i in range(n))


def inverse(m, field):
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(n, field))]
    basis, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)) or len(basis) < n:
        raise SingularMatrix("matrix is singular")
    return tuple(tuple(row[n:]) for row in basis)


def enumerate_subspaces(field, n):
    """Every subspace of K^n for finite K, as canonical RREF bases."""
    p = field.p
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free_slots)):
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free_slots, values):
                    rows[r][c] = v
                out.append(tuple(tuple(r) for r in rows))
    return out


# ---------------------------------------------------------------- numpy, prime fields

def rref_mod_p(mat, p):
    """RREF of an integer matrix over GF(p). Returns ``(basis, pivots)`` as an
    int64 array with only the nonzero rows, and the pivot column list."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        a = a.reshape(0, 0) if a.size == 0 else a.reshape(1, -1)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_mod_p(mat, p, ncols=None):
    a = np.array(mat, dtype=np.int64)
    if ncols is None:
        ncols = a.shape[1]
    a = a.reshape(-1, ncols)
    basis, pivots = rref_mod_p(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for j, fc in enumerate(free):
        out[j, fc] = 1
        for row, pc in zip(basis, pivots):
            out[j, pc] = (-row[fc]) % p
    return out


def rank_mod_p(mat, p):
    return len(rref_mod_p(mat, p)[1])


def is_prime_field(field):
    return isinstance(field, PrimeField)
