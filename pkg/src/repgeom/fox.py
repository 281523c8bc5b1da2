"""Augmentation, Fox derivatives, the Fox-Taylor expansion and truncation
modulo powers of the augmentation ideal.

Conventions: ``d_i(uv) = d_i(u) + u*d_i(v)``, ``d_i(y_j) = delta_ij``, so that

    u - aug(u) = sum_i d_i(u) * (y_i - 1).

The iterated derivative for an index sequence ``(i1, ..., is)`` is
``d_i1(d_i2(...d_is(u)))``: the *last* index is applied first. With that
order the coefficient of ``(y_i1 - 1)...(y_is - 1)`` in the Taylor
expansion is exactly ``d_(i1..is)(u)``.
"""

import itertools
from functools import reduce

from .errors import IndexOutOfRange
from .ring import GroupRingElement
from .words import Word


def augment(u):
    """Sum of coefficients: the ring map KF(Y) -> K sending every word to 1."""
    f = u.field
    return f(sum(u.terms.values()))


def _derive_word(i, w):
    # d_i of a single reduced word: one term per occurrence of y_i or y_i^-1
    letters = w.letters
    for pos, a in enumerate(letters):
        if a == i:
            yield Word(letters[:pos], reduced=True), 1
        elif a == -i:
            yield Word(letters[:pos + 1], reduced=True), -1


def fox_derive(i, u, m=None):
    if i < 1 or (m is not None and i > m):
        raise IndexOutOfRange(f"generator index {i} out of range 1..{m}")
    f = u.field
    acc = {}
    for w, c in u.terms.items():
        for prefix, sign in _derive_word(i, w):
            acc[prefix] = acc.get(prefix, 0) + sign * c
    return GroupRingElement(f, acc)


def iterated_fox(indices, u, m=None):
    """``d_(i1,...,is)(u) = d_i1(...d_is(u))``."""
    indices = tuple(indices)
    if not indices:
        raise ValueError("iterated_fox needs a non-empty index sequence")
    for i in reversed(indices):
        u = fox_derive(i, u, m)
    return u


def _iterated_table(u, m, depth):
    """Map every index sequence of length <= depth to its iterated derivative.

    Sequences are extended on the left, reusing the derivative of the suffix.
    """
    table = {(): u}
    layer = {(): u}
    for _ in range(depth):
        nxt = {}
        for seq, v in layer.items():
            for i in range(1, m + 1):
                d = fox_derive(i, v) if v else v
                nxt[(i,) + seq] = d
        table.update(nxt)
        layer = nxt
    return table


def infer_rank(u, m=None):
    return m if m is not None else max(u.max_generator(), 1)


def index_sequences(m, length):
    return list(itertools.product(range(1, m + 1), repeat=length))


def taylor_expand(w, k, m=None):
    """Return ``(head, tail)``.

    ``head`` maps sequences of length < k to the augmented derivative,
    ``tail`` maps sequences of length k to the full derivative. Zero entries
    are omitted from both maps.
    """
    if k < 1:
        raise ValueError("taylor_expand needs k >= 1")
    m = infer_rank(w, m)
    table = _iterated_table(w, m, k)
    head = {}
    tail = {}
    for seq, v in table.items():
        if len(seq) < k:
            c = augment(v)
            if c:
                head[seq] = c
        elif v:
            tail[seq] = v
    return head, tail


def augmentation_monomial(field, seq):
    """``(y_i1 - 1)(y_i2 - 1)...`` for an index sequence."""
    one = GroupRingElement.one(field)
    return reduce(lambda acc, i: acc * (GroupRingElement.gen(field, i) - one), seq, one)


def taylor_reconstruct(field, head, tail):
    total = GroupRingElement.zero(field)
    for seq, c in head.items():
        total = total + augmentation_monomial(field, seq).scale(c)
    for seq, v in tail.items():
        total = total + v * augmentation_monomial(field, seq)
    return total


class TruncatedElement:
    """Image of an element of KF(Y) in KF(Y)/A^n, A the augmentation ideal.

    Coordinates are indexed by sequences of length < n and refer to the
    basis monomials ``(y_i1 - 1)...(y_ik - 1)``.
    """

    __slots__ = ("field", "m", "n", "coords")

    def __init__(self, field, m, n, coords=None):
        if n < 1:
            raise ValueError("degree bound must be positive")
        self.field = field
        self.m = m
        self.n = n
        clean = {}
        for seq, c in (coords or {}).items():
            seq = tuple(seq)
            if len(seq) >= n or any(not 1 <= i <= m for i in seq):
                raise IndexOutOfRange(f"index sequence {seq} outside the truncated basis")
            c = field(c)
            if c:
                clean[seq] = c
        self.coords = clean

    @staticmethod
    def basis(m, n):
        """Basis index sequences, by length then lexicographic."""
        out = []
        for k in range(n):
            out.extend(index_sequences(m, k))
        return out

    @staticmethod
    def dimension(m, n):
        return sum(m ** k for k in range(n))

    def vector(self):
        z = self.field(0)
        return [self.coords.get(seq, z) for seq in self.basis(self.m, self.n)]

    def _same(self, other):
        if (self.field, self.m, self.n) != (other.field, other.m, other.n):
            raise ValueError("truncated elements live in different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coords)
        for s, c in other.coords.items():
            out[s] = out.get(s, 0) + c
        return TruncatedElement(self.field, self.m, self.n, out)

    def __mul__(self, other):
        self._same(other)
        out = {}
        for s1, c1 in self.coords.items():
            for s2, c2 in other.coords.items():
                if len(s1) + len(s2) < self.n:
                    s = s1 + s2
                    out[s] = out.get(s, 0) + c1 * c2
        return TruncatedElement(self.field, self.m, self.n, out)

    def scale(self, c):
        return TruncatedElement(self.field, self.m, self.n, {s: v * c for s, v in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def lift(self):
        """A preimage in KF(Y): the linear combination of basis monomials."""
        return taylor_reconstruct(self.field, self.coords, {})

    def __eq__(self, other):
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return (self.field, self.m, self.n, self.coords) == (other.field, other.m, other.n, other.coords)

    def __hash__(self):
        return hash((self.field, self.m, self.n, frozenset(self.coords.items())))

    def __repr__(self):
        return f"TruncatedElement(m={self.m}, n={self.n}, {self.coords})"

    def __str__(self):
        if not self.coords:
            return "0"
        out = ""
        for seq in self.basis(self.m, self.n):
            if seq not in self.coords:
                continue
            c = self.field.signed(self.coords[seq])
            mag = -c if c < 0 else c
            mono = "*".join(f"(y{i} - 1)" for i in seq)
            body = str(mag) if not seq else mono if mag == 1 else f"{mag}*{mono}"
            if out:
                out += (" - " if c < 0 else " + ") + body
            else:
                out = ("-" if c < 0 else "") + body
        return out


def truncate(u, n, m=None):
    """Coordinates of ``u`` modulo the n-th power of the augmentation ideal: augmented iterated derivatives."""
    if n < 1:
        raise ValueError("truncate needs n >= 1")
    m = infer_rank(u, m)
    if u.max_generator() > m:
        raise IndexOutOfRange(f"element uses y{u.max_generator()} but m = {m}")
    table = _iterated_table(u, m, n - 1)
    coords = {seq: augment(v) for seq, v in table.items()}
    return TruncatedElement(u.field, m, n, coords)
