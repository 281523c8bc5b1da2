"""Freely reduced words in the free group F(y1, ..., ym).

A letter is a nonzero int: ``i`` stands for ``y_i`` and ``-i`` for its inverse.
"""

import random


def free_reduce(letters):
    out = []
    for a in letters:
        if a == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _letter_key(a):
    # generator index ascending, positive before inverse
    return (abs(a), 0 if a > 0 else 1)


class Word:
    """Immutable reduced word. ``Word()`` is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters=(), reduced=False):
        letters = tuple(int(a) for a in letters)
        if not reduced:
            letters = free_reduce(letters)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_hash", hash(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.letters, True))

    @classmethod
    def gen(cls, i, exponent=1):
        if i < 1:
            raise ValueError("generator indices start at 1")
        a = i if exponent > 0 else -i
        return cls((a,) * abs(exponent), reduced=True)

    @classmethod
    def identity(cls):
        return _IDENTITY

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        a, b = self.letters, other.letters
        # cancel at the seam only; both sides are already reduced
        i = 0
        n = min(len(a), len(b))
        while i < n and a[len(a) - 1 - i] == -b[i]:
            i += 1
        return Word(a[:len(a) - i] + b[i:], reduced=True)

    def inverse(self):
        return Word(tuple(-a for a in reversed(self.letters)), reduced=True)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _IDENTITY
        for _ in range(n):
            out = out * self
        return out

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self):
        return not self.letters

    def max_generator(self):
        return max((abs(a) for a in self.letters), default=0)

    def prefixes(self):
        """Yield the prefix words of length 0..len-1."""
        for k in range(len(self.letters)):
            yield Word(self.letters[:k], reduced=True)

    def sort_key(self):
        return (len(self.letters), tuple(_letter_key(a) for a in self.letters))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Word({self})"

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            j = i
            while j < len(letters) and letters[j] == letters[i]:
                j += 1
            run = j - i
            gen = abs(letters[i])
            exp = run if letters[i] > 0 else -run
            parts.append(f"y{gen}" if exp == 1 else f"y{gen}^{exp}")
            i = j
        return "*".join(parts)


_IDENTITY = Word((), reduced=True)


def word_multiply(a, b):
    return a * b


def word_invert(a):
    return a.inverse()


def all_words(m, max_len):
    """All reduced words over y1..ym of length <= max_len, in shortlex order."""
    letters = sorted([i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)], key=_letter_key)
    out = [_IDENTITY]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        out.extend(Word(w, reduced=True) for w in nxt)
        layer = nxt
    return out


def random_word(rng, m, max_len, min_len=0):
    """Random reduced word; the raw letter string is reduced, so it may be shorter."""
    n = rng.randint(min_len, max_len)
    return Word(rng.choice([i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)]) for _ in range(n))


def random_reduced_word(rng: random.Random, m, length):
    """Random word of exactly the given reduced length."""
    out = []
    while len(out) < length:
        a = rng.choice([i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)])
        if out and out[-1] == -a:
            continue
        out.append(a)
    return Word(out, reduced=True)
