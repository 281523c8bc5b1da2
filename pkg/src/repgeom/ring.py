"""The group ring KF(Y) and the free right module XKF(Y).

Both are stored as sparse maps with zero coefficients dropped, so equality
of canonical forms is plain dict equality.
"""

from .errors import FieldMismatch
from .words import Word


class GroupRingElement:
    """Finitely supported map ``Word -> scalar``."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if not isinstance(w, Word):
                    w = Word(w)
                c = field(c)
                if c:
                    s = field(clean.get(w, 0) + c)
                    if s:
                        clean[w] = s
                    else:
                        clean.pop(w, None)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    def __reduce__(self):
        return (GroupRingElement, (self.field, self.terms))

    @classmethod
    def _raw(cls, field, terms):
        # terms already canonical: reduced words, nonzero canonical scalars
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, {})

    @classmethod
    def one(cls, field):
        return cls.scalar(field, 1)

    @classmethod
    def scalar(cls, field, c):
        return cls(field, {Word(): c})

    @classmethod
    def from_word(cls, field, word, coeff=1):
        return cls(field, {word: coeff})

    @classmethod
    def gen(cls, field, i, exponent=1):
        return cls.from_word(field, Word.gen(i, exponent))

    def _check(self, other):
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"expected GroupRingElement, got {type(other).__name__}")
        if self.field != other.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, Word):
            return GroupRingElement.from_word(self.field, other)
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return GroupRingElement.scalar(self.field, other)
        raise TypeError(f"cannot combine GroupRingElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = f(out.get(w, 0) + c)
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return GroupRingElement._raw(f, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return GroupRingElement._raw(f, {w: f(-c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        f = self.field
        c = f(c)
        if not c:
            return GroupRingElement.zero(f)
        return GroupRingElement._raw(f, {w: f(c * a) for w, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (GroupRingElement, Word)):
            if isinstance(other, int) or hasattr(other, "denominator"):
                return self.scale(other)
            return NotImplemented
        other = self._coerce(other)
        f = self.field
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                acc[w] = acc.get(w, 0) + c1 * c2
        out = {}
        for w, c in acc.items():
            c = f(c)
            if c:
                out[w] = c
        return GroupRingElement._raw(f, out)

    def __rmul__(self, other):
        if isinstance(other, Word):
            return GroupRingElement.from_word(self.field, other) * self
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            inv = self.inverse_if_unit_word()
            return inv ** (-n)
        out = GroupRingElement.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def as_word(self):
        """The word if this element is a bare group element (coefficient 1), else None."""
        if len(self.terms) == 1:
            (w, c), = self.terms.items()
            if c == self.field(1):
                return w
        return None

    def inverse_if_unit_word(self):
        w = self.as_word()
        if w is None:
            raise ValueError("only group elements can be inverted")
        return GroupRingElement.from_word(self.field, w.inverse())

    def coefficient(self, word):
        return self.terms.get(word, self.field(0))

    def support(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def max_generator(self):
        return max((w.max_generator() for w in self.terms), default=0)

    def max_length(self):
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"GroupRingElement({self.field}, {self})"

    def __str__(self):
        return format_ring(self)


def format_ring(u):
    """Canonical text: terms in descending shortlex order, e.g. ``y1 - 1``."""
    if not u.terms:
        return "0"
    f = u.field
    pieces = []
    for w in sorted(u.terms, key=Word.sort_key, reverse=True):
        c = f.signed(u.terms[w])
        neg = c < 0
        mag = -c if neg else c
        if w.is_identity():
            body = str(mag)
        elif mag == 1:
            body = str(w)
        else:
            body = f"{mag}*{w}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


class FreeModuleElement:
    """Element ``sum_k x_k o u_k`` of the free right KF(Y)-module on x1, x2, ..."""

    __slots__ = ("field", "components", "_hash")

    def __init__(self, field, components=None):
        clean = {}
        if components:
            items = components.items() if isinstance(components, dict) else components
            for k, u in items:
                k = int(k)
                if k < 1:
                    raise ValueError("module generator indices start at 1")
                if u.field != field:
                    raise FieldMismatch(f"field mismatch: {field} vs {u.field}")
                if k in clean:
                    u = clean[k] + u
                if u:
                    clean[k] = u
                else:
                    clean.pop(k, None)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "components", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FreeModuleElement is immutable")

    def __reduce__(self):
        return (FreeModuleElement, (self.field, self.components))

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def basis(cls, field, k, u=None):
        if u is None:
            u = GroupRingElement.one(field)
        return cls(field, {k: u})

    def _check(self, other):
        if not isinstance(other, FreeModuleElement):
            raise TypeError(f"expected FreeModuleElement, got {type(other).__name__}")
        if self.field != other.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for k, u in other.components.items():
            s = out[k] + u if k in out else u
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FreeModuleElement(self.field, out)

    def __neg__(self):
        return FreeModuleElement(self.field, {k: -u for k, u in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FreeModuleElement(self.field, {k: u.scale(c) for k, u in self.components.items()})

    def act(self, u):
        """Right action ``w o u``."""
        if isinstance(u, Word):
            u = GroupRingElement.from_word(self.field, u)
        if u.field != self.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {u.field}")
        return FreeModuleElement(self.field, {k: a * u for k, a in self.components.items()})

    def __mul__(self, u):
        if isinstance(u, (GroupRingElement, Word)):
            return self.act(u)
        if isinstance(u, int) or hasattr(u, "denominator"):
            return self.scale(u)
        return NotImplemented

    def component(self, k):
        return self.components.get(k, GroupRingElement.zero(self.field))

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def max_x(self):
        return max(self.components, default=0)

    def max_y(self):
        return max((u.max_generator() for u in self.components.values()), default=0)

    def words(self):
        return sorted({w for u in self.components.values() for w in u.terms})

    def __eq__(self, other):
        if isinstance(other, FreeModuleElement):
            return self.field == other.field and self.components == other.components
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field, frozenset(self.components.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"FreeModuleElement({self.field}, {self})"

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"x{k} o ({self.components[k]})" for k in sorted(self.components))


def ring_add(a, b):
    return a + b


def ring_multiply(a, b):
    return a * b


def ring_scale(a, c):
    return a.scale(c)


def module_action(w, u):
    return w.act(u)
