"""Exact coefficient fields: prime fields GF(p) and the rationals."""

from fractions import Fraction

from .errors import FieldMismatch


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """Base class. Scalars are plain Python numbers in canonical form:
    ints in ``range(p)`` for GF(p), ``Fraction`` for Q."""

    char = 0

    def __call__(self, value):
        raise NotImplementedError

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def inv(self, a):
        raise NotImplementedError

    def neg(self, a):
        return self(-a)

    def check_same(self, other):
        if self != other:
            raise FieldMismatch(f"field mismatch: {self} vs {other}")

    def elements(self):
        raise TypeError(f"{self} is infinite")

    def signed(self, a):
        """Representative used for printing."""
        return a


class PrimeField(Field):
    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __call__(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p)

    def elements(self):
        return range(self.p)

    def signed(self, a):
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Rationals(Field):
    char = 0

    def __call__(self, value):
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = Rationals()


def GF(p):
    return PrimeField(p)


def field_from_spec(spec):
    """``"q"``/``"Q"`` gives the rationals, a prime number gives GF(p)."""
    if isinstance(spec, Field):
        return spec
    text = str(spec).strip()
    if text.lower() in ("q", "qq", "rationals"):
        return QQ
    return PrimeField(int(text))
