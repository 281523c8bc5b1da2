import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from repgeom.errors import FieldMismatch
from repgeom.field import GF, QQ, field_from_spec
from repgeom.parser import parse_module_expr, parse_ring_expr
from repgeom.ring import FreeModuleElement, GroupRingElement, format_ring
from repgeom.words import Word, all_words, word_invert, word_multiply

from support import naive_reduce

F3 = GF(3)
F5 = GF(5)

letters = st.integers(min_value=-3, max_value=3).filter(bool)
raw_words = st.lists(letters, max_size=10)
words = raw_words.map(Word)
fields = st.sampled_from([QQ, F3, F5])


@st.composite
def ring_elements(draw, field=None, max_support=6, max_len=6):
    field = field or draw(fields)
    n = draw(st.integers(0, max_support))
    terms = {}
    for _ in range(n):
        w = Word(draw(st.lists(letters, max_size=max_len)))
        terms[w] = draw(st.integers(-4, 4))
    return GroupRingElement(field, terms)


@st.composite
def ring_triples(draw):
    f = draw(fields)
    return tuple(draw(ring_elements(field=f)) for _ in range(3))


@st.composite
def module_elements(draw, field, max_x=3):
    comps = {}
    for k in range(1, draw(st.integers(0, max_x)) + 1):
        comps[k] = draw(ring_elements(field=field, max_support=3, max_len=4))
    return FreeModuleElement(field, comps)


def y(i, e=1, field=QQ):
    return GroupRingElement.gen(field, i, e)


# ---------------------------------------------------------------- words


def test_word_examples():
    assert word_multiply(Word([1, -1]), Word()) == Word()
    assert Word([1, 2]) * Word([-2, 1]) == Word([1, 1])
    assert word_invert(Word()) == Word()
    assert word_invert(Word([1, -2])) == Word([2, -1])
    assert str(Word([1, 1, -2])) == "y1^2*y2^-1"
    assert str(Word()) == "1"


@given(raw_words)
def test_reduction_matches_naive_scanner(raw):
    assert Word(raw).letters == naive_reduce(raw)


@given(raw_words, raw_words)
def test_product_reduces_the_concatenation(a, b):
    assert (Word(a) * Word(b)).letters == naive_reduce(a + b)


@settings(max_examples=100)
@given(words, words, words)
def test_word_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100)
@given(words)
def test_word_inverse(a):
    assert a * a.inverse() == Word()
    assert a.inverse() * a == Word()


def test_all_words_are_shortlex_and_counted():
    ws = all_words(2, 3)
    assert len(ws) == 1 + 4 + 12 + 36
    assert ws == sorted(ws)
    assert len(set(ws)) == len(ws)


def test_word_pickles():
    w = Word([1, -2, 3])
    assert pickle.loads(pickle.dumps(w)) == w


# ---------------------------------------------------------------- group ring


def test_ring_examples():
    one = GroupRingElement.one(QQ)
    assert (y(1) - one) * (y(1) + one) == y(1, 2) - one
    assert (y(1) - one) * GroupRingElement.zero(QQ) == 0
    assert (y(1) - one) * y(1, -1) == one - y(1, -1)


def test_zero_coefficients_are_dropped():
    u = GroupRingElement(F3, {Word([1]): 3, Word(): 1})
    assert u.terms == {Word(): 1}
    assert (y(1, field=F3) - y(1, field=F3)).terms == {}


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        y(1, field=F3) + y(1, field=F5)
    with pytest.raises(FieldMismatch):
        y(1, field=F3) * y(1, field=QQ)


@settings(max_examples=60, deadline=None)
@given(ring_triples())
def test_ring_axioms(t):
    a, b, c = t
    one = GroupRingElement.one(a.field)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * one == a == one * a
    assert a + b == b + a
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(ring_elements(), st.integers(-5, 5))
def test_scaling_is_multiplication_by_a_constant(a, c):
    assert a.scale(c) == a * GroupRingElement.scalar(a.field, c)


# ---------------------------------------------------------------- module


def test_module_examples():
    x1 = FreeModuleElement.basis(QQ, 1)
    one = GroupRingElement.one(QQ)
    w = FreeModuleElement(QQ, {1: y(1), 2: y(2) - one})
    assert w.act(one) == w
    assert x1.act(y(1) - one) == FreeModuleElement(QQ, {1: y(1) - one})
    assert FreeModuleElement.zero(QQ).components == {}


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_module_axioms(data):
    f = data.draw(fields)
    w1 = data.draw(module_elements(f))
    w2 = data.draw(module_elements(f))
    u = data.draw(ring_elements(field=f, max_support=3, max_len=4))
    v = data.draw(ring_elements(field=f, max_support=3, max_len=4))
    assert w1.act(u).act(v) == w1.act(u * v)
    assert w1.act(GroupRingElement.one(f)) == w1
    assert (w1 + w2).act(u) == w1.act(u) + w2.act(u)
    assert w1.act(u + v) == w1.act(u) + w1.act(v)


# ---------------------------------------------------------------- text form


def test_canonical_text():
    assert format_ring(y(1) - 1) == "y1 - 1"
    assert str(GroupRingElement.zero(QQ)) == "0"
    u = parse_ring_expr("2*y1 - 1 + y2*y1", QQ)
    assert str(u) == "y2*y1 + 2*y1 - 1"
    w = parse_module_expr("x1 o (y1 - 1) + x2 o (3*y2)", QQ)
    assert str(w) == "x1 o (y1 - 1) + x2 o (3*y2)"
    # over GF(p) coefficients print as the smallest signed residue
    assert str(parse_ring_expr("4*y1", F5)) == "-y1"


@settings(max_examples=200, deadline=None)
@given(ring_elements())
def test_ring_round_trip(u):
    assert parse_ring_expr(str(u), u.field) == u


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_module_round_trip(data):
    f = data.draw(fields)
    w = data.draw(module_elements(f))
    assert parse_module_expr(str(w), f) == w


def test_rational_coefficients():
    u = parse_ring_expr("1/2*y1 - 3/4", QQ)
    assert u.coefficient(Word([1])) == Fraction(1, 2)
    assert parse_ring_expr(str(u), QQ) == u
    # over GF(5) a rational literal is read through the inverse of its denominator
    assert parse_ring_expr("1/2", F5) == GroupRingElement.scalar(F5, 3)


def test_field_from_spec():
    assert field_from_spec("q") is QQ
    assert field_from_spec("7") == GF(7)
    with pytest.raises(ValueError):
        field_from_spec("6")
