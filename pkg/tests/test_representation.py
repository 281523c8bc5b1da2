import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repgeom.errors import GroupTooLarge, IllDefinedAction, InvalidRepresentation, SingularMatrix
from repgeom.field import GF, QQ
from repgeom.linalg import inverse, nullspace, nullspace_mod_p, rank, rank_mod_p, rref, rref_mod_p, solve
from repgeom.parser import parse_module_expr
from repgeom.repfile import dump_rep, load_rep, rep_from_data, rep_to_data
from repgeom.representation import (
    action_kernel, eval_point, eval_word, faithful_image, generate, is_normal, regular_representation,
    trivial_representation,
)
from repgeom.words import Word, random_word

from support import (
    cyclic_regular, negation_c2, random_module_element, random_rep, slow_eval, trivial_action_c2,
)


def klein_through_first_factor(p=3):
    """C2 x C2 realized by diagonal sign matrices, acting on GF(p) through the first sign."""
    return generate(p, [[[p - 1, 0], [0, 1]], [[1, 0], [0, p - 1]]], [[[p - 1]], [[1]]])


# ---------------------------------------------------------------- generate


def test_generate_examples():
    assert negation_c2().order == 2
    assert generate(3, [[[1]]], [[[1]]]).order == 1
    triv = trivial_action_c2()
    assert triv.order == 2
    assert action_kernel(triv) == [0, 1]


def test_identity_is_element_zero():
    rep = cyclic_regular(2, 3)
    assert rep.elements[0][0] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert all(rep.mul(0, i) == i == rep.mul(i, 0) for i in range(rep.order))


def test_generate_errors():
    with pytest.raises(IllDefinedAction):
        generate(3, [[[1]]], [[[2]]])
    with pytest.raises(SingularMatrix):
        generate(3, [[[0]]], [[[1]]])
    with pytest.raises(GroupTooLarge):
        generate(5, [[[2]]], [[[2]]], bound=3)
    with pytest.raises(InvalidRepresentation):
        generate(3, [[[2]]], [])


def test_well_defined_on_random_reps():
    rng = random.Random(7)
    for _ in range(30):
        rep = random_rep(rng, rng.choice([2, 3]))
        seen = {}
        for g, a in rep.elements:
            assert seen.setdefault(g, a) == a
        assert len(seen) == rep.order


# ---------------------------------------------------------------- evaluation


def test_eval_examples():
    rep = negation_c2()
    f3 = GF(3)
    assert eval_word(rep, [1], Word()) == 0
    assert eval_word(rep, [1], Word([1, 1])) == 0
    assert eval_point(rep, [(1,)], [1], parse_module_expr("x1 o (y1 + 1)", f3)) == (0,)
    assert eval_point(rep, [(1,)], [1], parse_module_expr("0", f3)) == (0,)
    assert eval_point(rep, [(2,)], [1], parse_module_expr("x1", f3)) == (2,)


def test_eval_word_is_a_homomorphism():
    rng = random.Random(1)
    for _ in range(100):
        rep = random_rep(rng, rng.choice([2, 3]))
        beta = [rng.randrange(rep.order) for _ in range(2)]
        f1, f2 = random_word(rng, 2, 6), random_word(rng, 2, 6)
        assert eval_word(rep, beta, f1 * f2) == rep.mul(eval_word(rep, beta, f1), eval_word(rep, beta, f2))


def test_eval_point_matches_slow_substitution():
    rng = random.Random(2)
    for _ in range(100):
        p = rng.choice([2, 3])
        rep = random_rep(rng, p)
        w = random_module_element(rng, GF(p), 2, 2, 4)
        alpha = [tuple(rng.randrange(p) for _ in range(rep.dim)) for _ in range(2)]
        beta = [rng.randrange(rep.order) for _ in range(2)]
        assert eval_point(rep, alpha, beta, w) == slow_eval(rep, alpha, beta, w)


def test_eval_point_is_linear_and_equivariant():
    rng = random.Random(3)
    for _ in range(60):
        p = rng.choice([2, 3])
        f = GF(p)
        rep = random_rep(rng, p)
        w = random_module_element(rng, f, 1, 2, 3)
        u = random_module_element(rng, f, 1, 2, 3).component(1)
        a1 = [tuple(rng.randrange(p) for _ in range(rep.dim))]
        a2 = [tuple(rng.randrange(p) for _ in range(rep.dim))]
        beta = [rng.randrange(rep.order) for _ in range(2)]
        s = [tuple((x + 2 * y) % p for x, y in zip(a1[0], a2[0]))]
        lhs = eval_point(rep, s, beta, w)
        rhs = tuple((x + 2 * y) % p for x, y in zip(eval_point(rep, a1, beta, w), eval_point(rep, a2, beta, w)))
        assert lhs == rhs
        # (w o u) evaluated at alpha = w(alpha) pushed through rho(u^beta)
        v = eval_point(rep, a1, beta, w)
        pushed = eval_point(rep, [v], beta, parse_module_expr("x1", f).act(u))
        assert eval_point(rep, a1, beta, w.act(u)) == pushed


# ---------------------------------------------------------------- kernels and images


def test_kernel_examples():
    assert action_kernel(trivial_action_c2()) == [0, 1]
    assert action_kernel(negation_c2()) == [0]
    k4 = klein_through_first_factor()
    assert k4.order == 4
    assert len(action_kernel(k4)) == 2


def test_kernel_is_normal_on_random_reps():
    rng = random.Random(5)
    for _ in range(30):
        rep = random_rep(rng, rng.choice([2, 3]))
        assert is_normal(rep, action_kernel(rep))


def test_faithful_image_examples():
    assert faithful_image(trivial_action_c2()).order == 1
    assert faithful_image(negation_c2()).order == 2
    img = faithful_image(klein_through_first_factor())
    assert img.order == 2 and img.is_faithful()


def test_faithful_image_order_is_index_of_kernel():
    rng = random.Random(6)
    for _ in range(30):
        rep = random_rep(rng, rng.choice([2, 3]))
        img = faithful_image(rep)
        assert img.order * len(action_kernel(rep)) == rep.order
        assert img.is_faithful()


def test_regular_examples():
    one = regular_representation(trivial_representation(3, 1))
    assert one.order == 1 and one.dim == 1
    reg = regular_representation(negation_c2())
    assert reg.action_matrix(1) == ((0, 1), (1, 0))
    c3 = regular_representation(cyclic_regular(2, 3))
    for i in range(c3.order):
        m = np.array(c3.action_matrix(i))
        assert sorted(m.sum(axis=0)) == [1, 1, 1] and sorted(m.sum(axis=1)) == [1, 1, 1]


# ---------------------------------------------------------------- files


def test_file_round_trip(tmp_path):
    rep = klein_through_first_factor()
    path = tmp_path / "k4.yaml"
    path.write_text(dump_rep(rep))
    again = load_rep(path)
    assert again.elements == rep.elements
    assert rep_from_data(rep_to_data(rep)).order == 4


def test_file_reduces_mod_p(tmp_path):
    path = tmp_path / "r.json"
    path.write_text('{"p": 3, "group_dim": 1, "action_dim": 1, "generators": [{"group": [[5]], "action": [[-1]]}]}')
    rep = load_rep(path)
    assert rep.generator_pairs() == [(((2,),), ((2,),))]


def test_file_errors():
    with pytest.raises(InvalidRepresentation):
        rep_from_data({"group_dim": 1})
    with pytest.raises(InvalidRepresentation):
        rep_from_data({"p": 3, "generators": [{"group": [[2]]}]})


# ---------------------------------------------------------------- linear algebra cross-checks

@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(1, 5), st.data())
def test_numpy_and_generic_elimination_agree(p, r, c, data):
    f = GF(p)
    rows = [tuple(data.draw(st.integers(0, p - 1)) for _ in range(c)) for _ in range(r)]
    basis, pivots = rref(rows, f, c)
    mat = np.array(rows, dtype=np.int64)
    nb, npiv = rref_mod_p(mat, p)
    assert [tuple(int(x) for x in row) for row in nb] == [tuple(b) for b in basis]
    assert rank(rows, f, c) == rank_mod_p(mat, p)
    for v in nullspace(rows, f, c):
        assert not (mat @ np.array(v) % p).any()
    assert len(nullspace(rows, f, c)) == len(nullspace_mod_p(mat, p, c)) == c - len(basis)


def test_rational_linear_algebra():
    a = [[2, 1], [1, 1]]
    inv = inverse(a, QQ)
    assert [[sum(a[i][k] * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)] == [[1, 0], [0, 1]]
    assert solve([[1, 2], [3, 4]], [5, 6], QQ) is not None
    with pytest.raises(SingularMatrix):
        inverse([[1, 2], [2, 4]], QQ)
