"""Acceptance suite. Each test prints one ``[ACCEPT] N name: PASS/FAIL`` line
and then asserts, so a failing criterion shows up both in the summary lines
and as a pytest failure.

Run it alone with ``pytest tests/test_acceptance.py -s -q`` or
``python3 tests/test_acceptance.py``.
"""

import itertools
import sys

import pytest

from repgeom.field import GF, QQ
from repgeom.fox import (
    TruncatedElement, augment, augmentation_monomial, fox_derive, taylor_expand, taylor_reconstruct, truncate,
)
from repgeom.geometry import (
    EquationSet, QuasiIdentity, algebraic_set, check_quasi_identity, closed_submodule_signature, closure_basis,
    closure_member, group_closure_member, group_identities_redundant, refute_equivalence,
)
from repgeom.group_algebra import (
    all_right_ideals, all_two_sided_ideals, ann_of_quotient, kernel_via_ideal, quotient_kernel, stabilizer,
)
from repgeom.operators import FilterSpec, compare_filtered, filtered_product, literal_filtered_product
from repgeom.parser import parse_word
from repgeom.representation import faithful_image, regular_representation
from repgeom.ring import GroupRingElement
from repgeom.words import random_word

from cli_cases import CASES, PARALLEL, golden_path, run
from support import (
    all_vectors, cyclic_regular, negation_c2, random_equations, random_module_element, random_non_faithful_rep,
    random_rep, seeded, trivial_action_c2, trivial_group,
)


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            extra = f" ({detail})" if detail else ""
            print(f"\n[ACCEPT] {number:>2} {name}: {'PASS' if ok else 'FAIL'}{extra}")
        assert ok, f"criterion {number} failed{extra}"
    return emit


def random_instance(rng, max_eqs=2, max_x=2, max_y=2):
    p = rng.choice([2, 3])
    rep = random_rep(rng, p, max_dim=2, max_order=8)
    nx, ny = rng.randint(1, max_x), rng.randint(1, max_y)
    eqs = random_equations(rng, rep.field, nx, ny, 3, rng.randint(0, max_eqs))
    return rep, nx, ny, eqs


def small_algebras():
    return [regular_representation(cyclic_regular(p, n)) for p in (2, 3) for n in (2, 3)]


def test_fox_fundamental_identity(report):
    rng = seeded(101)
    bad = 0
    for field in (GF(5), QQ):
        one = GroupRingElement.one(field)
        for _ in range(200):
            m = rng.randint(1, 3)
            u = GroupRingElement.from_word(field, random_word(rng, m, 10))
            total = GroupRingElement.zero(field)
            for i in range(1, m + 1):
                total = total + fox_derive(i, u, m) * (GroupRingElement.gen(field, i) - one)
            bad += u - one.scale(augment(u)) != total
    report(1, "fox fundamental identity", bad == 0, f"400 words, {bad} mismatches")


def test_taylor_reconstruction(report):
    rng = seeded(102)
    bad = 0
    for _ in range(200):
        m = rng.randint(1, 3)
        u = GroupRingElement.from_word(QQ, random_word(rng, m, 8))
        k = rng.randint(1, 4)
        head, tail = taylor_expand(u, k, m)
        bad += taylor_reconstruct(QQ, head, tail) != u
    report(2, "taylor reconstruction", bad == 0, f"200 words, {bad} mismatches")


def test_truncated_dimension(report):
    f = GF(5)
    one = GroupRingElement.one(f)
    ok = True
    for m in range(1, 4):
        for n in range(1, 5):
            expected = sum(m ** k for k in range(n))
            basis = TruncatedElement.basis(m, n)
            ok &= TruncatedElement.dimension(m, n) == expected == len(basis)
            # each index sequence is hit by its own augmentation monomial
            ok &= all(truncate(augmentation_monomial(f, s), n, m).coords == {s: 1} for s in basis)
            # products of n augmentation generators vanish
            for seq in itertools.product(range(1, m + 1), repeat=n):
                u = one
                for i in seq:
                    u = u * (GroupRingElement.gen(f, i) - one)
                ok &= truncate(u, n, m).is_zero()
    report(3, "truncated algebra dimension", ok)


def test_galois_laws(report):
    rng = seeded(104)
    failures = 0
    for _ in range(50):
        rep, nx, ny, eqs = random_instance(rng, max_eqs=3)
        cut = rng.randint(0, len(eqs))
        S, T = EquationSet(eqs[:cut]), EquationSet(eqs)
        vs, vt = set(algebraic_set(rep, S, nx, ny)), set(algebraic_set(rep, T, nx, ny))
        ok = vt <= vs
        ok &= all(closure_member(rep, T, w, nx, ny) for w in eqs)
        sig_s = closed_submodule_signature(rep, S, 3, nx, ny)
        sig_t = closed_submodule_signature(rep, T, 3, nx, ny)
        ok &= all(a <= b for a, b in zip(sig_s, sig_t))
        closed = closure_basis(rep, T, 3, nx, ny)
        ok &= set(algebraic_set(rep, closed, nx, ny)) == vt
        ok &= closed_submodule_signature(rep, closed, 3, nx, ny) == sig_t
        failures += not ok
    report(4, "galois laws", failures == 0, f"50 instances, {failures} failures")


def test_quasi_identity_oracle(report):
    rng = seeded(105)
    disagree = 0
    for _ in range(200):
        rep, nx, ny, eqs = random_instance(rng)
        w0 = random_module_element(rng, rep.field, nx, ny, 3)
        q = QuasiIdentity(eqs, w0)
        disagree += check_quasi_identity(rep, q, nx, ny) != closure_member(rep, eqs, w0, nx, ny)
    report(5, "quasi-identity vs closure", disagree == 0, f"200 instances, {disagree} disagreements")


def test_group_identities_redundant(report):
    rng = seeded(106)
    failures = sum(not group_identities_redundant(rep, eqs, nx, ny)
                   for rep, nx, ny, eqs in (random_instance(rng) for _ in range(50)))
    report(6, "group identities redundant", failures == 0, f"50 instances, {failures} failures")


def test_group_algebra_checks(report):
    ok = True
    for reg in small_algebras():
        p = reg.p
        for v in all_vectors(p, reg.dim):
            st = stabilizer(reg, [v])
            fixed = [g for g in range(reg.order) if reg.act(v, g) == v]
            ok &= st.group_elements() == fixed
        two_sided = all_two_sided_ideals(reg)
        for u in all_right_ideals(reg):
            a = ann_of_quotient(reg, u)
            ok &= a.issubset(u) and a.is_two_sided()
            ok &= all(j.issubset(a) for j in two_sided if j.issubset(u))
            ok &= kernel_via_ideal(reg, a) == quotient_kernel(reg, u)
    report(7, "group algebra checks", ok)


def test_faithful_image_not_refuted(report):
    rng = seeded(108)
    found = 0
    for _ in range(10):
        rep = random_non_faithful_rep(rng, rng.choice([2, 3]), max_order=8)
        res = refute_equivalence(rep, faithful_image(rep), nx=1, ny=1, max_premises=2, max_len=3, budget=None)
        assert not res.sampled
        found += res.witness is not None
    report(8, "faithful image equivalence", found == 0, f"10 reps, {found} witnesses")


def test_group_equation_separates(report):
    triv_action, point = trivial_action_c2(), trivial_group(3, 1)
    res = refute_equivalence(triv_action, point, nx=1, ny=1, max_premises=2, max_len=3, budget=None)
    y1 = parse_word("y1")
    in_point = group_closure_member(point, [], y1, 1, 1)
    in_c2 = group_closure_member(triv_action, [], y1, 1, 1)
    ok = res.witness is None and in_point and not in_c2
    detail = f"action witness: {res.witness is not None}; y1 = 1 closed in trivial group: {in_point}, in C2: {in_c2}"
    report(9, "action-type vs group equations", ok, detail)


def test_chain_stabilizes(report):
    rng = seeded(110)
    rep = random_rep(rng, 3, max_dim=2, max_order=8)
    eqs = random_equations(rng, rep.field, 1, 1, 2, 6)
    sigs = [closed_submodule_signature(rep, eqs[:i + 1], 2, 1, 1) for i in range(6)]
    monotone = all(all(x <= y for x, y in zip(a, b)) for a, b in zip(sigs, sigs[1:]))
    start = next(i for i in range(6) if all(s == sigs[i] for s in sigs[i:]))
    # adding the whole closure window does not move the last signature
    closed = closure_basis(rep, eqs, 2, 1, 1)
    stable = closed_submodule_signature(rep, eqs + closed, 2, 1, 1) == sigs[-1]
    report(10, "chain stabilization", monotone and stable, f"constant from index {start}")


def test_filtered_products(report):
    rng = seeded(111)
    factors = [negation_c2(), trivial_action_c2(), trivial_group(3, 1), trivial_group(3, 0)]
    failures = 0
    for _ in range(20):
        n = rng.randint(1, 4)
        reps = [rng.choice(factors) for _ in range(n)]
        gens = [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(rng.randint(1, 2))]
        if not set.intersection(*map(set, gens)):
            gens = gens[:1]
        flt = FilterSpec.generated_by(n, gens).validate()
        short = filtered_product(reps, flt).rep
        lit = literal_filtered_product(reps, flt)
        ok = len(lit.group_classes) == short.order and len(lit.vector_classes) == short.p ** short.dim
        failures += not (ok and compare_filtered(reps, flt))
    report(11, "filtered product reduction", failures == 0, f"20 filters, {failures} failures")


def test_cli_determinism(report):
    bad = []
    for name, argv in CASES.items():
        first, second = run(argv), run(argv)
        if not first == second == golden_path(name).read_text():
            bad.append(name)
    for name in PARALLEL:
        body = run(CASES[name]).split("\n", 1)[1]
        if run(CASES[name] + ["--workers", "4"]).split("\n", 1)[1] != body:
            bad.append(f"{name} (workers)")
    report(12, "cli determinism", not bad, f"{len(CASES)} transcripts" + (f", differing: {bad}" if bad else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
