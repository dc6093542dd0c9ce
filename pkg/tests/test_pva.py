import random

import pytest

from wcent import (BasisElt, DiffPoly, DiffVar, Domain, LambdaPoly,
                   MembershipMode, Partition, ProjectionConfig,
                   generator_bracket, jacobi_defect, lambda_bracket,
                   lambda_bracket_gen, parabolic_project, pva_axiom_suite,
                   w_bracket, w_generators, w_membership)
from wcent.pva import membership_test_set, neg_lambda_substitute, random_diffpoly


def V(i, j, r, s=0):
    return DiffVar(s=s, i=i, j=j, r=r)


def vp(i, j, r, s=0):
    return DiffPoly.var(V(i, j, r, s))


def test_generator_bracket_oracles():
    p = Partition.of(1, 2)
    # truncation: only the second-column component survives
    assert generator_bracket(p, BasisElt(1, 2, 1), BasisElt(2, 1, 0)) == \
        LambdaPoly({0: vp(2, 2, 1).scale(-1)})
    # central term: equal parts pair up through the trace form
    q = Partition.of(1, 1)
    assert generator_bracket(q, BasisElt(1, 2, 0), BasisElt(2, 1, 0)) == \
        LambdaPoly({0: vp(1, 1, 0) - vp(2, 2, 0), 1: DiffPoly.const(1)})
    assert generator_bracket(q, BasisElt(1, 1, 0), BasisElt(1, 1, 0)) == \
        LambdaPoly({1: DiffPoly.const(1)})


def test_lambda_bracket_gen_expands_derivatives():
    # {x_l v'} = (l + d){x_l v}
    p = Partition.of(1, 1)
    x = BasisElt(1, 2, 0)
    target = vp(2, 1, 0, s=1)
    got = lambda_bracket_gen(p, x, target)
    assert got == generator_bracket(p, x, BasisElt(2, 1, 0)).shift()
    assert got.coefficient(2) == 1  # l^2 from shifting the central term


def test_master_formula_matches_generator_expansion():
    p = Partition.of(1, 2)
    rng = random.Random(7)
    for _ in range(25):
        b = random_diffpoly(p, rng)
        for x in membership_test_set(p, MembershipMode.FULL_BASIS):
            assert lambda_bracket(p, DiffPoly.var(V(*x, s=0)), b) == \
                lambda_bracket_gen(p, x, b)


def test_skewsymmetry_on_generators():
    p = Partition.of(2, 2)
    for x in [BasisElt(1, 2, 0), BasisElt(2, 2, 1)]:
        for y in [BasisElt(2, 1, 1), BasisElt(1, 1, 0)]:
            lhs = generator_bracket(p, x, y)
            rhs = neg_lambda_substitute(generator_bracket(p, y, x)).scale(-1)
            assert lhs == rhs


def test_jacobi_defect_vanishes_on_samples():
    p = Partition.of(1, 2)
    rng = random.Random(3)
    for _ in range(10):
        a, b, c = (random_diffpoly(p, rng) for _ in range(3))
        assert jacobi_defect(p, a, b, c) == {}


def test_lambda_poly_shift_and_text():
    lp = LambdaPoly({0: vp(1, 1, 0), 1: DiffPoly.const(2)})
    shifted = lp.shift()
    assert shifted.coefficient(2) == 2
    assert shifted.coefficient(1) == vp(1, 1, 0)
    assert shifted.coefficient(0) == vp(1, 1, 0, s=1)
    assert "L" in lp.text("L")
    assert LambdaPoly({}) == LambdaPoly({0: DiffPoly.zero()})


def test_projection_default():
    p = Partition.of(1, 2)
    poly = vp(1, 2, 1) * vp(2, 2, 0) + vp(2, 1, 0) + vp(1, 2, 1, s=1)
    img = parabolic_project(p, poly)
    # superdiagonal top coefficient 1, derivatives of upper variables drop
    assert img == vp(2, 2, 0) + vp(2, 1, 0)
    assert img.domain is not Domain.FULL


def test_projection_config_validation():
    p = Partition.of(1, 2)
    with pytest.raises(ValueError):
        ProjectionConfig(p, {(1, 1): 0})  # top coefficient must be invertible
    with pytest.raises(ValueError):
        ProjectionConfig(p, {(1, 0): 1})  # r outside the superdiagonal window
    cfg = ProjectionConfig(p, {(1, 1): 5})
    assert cfg.coeff(1, 1) == 5


def test_membership_of_generator_table():
    p = Partition.of(1, 2)
    t = w_generators(p)
    for _, poly in t.ordered():
        for mode in MembershipMode:
            assert w_membership(p, poly, mode).ok


def test_membership_negative_control_witness():
    p = Partition.of(1, 2)
    bad = w_generators(p).out_of_window[(2, 0)]
    assert bad == vp(1, 1, 0) * vp(2, 2, 0) + vp(2, 2, 0, s=1)
    res = w_membership(p, bad)
    assert not res.ok
    assert res.witness_x == BasisElt(1, 2, 1)
    assert res.witness_bracket == \
        LambdaPoly({0: vp(1, 1, 0) - vp(2, 2, 0), 1: DiffPoly.const(1)})
    # the generator test set sees the same violation
    assert not w_membership(p, bad, MembershipMode.GENERATORS).ok


def test_membership_rejects_upper_input():
    p = Partition.of(1, 2)
    with pytest.raises(ValueError):
        w_membership(p, vp(1, 2, 1))


def test_membership_under_general_projection():
    # with the superdiagonal sent to c, the quadratic member acquires a -c
    # on its lower-triangular term; the default projection rejects it for c != 1
    p = Partition.of(1, 1)
    for c in [1, 2, -3]:
        cfg = ProjectionConfig(p, {(1, 0): c})
        member = vp(1, 1, 0) * vp(2, 2, 0) - vp(2, 1, 0).scale(c) + vp(2, 2, 0, s=1)
        assert w_membership(p, member, cfg=cfg).ok
        assert w_membership(p, member).ok == (c == 1)


def test_w_bracket_oracles_and_closure():
    p = Partition.of(1, 2)
    t = w_generators(p)
    w10, w11, w21 = t.poly(1, 0), t.poly(1, 1), t.poly(2, 1)
    assert w_bracket(p, w10, w10) == LambdaPoly({1: DiffPoly.const(p.N)})
    assert w_bracket(p, w11, w21) == LambdaPoly({})
    assert w_bracket(p, w10, w21) == LambdaPoly({1: vp(2, 2, 1)})
    for a in (w10, w11, w21):
        for b in (w10, w11, w21):
            for _, coeff in w_bracket(p, a, b).items():
                assert w_membership(p, coeff).ok


def test_w_bracket_rejects_non_members():
    p = Partition.of(1, 2)
    bad = w_generators(p).out_of_window[(2, 0)]
    with pytest.raises(ValueError):
        w_bracket(p, bad, bad, check=True)


def test_random_diffpoly_respects_bounds():
    p = Partition.of(1, 1, 2)
    rng = random.Random(0)
    for _ in range(50):
        poly = random_diffpoly(p, rng)
        assert len(poly.variables()) <= 3
        for mono in poly.monomials():
            assert sum(e for _, e in mono.vars) <= 3


@pytest.mark.parametrize("parts", [(1, 2), (2, 2)])
def test_axiom_suite_smoke(parts):
    rep = pva_axiom_suite(Partition.of(*parts), seed=1, samples=10)
    assert rep.ok
    assert set(rep.checked) == {"sesquilinearity-left", "sesquilinearity-right",
                                "skewsymmetry", "leibniz", "jacobi"}
    assert all(n >= 10 for n in rep.checked.values())


def test_axiom_suite_is_seed_deterministic():
    p = Partition.of(1, 2)
    a = pva_axiom_suite(p, seed=5, samples=5)
    b = pva_axiom_suite(p, seed=5, samples=5)
    assert a.checked == b.checked and a.failures == b.failures
