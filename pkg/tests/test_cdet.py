import random
from fractions import Fraction
from itertools import permutations

import pytest

from wcent import (DiffOp, DiffPoly, DiffVar, Domain, Grading,
                   Partition, UPoly, all_partitions,
                   column_determinant, generator_window, in_window,
                   jacobian_independence, miura_generators, miura_image,
                   w_generator_matrix, w_generators)
from wcent.cdet import (basis_u_series, extract_window_tables, fraction_det,
                        jacobian_point, poly_det, tail_sum)


def V(i, j, r, s=0):
    return DiffVar(s=s, i=i, j=j, r=r)


def vp(i, j, r, s=0):
    return DiffPoly.var(V(i, j, r, s))


ONE = DiffPoly.const(1)


def op_const(poly):
    return DiffOp({(0, 0): UPoly({0: poly})})


D = DiffOp({(0, 1): UPoly({0: ONE})})
X = DiffOp({(1, 0): UPoly({0: ONE})})


def test_diffop_commutation_rule():
    f = vp(1, 1, 0)
    assert D * op_const(f) == op_const(f) * D + op_const(f.derive())
    assert X * D == D * X  # x is a central formal variable


def test_diffop_binomial_expansion():
    f = vp(2, 2, 0)
    f1, f2 = f.derive(), f.derive(2)
    lhs = D * D * op_const(f)
    rhs = op_const(f) * D * D + (op_const(f1) * D).scale(2) + op_const(f2)
    assert lhs == rhs
    # same rule through a D already present on the right factor
    assert D * D * (op_const(f) * D) == \
        op_const(f) * D * D * D + (op_const(f1) * D * D).scale(2) + op_const(f2) * D


def test_diffop_associativity_samples():
    rng = random.Random(11)
    pool = [vp(1, 1, 0), vp(2, 2, 0), vp(2, 1, 0), ONE.scale(2)]

    def rand_op():
        terms = {}
        for _ in range(rng.randint(1, 2)):
            key = (rng.randint(0, 1), rng.randint(0, 2))
            terms[key] = UPoly({rng.randint(0, 1): rng.choice(pool)})
        return DiffOp(terms)

    for _ in range(40):
        a, b, c = rand_op(), rand_op(), rand_op()
        assert (a * b) * c == a * (b * c)


def test_upoly_preserves_factor_order():
    a = UPoly({0: vp(1, 1, 0)})
    b = UPoly({1: vp(1, 1, 0, s=1)})
    prod = a * b
    assert prod.coeff(1) == vp(1, 1, 0) * vp(1, 1, 0, s=1)
    assert (a + b).coeff(0) == vp(1, 1, 0)
    assert a.derive().coeff(0) == vp(1, 1, 0, s=1)


def brute_force_cdet(rows):
    n = len(rows)
    total = DiffOp.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                         if perm[a] > perm[b])
        term = None
        for col in range(n):
            entry = rows[perm[col]][col]
            term = entry if term is None else term * entry
        total = total + (term.scale(-1) if inversions % 2 else term)
    return total


def test_cdet_matches_permutation_expansion():
    rng = random.Random(5)
    pool = [vp(1, 1, 0), vp(2, 2, 0), vp(2, 1, 0), ONE]

    def rand_entry():
        if rng.random() < 0.2:
            return DiffOp.zero()
        return DiffOp({(rng.randint(0, 1), rng.randint(0, 1)):
                       UPoly({rng.randint(0, 1): rng.choice(pool)})})

    for n in (2, 3):
        for _ in range(12):
            rows = [[rand_entry() for _ in range(n)] for _ in range(n)]
            assert column_determinant(rows) == brute_force_cdet(rows)


def test_cdet_on_generator_matrix_matches_bruteforce():
    for parts in [(1, 2), (2, 2), (1, 1, 1)]:
        rows = w_generator_matrix(Partition.of(*parts))
        assert column_determinant(rows) == brute_force_cdet(rows)


def test_cdet_rejects_non_square():
    with pytest.raises(ValueError):
        column_determinant([[D, D]])


def closed_form_two_rows(p, k, r):
    """Quadratic-size types admit closed generator formulas; absent basis
    elements contribute zero."""
    l1, l2 = p.part(1), p.part(2)

    def e(i, j, rr, s=0):
        li, lj = (l1, l2)[i - 1], (l1, l2)[j - 1]
        ok = lj - min(li, lj) <= rr < lj
        return vp(i, j, rr, s) if ok else DiffPoly.zero()

    if k == 1:
        return e(1, 1, r) + e(2, 2, r)
    total = DiffPoly.zero()
    for a in range(r + 1):
        total = total + e(1, 1, a) * e(2, 2, r - a)
    return total - e(2, 1, r - l2 + 1) + e(2, 2, r, s=1).scale(l1)


@pytest.mark.parametrize("parts", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_two_row_closed_forms(parts):
    p = Partition.of(*parts)
    t = w_generators(p)
    for (k, r), poly in t.ordered():
        assert poly == closed_form_two_rows(p, k, r), (k, r)
    # the same formula extends to the out-of-window coefficients
    for (k, r), poly in sorted(t.out_of_window.items()):
        assert poly == closed_form_two_rows(p, k, r), (k, r)


def test_generators_12_literal():
    t = w_generators(Partition.of(1, 2))
    assert t.poly(1, 0) == vp(1, 1, 0) + vp(2, 2, 0)
    assert t.poly(1, 1) == vp(2, 2, 1)
    assert t.poly(2, 1) == vp(1, 1, 0) * vp(2, 2, 1) - vp(2, 1, 0) + vp(2, 2, 1, s=1)
    assert t.out_of_window == {
        (2, 0): vp(1, 1, 0) * vp(2, 2, 0) + vp(2, 2, 0, s=1)}


@pytest.mark.parametrize("p", all_partitions(6), ids=str)
def test_window_census(p):
    t = w_generators(p)
    assert len(t) == p.N
    expected = {(k, r) for k in range(1, p.n + 1)
                for r in range(tail_sum(p, k) - k + 1)
                if tail_sum(p, k - 1) < r + k <= tail_sum(p, k)}
    assert set(t.entries) == expected == set(generator_window(p))
    for k, r in expected:
        assert in_window(p, k, r)
    assert not in_window(p, 1, p.part(p.n))
    assert set(t.entries).isdisjoint(t.out_of_window)


def test_tail_sums():
    p = Partition.of(1, 2, 2)
    assert [tail_sum(p, k) for k in range(4)] == [0, 2, 4, 5]


def test_extract_requires_monic_top():
    p = Partition.of(1, 1)
    rows = w_generator_matrix(p)
    rows[0][0] = rows[0][0].scale(2)
    with pytest.raises(ArithmeticError):
        extract_window_tables(p, column_determinant(rows), ONE)


def test_basis_u_series_windows():
    p = Partition.of(1, 2)
    up = basis_u_series(p, 2, 2)
    assert up.coeff(0) == vp(2, 2, 0) and up.coeff(1) == vp(2, 2, 1)
    assert up.coeff(2) is None
    assert basis_u_series(p, 1, 2).coeff(0) is None


def test_miura_image_kills_lower_sector():
    p = Partition.of(1, 2)
    w21 = w_generators(p).poly(2, 1)
    img = miura_image(w21)
    assert img == vp(1, 1, 0) * vp(2, 2, 1) + vp(2, 2, 1, s=1)
    assert img.domain is Domain.CARTAN
    with pytest.raises(ValueError):
        miura_image(vp(1, 2, 1))


@pytest.mark.parametrize("parts", [(1, 2), (2, 2), (1, 1, 2), (2, 3)])
def test_miura_generators_agree_with_images(parts):
    p = Partition.of(*parts)
    wt, mt = w_generators(p), miura_generators(p)
    assert set(wt.entries) == set(mt.entries)
    for key, poly in wt.entries.items():
        assert miura_image(poly) == mt.entries[key]


def test_jacobian_11_certificate():
    cert = jacobian_independence(Partition.of(1, 1))
    assert cert.nonzero and cert.attempts == 1 and cert.seed == 0
    assert cert.det == -1
    assert cert.var_order == [V(2, 2, 0), V(1, 1, 0)]
    assert cert.poly_order == [(1, 0), (2, 0)]
    assert cert.point == {V(2, 2, 0): 2, V(1, 1, 0): 3}
    assert cert.symbolic_det == vp(2, 2, 0) - vp(1, 1, 0)
    assert cert.symbolic_nonzero is True


def test_jacobian_12_certificate():
    cert = jacobian_independence(Partition.of(1, 2))
    assert cert.det == 2
    assert cert.poly_order == [(1, 1), (2, 1), (1, 0)]
    assert cert.var_order == [V(2, 2, 1), V(1, 1, 0), V(2, 2, 0)]
    assert cert.symbolic_det == vp(2, 2, 1)
    # leading parts are the derivative-free components
    for key, lead in cert.leading_polys.items():
        assert lead.is_homogeneous(Grading.DERIVATION)
        assert lead.min_degree(Grading.DERIVATION) == 0


def test_jacobian_seeded_rational_point():
    cert = jacobian_independence(Partition.of(1, 2), seed=1)
    assert cert.nonzero and cert.seed == 1
    assert cert.det == 13
    pt = jacobian_point(Partition.of(1, 2), seed=1)
    assert cert.point == pt
    assert any(isinstance(q, Fraction) for q in pt.values())


def test_jacobian_point_primes_at_seed_zero():
    pt = jacobian_point(Partition.of(1, 2), seed=0)
    assert sorted(pt.values()) == [2, 3, 5]
    assert jacobian_point(Partition.of(1, 2), seed=3) == \
        jacobian_point(Partition.of(1, 2), seed=3)


def test_determinant_helpers():
    assert fraction_det([[1, 2], [3, 4]]) == -2
    assert fraction_det([[Fraction(1, 2), 1], [1, 2]]) == 0
    x, y = vp(1, 1, 0), vp(2, 2, 0)
    assert poly_det([[x, y], [y, x]]) == x * x - y * y
    assert poly_det([[x]]) == x
