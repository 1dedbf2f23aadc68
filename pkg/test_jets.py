#!/usr/bin/env python3
"""
Tests for jet arithmetic, jet Pfaffians and the proportionality check
"""

import pytest
from sympy import QQ

from skewpfaff.models.jet import JetMatrix, JetPolynomial
from skewpfaff.models.matrix import SkewLinMatrix
from skewpfaff.models.polynomial import linear_form
from skewpfaff.services.catalog import catalog_matrix
from skewpfaff.services.closure_service import witness_jet
from skewpfaff.services.jets import (
    cover, first_nonzero, jet_pfaffian, jet_sub_pfaffians, leading_proportionality,
    proportionality_check, truncate
)
from skewpfaff.services.pfaffcalc import laplace_pairing, pfaffian, random_skew, sub_pfaffians
from skewpfaff.utils.errors import InvalidParameter, OrderTooLarge


def _scalar_jet(*values):
    return JetPolynomial(QQ, tuple(QQ(v) for v in values))


def test_dual_number_arithmetic():
    """(1 + e)(1 - e) = 1 - e^2 = 1 mod e^2"""
    a = _scalar_jet(1, 1)
    b = _scalar_jet(1, -1)
    assert a * b == _scalar_jet(1, 0)
    assert a + b == _scalar_jet(2, 0)
    assert (a - b) * 3 == _scalar_jet(0, 6)


def test_truncated_product_drops_high_terms():
    a = _scalar_jet(0, 1, 0)
    assert a * a == _scalar_jet(0, 0, 1)
    assert a * a * a == _scalar_jet(0, 0, 0)


def test_truncate_and_cover():
    jet = _scalar_jet(1, 2, 3)
    assert truncate(jet, 1) == _scalar_jet(1, 2)
    assert cover(jet, 2) == _scalar_jet(1, 0, 2, 0, 3)
    with pytest.raises(OrderTooLarge):
        truncate(jet, 3)
    with pytest.raises(InvalidParameter):
        cover(jet, 0)


def test_cover_of_a_matrix_jet():
    m = catalog_matrix('f')
    jet = JetMatrix((m, catalog_matrix('e') - m))
    covered = cover(jet, 3)
    assert covered.order == 3
    assert covered.coefficients[3] == jet.coefficients[1]
    assert not covered.coefficients[1].upper


def test_first_nonzero():
    assert first_nonzero(_scalar_jet(0, 0, 5)) == (2, QQ(5))
    assert first_nonzero(_scalar_jet(0, 0)) is None


def test_jet_pfaffian_order_zero_is_pfaffian(rng):
    m = random_skew(rng, 6)
    value = jet_pfaffian(JetMatrix((m,)))
    assert value.coefficients == (pfaffian(m),)


def test_first_order_term_is_laplace_pairing(rng):
    """The e coefficient of Pf(M + e L) is the Laplace pairing of L against M"""
    for _ in range(3):
        m = random_skew(rng, 6)
        l = random_skew(rng, 6)
        value = jet_pfaffian(JetMatrix((m, l)))
        assert value[0] == pfaffian(m)
        assert value[1] == laplace_pairing(l, m)


def test_second_order_term_is_polarized(rng):
    """The e^2 coefficient of Pf(M + e M1 + e^2 M2) is pairing(M, M1) + pairing(M2, M)"""
    for _ in range(2):
        m, m1, m2 = (random_skew(rng, 6) for _ in range(3))
        value = jet_pfaffian(JetMatrix((m, m1, m2)))
        assert value[2] == laplace_pairing(m, m1) + laplace_pairing(m2, m)


def test_jet_sub_pfaffians_centre(rng):
    m = random_skew(rng, 6)
    jet = JetMatrix((m, random_skew(rng, 6)))
    q = sub_pfaffians(m)
    for pair, value in jet_sub_pfaffians(jet).items():
        assert value[0] == q[pair]


def test_proportionality_check(ring):
    x0 = ring.gens[0]
    cubic = JetPolynomial(ring, (2 * x0**3, x0**3))
    assert proportionality_check(JetPolynomial(ring, (6 * x0**3, 3 * x0**3)), cubic) == [QQ(3), QQ(0)]
    assert proportionality_check(JetPolynomial(ring, (6 * x0**3, 4 * x0**3)), cubic) == [QQ(3), QQ(1, 2)]
    assert proportionality_check(JetPolynomial(ring, (ring.zero, 4 * x0**3)), cubic) is None


def test_proportionality_with_polynomials(ring):
    x0, x1 = ring.gens[:2]
    f = JetPolynomial(ring, (x0**3, x1**3))
    p = JetPolynomial(ring, (2 * x0**3, 2 * x1**3 + x0**3))
    assert proportionality_check(p, f) == [QQ(2), QQ(1)]
    wrong = JetPolynomial(ring, (2 * x0**3, x0 * x1**2))
    assert proportionality_check(wrong, f) is None


def test_leading_proportionality(ring):
    x0 = ring.gens[0]
    f = JetPolynomial.constant(ring, x0**3, 2)
    p = JetPolynomial(ring, (ring.zero, 5 * x0**3, ring.zero))
    assert leading_proportionality(p, f) == (1, [QQ(5), QQ(0)])
    assert leading_proportionality(JetPolynomial.zero(ring, 2), f) is None


def test_rank_two_jet_at_the_type_e_block(ring):
    """[[0, -2eB], [-2eB, -B]] has vanishing 4x4 sub-Pfaffians mod e^2"""
    x3 = ring.gens[3]
    centre = SkewLinMatrix(6, ring, {(3, 4): x3})
    first = SkewLinMatrix(6, ring, {(0, 4): 2 * x3, (1, 3): -2 * x3})
    jet = JetMatrix((centre, first))
    assert all(not value for value in jet_sub_pfaffians(jet).values())
    assert first_nonzero(jet_pfaffian(jet)) is None


def _random_jet(rng, order):
    return _scalar_jet(*(rng.randint(-5, 5) for _ in range(order + 1)))


def _padded(jet, order):
    return list(jet.coefficients) + [QQ.zero] * (order - jet.order)


def test_truncations_compose(rng):
    for _ in range(20):
        n = rng.randint(0, 6)
        jet = _random_jet(rng, n)
        m = rng.randint(0, n)
        k = rng.randint(0, m)
        assert truncate(truncate(jet, m), k) == truncate(jet, k)


def test_covers_multiply(rng):
    for _ in range(20):
        jet = _random_jet(rng, rng.randint(0, 4))
        r, s = rng.randint(1, 3), rng.randint(1, 3)
        assert cover(cover(jet, r), s) == cover(jet, r * s)


def test_truncating_a_cover(rng):
    """truncate(cover(j, r), m) is cover(truncate(j, m // r), r), padded with zeros to order m"""
    for _ in range(20):
        n, r = rng.randint(0, 4), rng.randint(1, 3)
        jet = _random_jet(rng, n)
        m = rng.randint(0, r * n)
        left = truncate(cover(jet, r), m)
        right = cover(truncate(jet, m // r), r)
        assert list(left.coefficients) == _padded(right, m)


def test_jet_pfaffian_commutes_with_truncate_and_cover(rng):
    for _ in range(2):
        jet = JetMatrix(tuple(random_skew(rng, 6) for _ in range(3)))
        value = jet_pfaffian(jet)
        assert jet_pfaffian(truncate(jet, 1)) == truncate(value, 1)
        first_order = truncate(jet, 1)
        assert jet_pfaffian(cover(first_order, 2)) == cover(jet_pfaffian(first_order), 2)


def test_leading_term_is_a_multiple_of_the_cubic(rng, ring):
    """When proportionality holds, the first nonzero Pfaffian coefficient is u0 F0"""
    m = catalog_matrix('b')
    q = sub_pfaffians(m)
    for _ in range(3):
        cubic = sum(
            (linear_form(ring, [rng.randint(-2, 2) for _ in range(5)]) * value for value in q.values()),
            ring.zero,
        )
        if not cubic:
            continue
        p = jet_pfaffian(witness_jet(m, cubic))
        n, units = leading_proportionality(p, JetPolynomial.constant(ring, cubic, 1))
        assert n == 1
        assert first_nonzero(p) == (1, cubic * units[0])

    jet = JetMatrix((random_skew(rng, 6), random_skew(rng, 6)))
    p = jet_pfaffian(jet)
    assert p[0]
    units = proportionality_check(p, p.scale(QQ(1, 2)))
    assert units == [QQ(2), QQ(0)]
    assert first_nonzero(p)[1] == p.scale(QQ(1, 2))[0] * units[0]


def test_proportionality_needs_a_nonzero_constant_term(ring):
    x0 = ring.gens[0]
    jet = JetPolynomial(ring, (ring.zero, x0**3))
    assert proportionality_check(jet, jet) is None
