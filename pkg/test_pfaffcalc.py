#!/usr/bin/env python3
"""
Tests for Pfaffians, sub-Pfaffians, syzygies, ideal pieces and saturation
"""

import pytest
from sympy import QQ

from skewpfaff.models.matrix import SkewLinMatrix
from skewpfaff.models.polynomial import NX
from skewpfaff.services.catalog import catalog_matrix, catalog_syzygies
from skewpfaff.services.exactalg import fraction_free_determinant, piece_contains, piece_span, span_equal
from skewpfaff.services.pfaffcalc import (
    entry_span, ideal_piece, laplace_matrix, laplace_pairing, laplace_sign, linear_syzygies, minors_2x2,
    pfaffian, random_invertible, random_skew, rank0_point, saturate_piece, sub_pfaffians,
    substitute_cubic, syzygy_rows, syzygy_span_equal, transform
)
from skewpfaff.utils.errors import NoPfaffianZero, OddSize, WrongSpanDimension


def _constant(value):
    return dict(value).get((0,) * NX, QQ.zero)


def _check_pf_squared(rng, size):
    m = random_skew(rng, size, constant=True)
    rows = [[_constant(value) for value in row] for row in m.rows()]
    pf = _constant(pfaffian(m))
    assert pf ** 2 == fraction_free_determinant(rows)


def test_pfaffian_of_4x4(ring):
    """Pf = m01 m23 - m02 m13 + m03 m12"""
    x0, x1, x2, x3, x4 = ring.gens
    m = SkewLinMatrix(4, ring, {(0, 1): x0, (2, 3): x1, (0, 2): x2, (1, 3): x3, (0, 3): x4, (1, 2): x0})
    assert pfaffian(m) == x0 * x1 - x2 * x3 + x4 * x0


def test_odd_size_is_rejected(ring):
    with pytest.raises(OddSize):
        pfaffian(SkewLinMatrix(3, ring, {(0, 1): ring.gens[0]}))


def test_laplace_sign():
    assert laplace_sign(0, 1) == 1
    assert laplace_sign(0, 2) == -1
    assert laplace_sign(1, 3) == -1


def test_pfaffian_squared_is_determinant(rng):
    for size in (2, 4, 6):
        for _ in range(10):
            _check_pf_squared(rng, size)


@pytest.mark.slow
def test_pfaffian_squared_is_determinant_many(rng):
    for _ in range(200):
        _check_pf_squared(rng, 6)


def test_laplace_identities(rng):
    """pairing(m, m) = 3 Pf(m) and the first-row restriction is Pf(m)"""
    for _ in range(5):
        m = random_skew(rng, 6)
        pf = pfaffian(m)
        assert laplace_pairing(m, m) == pf * 3
        assert laplace_pairing(m, m, first_rows=[0]) == pf


@pytest.mark.slow
def test_laplace_identities_many(rng):
    for _ in range(200):
        m = random_skew(rng, 6, constant=True)
        pf = pfaffian(m)
        assert laplace_pairing(m, m) == pf * 3
        assert laplace_pairing(m, m, first_rows=[0]) == pf


def test_laplace_matrix_inverts_the_signs(rng, ring):
    m = catalog_matrix('a')
    q = sub_pfaffians(m)
    forms = {pair: ring.gens[rng.randrange(NX)] * rng.randint(1, 3) for pair in list(q)[:5]}
    expected = sum((forms[pair] * q[pair] for pair in forms), ring.zero)
    assert laplace_pairing(laplace_matrix(forms, 6, ring), m) == expected


def test_pfaffian_equivariance(rng):
    """Pf(B^T M(Cx) B) = det(B) Pf(M)(Cx)"""
    for _ in range(3):
        m = random_skew(rng, 6)
        b = random_invertible(rng, 6)
        c = random_invertible(rng, NX)
        moved = transform(m, b, c)
        assert pfaffian(moved) == substitute_cubic(pfaffian(m), c) * fraction_free_determinant(b)


def test_sub_pfaffian_span_is_invariant(rng, catalog_m):
    b = random_invertible(rng, 6)
    moved = transform(catalog_m, b)
    original = piece_span(sub_pfaffians(catalog_m).values(), 2)
    assert span_equal(piece_span(sub_pfaffians(moved).values(), 2), original)


def test_catalog_pfaffians_vanish(catalog_m):
    assert not pfaffian(catalog_m)


def test_catalog_linear_syzygies(label, catalog_m):
    computed = linear_syzygies(catalog_m)
    assert computed.count == 2
    assert syzygy_span_equal(computed, catalog_syzygies(label))


def test_syzygy_minors_match_sub_pfaffians(label, catalog_m):
    minors = piece_span(minors_2x2(syzygy_rows(catalog_syzygies(label))), 2, ring=catalog_m.ring)
    pfaffians = piece_span(sub_pfaffians(catalog_m).values(), 2)
    assert span_equal(minors, pfaffians)


def test_syzygies_need_vanishing_pfaffian(rng):
    m = random_skew(rng, 6)
    assert pfaffian(m)
    with pytest.raises(NoPfaffianZero):
        linear_syzygies(m)


def test_ideal_piece_of_linear_forms(ring):
    """(x0, x1, x2) in degree 3 has codimension dim QQ[x3, x4]_3 = 4"""
    piece = ideal_piece(ring.gens[:3], 3)
    assert piece.dim == 31


def test_rank0_point_of_type_c():
    point = rank0_point(catalog_matrix('c'))
    coords = point.point()
    assert coords[:4] == [0, 0, 0, 0]
    assert coords[4] != 0


def test_rank0_point_needs_four_dimensional_span():
    assert entry_span(catalog_matrix('a')).dim == 5
    with pytest.raises(WrongSpanDimension):
        rank0_point(catalog_matrix('a'))


@pytest.mark.parametrize('type_label', ['c', 'e'])
def test_saturation_removes_embedded_point(type_label):
    m = catalog_matrix(type_label)
    q = list(sub_pfaffians(m).values())
    unsaturated = ideal_piece(q, 3, ring=m.ring)
    saturated = saturate_piece(q, rank0_point(m), 3)
    assert unsaturated.dim == 26
    assert saturated.dim == 28
    assert piece_contains(saturated, unsaturated)
