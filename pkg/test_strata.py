#!/usr/bin/env python3
"""
Tests for the degeneration families and the block-conjugation family
"""

import pytest

from skewpfaff.models.matrix import SkewLinMatrix
from skewpfaff.services.catalog import catalog_matrix
from skewpfaff.services.exactalg import piece_contains, piece_span
from skewpfaff.services.pfaffcalc import sub_pfaffians
from skewpfaff.services.strata_service import (
    ARROWS, CASE3, StrataService, case3_blocks, case3_family, family, family_ring, flat_limit,
    specialize, verify_case3, verify_family, x_degree_piece
)
from skewpfaff.utils.errors import InvalidParameter, NotSkew, UnknownArrow


def _failed(checks):
    return [check.name for check in checks if not check.passed]


@pytest.mark.parametrize('arrow', ARROWS)
def test_degeneration_arrows(arrow, rng):
    checks = verify_family(arrow, rng)
    assert _failed(checks) == []


@pytest.mark.parametrize('arrow', ['b->d', 'c->e', 'b->c', 'd->e', 'e->f'])
def test_family_endpoints(arrow):
    """The member at t = 0 is the target normal form itself"""
    fam = family(arrow)
    source, target = arrow.split('->')
    assert (fam.source, fam.target) == (source, target)
    assert specialize(fam.matrix, 0) == catalog_matrix(target)


def test_two_skew_lines_family():
    fam = family('b->d')
    x0, x1, x2, x3, x4, t = family_ring().gens
    assert fam.matrix.entry(0, 1) == x3 * t**2
    assert fam.matrix.entry(0, 2) == x4 * t**2
    assert len(fam.ideals) == 2


def test_unknown_arrow():
    with pytest.raises(UnknownArrow):
        family('f->a')


def test_x_degree_piece():
    x0, x1, x2, x3, x4, t = family_ring().gens
    spanning = x_degree_piece([x0 + t * x1, x2**2], 2)
    assert len(spanning) == 6
    assert x2**2 in spanning


def test_flat_limit_contains_the_special_fibre():
    """The limit of the sub-Pfaffian span contains the span at t = 0"""
    fam = family('e->f')
    limit = flat_limit(list(sub_pfaffians(fam.matrix).values()))
    special = piece_span(sub_pfaffians(catalog_matrix('f')).values(), 2)
    assert piece_contains(limit, special)
    assert limit.dim == 8


def test_case3_blocks_rebuild_type_e():
    a, b = case3_blocks()
    assert a.size == b.size == 3
    fam = case3_family(a, b)
    assert fam.arrow == CASE3
    assert specialize(fam.matrix, 0) == catalog_matrix('e')


def test_case3_checks(rng):
    checks, info = verify_case3(rng=rng)
    assert _failed(checks) == []
    assert set(info) == {'generic_type', 't'}


def test_case3_rejects_bad_arguments(ring):
    a, b = case3_blocks()
    big = SkewLinMatrix(4, ring, {(0, 1): ring.gens[0]})
    with pytest.raises(NotSkew):
        case3_family(big, b)
    with pytest.raises(InvalidParameter):
        case3_family(a, b, order=0)
    assert case3_family(a, b, order=3).matrix == case3_family(a, b).matrix


def test_strata_service_verifies_case3():
    service = StrataService(seed=3)
    assert CASE3 not in service.arrows()
    assert _failed(service.verify(CASE3)) == []
    assert service.family('d->e').target == 'e'


@pytest.mark.slow
def test_verify_all_arrows():
    results = StrataService(seed=11).verify_all()
    assert set(results) == set(ARROWS) | {CASE3}
    assert all(_failed(checks) == [] for checks in results.values())
