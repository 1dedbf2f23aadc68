#!/usr/bin/env python3
"""
Tests for fingerprint classification and the catalog row checks
"""

import pytest

from skewpfaff.models.matrix import SkewLinMatrix
from skewpfaff.models.polynomial import NX
from skewpfaff.models.report import NOT_POLYSTABLE, POLYSTABLE, STABLE
from skewpfaff.services.catalog import CORE_FINGERPRINTS, catalog, catalog_matrix
from skewpfaff.services.classifier_service import ClassifierService, classify, fingerprint, verify_table1
from skewpfaff.services.pfaffcalc import random_invertible, random_skew, transform
from skewpfaff.utils.errors import PfaffianNonZero, Unclassified, UnknownLabel


def test_catalog_fingerprints(label, catalog_m):
    assert fingerprint(catalog_m).core() == CORE_FINGERPRINTS[label]


def test_catalog_types_are_recovered(label, catalog_m):
    result = classify(catalog_m)
    assert result.label == label
    assert result == catalog(label).type


def test_stability_types():
    assert classify(catalog_matrix('a')).stability == STABLE
    assert classify(catalog_matrix('d')).stability == NOT_POLYSTABLE
    assert classify(catalog_matrix('f')).stability == POLYSTABLE


def test_classification_is_invariant(rng, label, catalog_m):
    """Type of B^T M(Cx) B equals the type of M"""
    moved = transform(catalog_m, random_invertible(rng, 6), random_invertible(rng, NX))
    assert moved != catalog_m
    assert classify(moved).label == label


@pytest.mark.slow
def test_classification_is_invariant_on_twenty_group_elements(rng, label, catalog_m):
    for _ in range(20):
        moved = transform(catalog_m, random_invertible(rng, 6), random_invertible(rng, NX))
        assert classify(moved).label == label


def test_orbit_codimension_breaks_fingerprint_ties():
    """(b, d) and (c, e) share their Hilbert data"""
    service = ClassifierService()
    assert service.table['b'].core() == service.table['d'].core()
    assert service.table['b'].orbit_codim != service.table['d'].orbit_codim
    assert service.table['c'].orbit_codim != service.table['e'].orbit_codim


def test_matrix_outside_the_catalog_is_unclassified(ring):
    m = SkewLinMatrix(6, ring, {(3, 4): ring.gens[3]})
    assert fingerprint(m).core() not in CORE_FINGERPRINTS.values()
    with pytest.raises(Unclassified):
        classify(m)


def test_classify_needs_vanishing_pfaffian(rng):
    with pytest.raises(PfaffianNonZero):
        classify(random_skew(rng, 6))


def test_catalog_rows_verify(label):
    checks = verify_table1(label)
    failed = [check.name for check in checks if not check.passed]
    assert failed == []
    assert len(checks) == 6


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        verify_table1('g')
