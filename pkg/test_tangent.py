#!/usr/bin/env python3
"""
Tests for tangent spaces, degree-2 cones, Hensel lifting and orbit codimensions
"""

import pytest

from skewpfaff.models.jet import JetMatrix
from skewpfaff.models.polynomial import NX
from skewpfaff.services.catalog import ORBIT_CODIMS, TANGENT_CODIMS, catalog_matrix
from skewpfaff.services.exactalg import span_equal
from skewpfaff.services.jets import jet_pfaffian
from skewpfaff.services.pfaffcalc import laplace_pairing, pfaffian, random_invertible, random_skew, transform
from skewpfaff.services.tangent import (
    NCOORDS, cone_deg2, hensel_lift, intersection_codims, matrix_from_vector, matrix_to_vector,
    orbit_codim, parametric_2jet_check, random_tangent_values, table_cone, tangent_codim,
    tangent_point, tangent_system
)
from skewpfaff.utils.errors import PfaffianNonZero, WrongType


def test_tangent_codimensions(label, catalog_m):
    assert tangent_codim(catalog_m) == TANGENT_CODIMS[label]


def test_tangent_kernel_vectors_are_tangent(rng):
    """Every kernel vector kills the first-order term of Pf(M + e M1)"""
    m = catalog_matrix('d')
    system = tangent_system(m)
    assert system.dim == NCOORDS - TANGENT_CODIMS['d']
    for _ in range(3):
        vector = tangent_point(system, random_tangent_values(rng, system))
        assert not laplace_pairing(matrix_from_vector(vector, m.ring), m)


def test_matrix_vector_coordinates(rng):
    m = random_skew(rng, 6)
    assert matrix_from_vector(matrix_to_vector(m)) == m


def test_tangent_needs_vanishing_pfaffian(rng):
    m = random_skew(rng, 6)
    assert pfaffian(m)
    with pytest.raises(PfaffianNonZero):
        tangent_system(m)


def test_orbit_codimensions():
    assert intersection_codims() == ORBIT_CODIMS
    assert ORBIT_CODIMS == {'a': 28, 'b': 27, 'c': 29}


def test_generic_orbit_codimension(rng):
    """A general matrix has a 59-dimensional projective orbit"""
    assert orbit_codim(random_skew(rng, 6)) == 15


def test_orbit_codimension_is_at_least_tangent_codimension(label, catalog_m):
    assert orbit_codim(catalog_m) >= tangent_codim(catalog_m)


def test_hensel_lift_for_a_smooth_point(rng):
    """Type (a) has an empty cone condition, so every tangent vector lifts to a 2-jet"""
    m = catalog_matrix('a')
    system = tangent_system(m)
    for _ in range(2):
        vector = tangent_point(system, random_tangent_values(rng, system))
        m1 = matrix_from_vector(vector, m.ring)
        m2 = hensel_lift(m, vector)
        assert m2 is not None
        assert not jet_pfaffian(JetMatrix((m, m1, m2)))


def test_two_jet_check_rejects_other_types():
    with pytest.raises(WrongType):
        parametric_2jet_check(catalog_matrix('a'), 'a')


@pytest.mark.slow
@pytest.mark.parametrize('type_label', ['a', 'b', 'c', 'd', 'e', 'f'])
def test_cone_matches_tabulated_quadrics(type_label):
    m = catalog_matrix(type_label)
    cone = cone_deg2(m)
    tabulated = table_cone(type_label)
    assert span_equal(cone.piece, tabulated.piece)
    if type_label in ('a', 'b', 'd'):
        assert cone.dim == 0
    if type_label in ('c', 'e'):
        assert cone.dim == 2


@pytest.mark.slow
def test_hensel_lift_detects_the_cone(rng):
    """For type (c) a tangent vector lifts exactly when it lies on the cone quadrics"""
    m = catalog_matrix('c')
    system = tangent_system(m)
    quadrics = cone_deg2(m).piece.polynomials()
    for _ in range(5):
        values = random_tangent_values(rng, system)
        on_cone = all(not q(*values) for q in quadrics)
        lifted = hensel_lift(m, tangent_point(system, values))
        assert (lifted is not None) == on_cone


@pytest.mark.slow
@pytest.mark.parametrize('type_label', ['c', 'e'])
def test_parametric_two_jet_check(type_label):
    assert parametric_2jet_check(catalog_matrix(type_label), type_label)


@pytest.mark.slow
@pytest.mark.parametrize('type_label,coordinate', [('c', 'a054'), ('e', 'a014')])
def test_hensel_lift_exists_on_the_cone(rng, type_label, coordinate):
    """Tangent vectors with the shared cone factor set to zero lift to 2-jets"""
    m = catalog_matrix(type_label)
    system = tangent_system(m)
    assert coordinate in system.tangent_names
    position = system.tangent_names.index(coordinate)
    quadrics = cone_deg2(m).piece.polynomials()
    for _ in range(5):
        values = random_tangent_values(rng, system)
        values[position] = 0
        assert all(not q(*values) for q in quadrics)
        vector = tangent_point(system, values)
        m2 = hensel_lift(m, vector)
        assert m2 is not None
        assert not jet_pfaffian(JetMatrix((m, matrix_from_vector(vector, m.ring), m2)))


@pytest.mark.slow
@pytest.mark.parametrize('type_label', ['a', 'b', 'c', 'd', 'e', 'f'])
def test_tangent_data_is_invariant(rng, type_label):
    """B^T M(Cx) B has the same tangent codimension and degree-2 cone dimension as M"""
    m = catalog_matrix(type_label)
    moved = transform(m, random_invertible(rng, 6), random_invertible(rng, NX))
    assert tangent_codim(moved) == tangent_codim(m)
    assert cone_deg2(moved).dim == cone_deg2(m).dim
