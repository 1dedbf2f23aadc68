"""
Tangent spaces, degree-2 tangent cones and orbit codimensions

Coordinates on the space of 6x6 skew matrices of linear forms are a{i}{j}{k}, the x_k
coefficient of entry (i, j), ordered by pair (row by row) and then by k. Second-order
coordinates are named b{i}{j}{k} in the same order.

Pf is a cubic form, so for its symmetric trilinear form P the e and e^2 coefficients of
Pf(M + e M1 + e^2 M2) are 3P(M, M, M1) and 3P(M, M1, M1) + 3P(M, M, M2). The Laplace pairing
of L against N is 3P(L, N, N), which turns each coefficient into pairings.
"""

import random
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..models.matrix import SkewLinMatrix, upper_pairs
from ..models.polynomial import (
    NX, extended_ring, lift, linear_form, monomial_basis, monomial_index, polynomial_ring,
    split_by_x, substitute, x_ring
)
from ..models.report import ConeQuadrics, TangentSystem
from ..utils.errors import InvalidParameter, PfaffianNonZero, WrongType
from ..utils.logging import get_logger
from .exactalg import (
    coordinates, kernel_basis, matrix_rows, piece_intersection, piece_span, qmatrix, rank, residue,
    solve, sparse_rows
)
from .pfaffcalc import laplace_pairing, minors_2x2, pfaffian, rank0_point, saturate_piece, sub_pfaffians

logger = get_logger('tangent')

SIZE = 6
PAIRS = tuple(upper_pairs(SIZE))
COORDINATE_NAMES: Tuple[str, ...] = tuple(f"a{i}{j}{k}" for i, j in PAIRS for k in range(NX))
SECOND_ORDER_NAMES: Tuple[str, ...] = tuple(f"b{i}{j}{k}" for i, j in PAIRS for k in range(NX))
NCOORDS = len(COORDINATE_NAMES)
NCUBICS = len(monomial_basis(NX, 3))


def coordinate_index(name: str) -> int:
    i, j, k = int(name[1]), int(name[2]), int(name[3])
    return NX * PAIRS.index((i, j)) + k


def matrix_from_vector(values: Sequence[Any], ring=None) -> SkewLinMatrix:
    """The skew matrix whose a-coordinates are the given 75 values"""
    if len(values) != NCOORDS:
        raise InvalidParameter(f"expected {NCOORDS} coordinates, got {len(values)}")
    ring = ring or x_ring()
    upper = {}
    for position, pair in enumerate(PAIRS):
        upper[pair] = linear_form(ring, values[NX * position:NX * (position + 1)])
    return SkewLinMatrix(SIZE, ring, upper)


def matrix_to_vector(m: SkewLinMatrix) -> List[Any]:
    vector = [QQ.zero] * NCOORDS
    for position, (pair, value) in enumerate(m.pairs()):
        for monom, coeff in value.items():
            vector[NX * position + monom.index(1)] = coeff
    return vector


def _require_pfaffian_zero(m: SkewLinMatrix):
    if m.size != SIZE:
        raise InvalidParameter(f"tangent computations need a {SIZE}x{SIZE} matrix, got {m.size}")
    if pfaffian(m):
        raise PfaffianNonZero("tangent computations need a matrix with vanishing Pfaffian")


@lru_cache(maxsize=64)
def tangent_system(m: SkewLinMatrix) -> TangentSystem:
    """35 x 75 matrix of M' -> F' and the RREF kernel

    Column (i, j, k) is the cubic (-1)^(i+j+1) x_k q_ij(M).
    """
    _require_pfaffian_zero(m)
    q = sub_pfaffians(m)
    gens = m.ring.gens
    columns = []
    for (i, j) in PAIRS:
        sign = -1 if (i + j) % 2 == 0 else 1
        for k in range(NX):
            columns.append(coordinates(gens[k] * q[(i, j)] * sign, 3) if q[(i, j)] else {})
    coefficients = qmatrix(columns, NCUBICS).transpose()
    kernel = kernel_basis(coefficients)
    pivots = tuple(min(row) for row in sparse_rows(kernel))
    system = TangentSystem(m, coefficients, kernel, pivots, COORDINATE_NAMES)
    logger.debug(f"tangent system: codim {system.codim}, {system.dim} tangent coordinates")
    return system


def tangent_codim(m: SkewLinMatrix) -> int:
    return tangent_system(m).codim


def tangent_ring(system: TangentSystem):
    return polynomial_ring(system.tangent_names)


def tangent_images(system: TangentSystem, ring) -> List[Any]:
    """a_c as linear forms in the tangent coordinates, embedded in ring"""
    gens = [lift(g, ring) for g in tangent_ring(system).gens]
    images = [ring.zero] * NCOORDS
    for r, row in enumerate(sparse_rows(system.kernel)):
        for c, value in row.items():
            images[c] += gens[r] * value
    return images


def restrict_to_tangent(polys: Sequence[Any], system: TangentSystem) -> List[Any]:
    """Substitute each a_ijk by its kernel parametrization"""
    target = tangent_ring(system)
    images = tangent_images(system, target)
    restricted = []
    for poly in polys:
        mapped = [images[coordinate_index(str(s))] for s in poly.ring.symbols]
        restricted.append(substitute(poly, mapped, target))
    return restricted


def symbolic_tangent_matrix(system: TangentSystem, ring) -> SkewLinMatrix:
    """M1 with entries sum_k a_ijk(s) x_k, a general tangent vector"""
    images = tangent_images(system, ring)
    gens = ring.gens
    upper = {}
    for position, pair in enumerate(PAIRS):
        total = ring.zero
        for k in range(NX):
            image = images[NX * position + k]
            if image:
                total += image * gens[k]
        upper[pair] = total
    return SkewLinMatrix(SIZE, ring, upper)


def symbolic_second_order_matrix(ring) -> SkewLinMatrix:
    """M2 with entries sum_k b_ijk x_k"""
    gens = ring.gens
    offset = ring.ngens - NCOORDS
    upper = {}
    for position, pair in enumerate(PAIRS):
        upper[pair] = sum((gens[k] * gens[offset + NX * position + k] for k in range(NX)), ring.zero)
    return SkewLinMatrix(SIZE, ring, upper)


def cubic_vector(poly, nx: int = NX) -> Dict[int, Any]:
    """Cubic x-monomial index -> parameter coefficient"""
    index = monomial_index(nx, 3)
    vector = {}
    for x_monom, coeff in split_by_x(poly, nx).items():
        if sum(x_monom) != 3:
            raise InvalidParameter(f"expected a cubic in x, found x-degree {sum(x_monom)}")
        vector[index[x_monom]] = coeff
    return vector


@lru_cache(maxsize=16)
def second_order_expansion(m: SkewLinMatrix) -> Tuple[Any, Any, Any]:
    """(first, quadratic, linear) parts of Pf(M + e M1 + e^2 M2)

    first is the e coefficient on the tangent space (identically zero); the e^2 coefficient
    is quadratic + linear, quadratic in the tangent coordinates s and linear in b.
    """
    system = tangent_system(m)
    s_ring = extended_ring(system.tangent_names)
    b_ring = extended_ring(SECOND_ORDER_NAMES)
    base_s = m.set_ring(s_ring)
    base_b = m.set_ring(b_ring)
    m1 = symbolic_tangent_matrix(system, s_ring)
    m2 = symbolic_second_order_matrix(b_ring)
    first = laplace_pairing(m1, base_s)
    quadratic = laplace_pairing(base_s, m1)
    linear = laplace_pairing(m2, base_b)
    logger.debug(f"second-order expansion: {len(quadratic)} quadratic terms, {len(linear)} linear terms")
    return first, quadratic, linear


def second_order_coefficients(linear) -> List[Dict[int, Any]]:
    """Rows of the 35 x 75 matrix of b -> linear part"""
    rows: Dict[int, Dict[int, Any]] = {}
    for cubic, coeff in cubic_vector(linear).items():
        rows[cubic] = {monom.index(1): value for monom, value in coeff.items()}
    return [rows.get(m, {}) for m in range(NCUBICS)]


def cone_deg2(m: SkewLinMatrix) -> ConeQuadrics:
    """Quadrics sum lambda_m q_m(s) over the lambda killing every b-coefficient"""
    system = tangent_system(m)
    first, quadratic, linear = second_order_expansion(m)
    if first:
        raise InvalidParameter("first-order term does not vanish on the tangent space")
    b_matrix = qmatrix(second_order_coefficients(linear), NCOORDS)
    multipliers = matrix_rows(kernel_basis(b_matrix.transpose()))
    q = cubic_vector(quadratic)
    target = tangent_ring(system)
    quadrics = []
    for lam in multipliers:
        total = target.zero
        for cubic, value in enumerate(lam):
            if value and cubic in q:
                total += q[cubic].set_ring(target) * value
        quadrics.append(total)
    piece = piece_span(quadrics, 2, ring=target)
    logger.info(f"degree-2 cone: {piece.dim} quadrics from {len(multipliers)} multipliers")
    return ConeQuadrics(system, piece)


def table_cone(label: str) -> ConeQuadrics:
    """The tabulated tangent-cone quadrics of a catalog type, restricted to tangent coordinates"""
    from .catalog import CONE_N1, CONE_N2, TABULATED_CONES, catalog_matrix, check_label
    check_label(label)
    system = tangent_system(catalog_matrix(label))
    target = tangent_ring(system)
    if label == 'f':
        names = sorted({name for row in CONE_N1 + CONE_N2 for name in row})
        ring = polynomial_ring(tuple(names))
        var = dict(zip(names, ring.gens))
        n1 = [[var[name] for name in row] for row in CONE_N1]
        n2 = [[var[name] for name in row] for row in CONE_N2]
        side = piece_span(minors_2x2([a + b for a, b in zip(n1, n2)]), 2, ring=ring)
        stacked = piece_span(minors_2x2(n1 + n2), 2, ring=ring)
        tabulated = piece_intersection(side, stacked).polynomials()
    else:
        names = sorted({name for pair in TABULATED_CONES[label] for factor in pair for name in factor})
        if not names:
            return ConeQuadrics(system, piece_span([], 2, ring=target))
        ring = polynomial_ring(tuple(names))
        var = dict(zip(names, ring.gens))
        tabulated = []
        for left, right in TABULATED_CONES[label]:
            f = sum((var[n] * c for n, c in left.items()), ring.zero)
            g = sum((var[n] * c for n, c in right.items()), ring.zero)
            tabulated.append(f * g)
    return ConeQuadrics(system, piece_span(restrict_to_tangent(tabulated, system), 2, ring=target))


def parametric_2jet_check(m: SkewLinMatrix, label: Optional[str] = None) -> bool:
    """The e^2 coefficient of a general 2-jet lies in the saturated degree-3 piece

    Only defined for types (c) and (e), whose sub-Pfaffian ideal has an embedded point.
    """
    if label is None:
        from .classifier_service import classify
        label = classify(m).label
    if label not in ('c', 'e'):
        raise WrongType(f"the parametric 2-jet check is defined for types c and e, not '{label}'")
    first, quadratic, linear = second_order_expansion(m)
    if first:
        return False
    saturated = saturate_piece(sub_pfaffians(m).values(), rank0_point(m), 3)
    for part in (quadratic, linear):
        leftover = residue(cubic_vector(part), saturated)
        if leftover:
            logger.warning(f"2-jet residue has {len(leftover)} nonzero coordinates")
            return False
    return True


def hensel_lift(m: SkewLinMatrix, tangent_vector: Sequence[Any]) -> Optional[SkewLinMatrix]:
    """A rational M2 with Pf(M + e M1 + e^2 M2) = 0 mod e^3, or None

    tangent_vector holds the 75 a-coordinates of M1 and must satisfy the tangent equations.
    """
    system = tangent_system(m)
    values = [QQ.convert(v) for v in tangent_vector]
    m1 = matrix_from_vector(values, m.ring)
    if laplace_pairing(m1, m):
        raise InvalidParameter("vector is not tangent: first-order term is nonzero")
    quadratic = laplace_pairing(m, m1)
    target = [QQ.zero] * NCUBICS
    for col, value in coordinates(quadratic, 3).items():
        target[col] = -value
    solution = solve(system.coefficients, target)
    if solution is None:
        return None
    return matrix_from_vector(solution, m.ring)


def tangent_point(system: TangentSystem, values: Sequence[Any]) -> List[Any]:
    """The 75 a-coordinates of the tangent vector with tangent coordinates `values`"""
    vector = [QQ.zero] * NCOORDS
    for value, row in zip(values, sparse_rows(system.kernel)):
        for c, entry in row.items():
            vector[c] += QQ.convert(value) * entry
    return vector


def orbit_action_matrix(m: SkewLinMatrix) -> List[Dict[int, Any]]:
    """Columns of the infinitesimal action of gl6 + gl5 at M, as 75-vectors"""
    coefficients = {pair: value for pair, value in m.pairs()}
    position = {pair: p for p, pair in enumerate(PAIRS)}
    gens = m.ring.gens

    def add(column, i, j, value):
        if i == j or not value:
            return
        if i > j:
            i, j, value = j, i, -value
        base = NX * position[(i, j)]
        for monom, coeff in value.items():
            c = base + monom.index(1)
            column[c] = column.get(c, QQ.zero) + coeff

    columns = []
    for p in range(SIZE):
        for q in range(SIZE):
            column: Dict[int, Any] = {}
            # g = E_pq: entry (i, j) gains delta_iq M_pj + M_ip delta_jq
            for i, j in PAIRS:
                value = m.ring.zero
                if i == q:
                    value += m.entry(p, j)
                if j == q:
                    value += m.entry(i, p)
                add(column, i, j, value)
            columns.append(column)
    for k in range(NX):
        for l in range(NX):
            column = {}
            for pair, value in coefficients.items():
                coeff = value.coeff(gens[k]) if value else 0
                if coeff:
                    add(column, pair[0], pair[1], gens[l] * coeff)
            columns.append(column)
    return columns


def orbit_codim(m: SkewLinMatrix) -> int:
    """Codimension of the projective orbit of [M] in P(S)

    The affine image of the action contains M itself (g scalar), so the projective orbit has
    dimension rank - 1 inside a 74-dimensional space.
    """
    if m.size != SIZE:
        raise InvalidParameter(f"orbit codimension needs a {SIZE}x{SIZE} matrix")
    columns = orbit_action_matrix(m)
    action_rank = rank(qmatrix(columns, NCOORDS))
    logger.debug(f"orbit action: rank {action_rank} of {len(columns)} columns")
    return (NCOORDS - 1) - (action_rank - 1)


def intersection_codims() -> Dict[str, int]:
    """Orbit codimensions of types a, b and c"""
    from .catalog import catalog_matrix
    return {label: orbit_codim(catalog_matrix(label)) for label in ('a', 'b', 'c')}


def random_tangent_values(rng: random.Random, system: TangentSystem, bound: int = 3) -> List[Any]:
    return [QQ(rng.randint(-bound, bound)) for _ in range(system.dim)]


class TangentService:
    """Tangent computations with per-matrix caching"""

    def __init__(self):
        logger.debug("TangentService ready")

    def system(self, m: SkewLinMatrix) -> TangentSystem:
        return tangent_system(m)

    def codim(self, m: SkewLinMatrix) -> int:
        return tangent_codim(m)

    def cone(self, m: SkewLinMatrix) -> ConeQuadrics:
        return cone_deg2(m)

    def tabulated_cone(self, label: str) -> ConeQuadrics:
        return table_cone(label)

    def orbit_codim(self, m: SkewLinMatrix) -> int:
        return orbit_codim(m)

    def two_jet_check(self, m: SkewLinMatrix, label: Optional[str] = None) -> bool:
        return parametric_2jet_check(m, label)

    def clear_cache(self):
        tangent_system.cache_clear()
        second_order_expansion.cache_clear()
