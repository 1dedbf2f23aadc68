"""
Degeneration families between catalog strata

Every family lives in QQ[x0..x4, t]. An arrow X->Y is a family M_t of type X for t != 0
whose member at t = 0 has type Y.
"""

import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from ..models.jet import JetMatrix
from ..models.matrix import SkewLinMatrix
from ..models.polynomial import NX, extended_ring, monomial_basis, polynomial_ring, split_by_x, substitute, x_ring
from ..models.report import CheckResult, DeformationFamily
from ..utils.config import Config
from ..utils.errors import InvalidParameter, NotSkew, Unclassified, UnknownArrow
from ..utils.logging import get_logger
from .catalog import catalog_matrix
from .classifier_service import classify
from .exactalg import (
    contains_generic, contains_poly, generic_rank, left_kernel_basis, matrix_rows, piece_contains,
    piece_span, qmatrix, rank
)
from .jets import jet_sub_pfaffians
from .pfaffcalc import ideal_piece, pfaffian, sub_pfaffians

logger = get_logger('strata_service')

ARROWS: Tuple[str, ...] = ('a->c', 'b->d', 'c->e', 'b->c', 'd->e', 'e->f')
CASE3 = 'case3'


def family_ring():
    return extended_ring(('t',))


def _lift(m: SkewLinMatrix) -> SkewLinMatrix:
    return m.set_ring(family_ring())


def family(arrow: str) -> DeformationFamily:
    """The one-parameter family realizing a degeneration arrow"""
    ring = family_ring()
    x0, x1, x2, x3, x4, t = ring.gens
    if arrow == 'a->c':
        m = _lift(catalog_matrix('a')).with_entry(3, 4, x3 + t * x4)
        ideals = ((x1, x2, x0**2 - x3**2 - x3 * x4 * t),)
        return DeformationFamily(arrow, m, 'a', 'c', ideals)
    if arrow == 'b->d':
        m = _lift(catalog_matrix('d')).with_entry(0, 1, x3 * t**2).with_entry(0, 2, x4 * t**2)
        ideals = ((x2, x1 + t * x4, x0 + t * x3), (x2, x1 - t * x4, x0 - t * x3))
        return DeformationFamily(arrow, m, 'b', 'd', ideals)
    if arrow == 'c->e':
        m = _lift(catalog_matrix('e')).with_entry(0, 1, x3 * t**2)
        ideals = ((x1, x2, x0**2 - x3**2 * t**2),)
        return DeformationFamily(arrow, m, 'c', 'e', ideals)
    if arrow == 'b->c':
        m = SkewLinMatrix(6, ring, {
            (0, 1): x0, (0, 2): x1, (1, 2): x2,
            (3, 4): x1 + t * x4, (3, 5): x2, (4, 5): x3,
        })
        return DeformationFamily(arrow, m, 'b', 'c')
    if arrow == 'd->e':
        m = _lift(catalog_matrix('d')).with_entry(3, 5, t * x4)
        return DeformationFamily(arrow, m, 'd', 'e')
    if arrow == 'e->f':
        m = _lift(catalog_matrix('e')).with_entry(3, 4, t * x3)
        return DeformationFamily(arrow, m, 'e', 'f')
    raise UnknownArrow(f"unknown arrow '{arrow}', expected one of {', '.join(ARROWS)}")


def specialize(m: SkewLinMatrix, value: Any) -> SkewLinMatrix:
    """The member at t = value, as a matrix over QQ[x0..x4]"""
    target = x_ring()
    images = list(target.gens) + [target.one * QQ.convert(value)]
    return m.map(lambda entry: substitute(entry, images, target), target)


def x_degree_piece(gens: Sequence[Any], degree: int) -> List[Any]:
    """Spanning set of the x-degree-d part of the ideal, coefficients in QQ[t]"""
    ring = gens[0].ring
    spanning = []
    for gen in gens:
        x_degrees = {sum(monom[:NX]) for monom in gen.keys()}
        if len(x_degrees) != 1:
            raise InvalidParameter(f"generator is not homogeneous in x: {gen}")
        shift = degree - x_degrees.pop()
        if shift < 0:
            continue
        for monom in monomial_basis(NX, shift):
            factor = ring.from_dict({monom + (0,) * (ring.ngens - NX): QQ.one})
            spanning.append(gen * factor)
    return spanning


def _random_parameter(rng: random.Random) -> Any:
    value = 0
    while value == 0:
        value = rng.randint(-9, 9)
    return QQ(value)


def _classify_label(m: SkewLinMatrix) -> Optional[str]:
    try:
        return classify(m).label
    except Unclassified:
        return None


def verify_family(arrow: str, rng: Optional[random.Random] = None) -> List[CheckResult]:
    """Pfaffian, expected rank-2 ideals and endpoint types of one arrow"""
    rng = rng or random.Random(Config.SEED)
    fam = family(arrow)
    m = fam.matrix
    checks = [CheckResult('pfaffian vanishes identically', not pfaffian(m))]
    q = [value for value in sub_pfaffians(m).values() if value]
    t0 = _random_parameter(rng)

    if fam.ideals:
        for position, ideal in enumerate(fam.ideals):
            generic = contains_generic(x_degree_piece(ideal, 2), q, 2)
            checks.append(CheckResult(f'sub-Pfaffians in expected ideal {position + 1} (generic t)', generic))
        if arrow == 'b->d':
            special = substitute_all(q, t0)
            for position, ideal in enumerate(fam.ideals):
                piece = ideal_piece(substitute_all(ideal, t0), 2, ring=x_ring())
                inside = all(contains_poly(piece, poly) for poly in special)
                checks.append(CheckResult(
                    f'sub-Pfaffians in expected ideal {position + 1} (t = {t0})', inside,
                ))
    else:
        checks.append(CheckResult('expected ideal', True, details={'note': 'not applicable'}))

    at_zero = _classify_label(specialize(m, 0))
    at_t0 = _classify_label(specialize(m, t0))
    checks.append(CheckResult('type at t = 0', at_zero == fam.target, expected=fam.target, actual=at_zero))
    checks.append(CheckResult(
        'type at generic t', at_t0 == fam.source, expected=fam.source, actual=at_t0,
        details={'t': str(t0)},
    ))
    checks.append(specialization_check(arrow))
    return checks


def substitute_all(polys: Sequence[Any], value: Any) -> List[Any]:
    target = x_ring()
    images = list(target.gens) + [target.one * QQ.convert(value)]
    return [substitute(poly, images, target) for poly in polys]


def _evaluate_at_zero(row: Dict[int, Any]) -> Dict[int, Any]:
    return {col: value.get((0,), QQ.zero) for col, value in row.items() if value.get((0,), QQ.zero)}


def _divide_by_t(value, t_ring):
    terms = {}
    for monom, coeff in value.items():
        if monom[0] == 0:
            raise InvalidParameter("combination is not divisible by t")
        terms[(monom[0] - 1,)] = coeff
    return t_ring.from_dict(terms)


def flat_limit(polys: Sequence[Any], degree: int = 2, max_steps: int = 100):
    """Limit at t = 0 of the QQ(t)-span of x-homogeneous polynomials in QQ[x, t]

    A Q(t)-basis is reduced until its value at t = 0 has full rank: whenever the values
    are dependent, the dependent combination is divisible by t and replaces one of its rows.
    """
    polys = [p for p in polys if p]
    t_ring = polynomial_ring(('t',))
    width = len(monomial_basis(NX, degree))
    index = {monom: position for position, monom in enumerate(monomial_basis(NX, degree))}

    basis = []
    for poly in polys:
        if generic_rank(basis + [poly], degree) > len(basis):
            basis.append(poly)
    rows = []
    for poly in basis:
        rows.append({index[x_monom]: coeff for x_monom, coeff in split_by_x(poly).items()})

    for step in range(max_steps):
        values = [_evaluate_at_zero(row) for row in rows]
        if rank(qmatrix(values, width)) == len(rows):
            break
        relation = matrix_rows(left_kernel_basis(qmatrix(values, width)))[0]
        combined: Dict[int, Any] = {}
        for weight, row in zip(relation, rows):
            if not weight:
                continue
            for col, value in row.items():
                combined[col] = combined.get(col, t_ring.zero) + value * weight
        replaced = next(i for i, weight in enumerate(relation) if weight)
        rows[replaced] = {col: _divide_by_t(value, t_ring) for col, value in combined.items() if value}
        logger.debug(f"flat limit step {step + 1}: replaced row {replaced}")
    else:
        raise InvalidParameter(f"flat limit did not converge in {max_steps} steps")

    target = x_ring()
    basis_x = monomial_basis(NX, degree)
    limit = [target.from_dict({basis_x[col]: value for col, value in row.items()}) for row in
             (_evaluate_at_zero(r) for r in rows)]
    return piece_span(limit, degree, ring=target)


def specialization_check(arrow: str) -> CheckResult:
    """The sub-Pfaffians of M_0 lie in the t -> 0 limit of the generic sub-Pfaffian span"""
    fam = family(arrow)
    limit = flat_limit(list(sub_pfaffians(fam.matrix).values()))
    special = piece_span(sub_pfaffians(specialize(fam.matrix, 0)).values(), 2, ring=x_ring())
    return CheckResult(
        'specialization of the rank-2 locus', piece_contains(limit, special),
        expected=limit.dim, actual=special.dim,
    )


def _blocks(a: SkewLinMatrix, b: SkewLinMatrix) -> Tuple[List[List[Any]], List[List[Any]]]:
    ring = family_ring()
    return (
        [[value.set_ring(ring) for value in row] for row in a.rows()],
        [[value.set_ring(ring) for value in row] for row in b.rows()],
    )


def _assemble(blocks: Sequence[Sequence[List[List[Any]]]]) -> List[List[Any]]:
    rows = []
    for block_row in blocks:
        for r in range(len(block_row[0])):
            rows.append([value for block in block_row for value in block[r]])
    return rows


def _combine(*terms: Tuple[Any, List[List[Any]]]) -> List[List[Any]]:
    size = len(terms[0][1])
    return [[sum((c * block[i][j] for c, block in terms), terms[0][1][0][0].ring.zero)
             for j in range(size)] for i in range(size)]


def _matmul(left: List[List[Any]], right: List[List[Any]], zero) -> List[List[Any]]:
    return [[sum((left[i][k] * right[k][j] for k in range(len(right))), zero)
             for j in range(len(right[0]))] for i in range(len(left))]


def _transpose(rows: List[List[Any]]) -> List[List[Any]]:
    return [list(column) for column in zip(*rows)]


def case3_family(a: SkewLinMatrix, b: SkewLinMatrix, order: int = 1) -> DeformationFamily:
    """M_t = [[-t^2 B, 2A + tB], [2A + tB, -B]] with A_t = A + tB

    A_t is truncated at t-order `order`; its higher-order terms are zero, so every order >= 1
    gives the same family.
    """
    if order < 1:
        raise InvalidParameter(f"the block-conjugation family needs t-order at least 1, got {order}")
    for name, block in (('A', a), ('B', b)):
        if block.size != 3:
            raise NotSkew(f"block {name} must be a 3x3 skew matrix, got size {block.size}")
    ring = family_ring()
    t = ring.gens[NX]
    a_rows, b_rows = _blocks(a, b)
    upper_right = _combine((2, a_rows), (t, b_rows))
    matrix = SkewLinMatrix.from_rows(_assemble((
        (_combine((-t**2, b_rows)), upper_right),
        (upper_right, _combine((-1, b_rows))),
    )), ring)
    return DeformationFamily(CASE3, matrix, 'c', 'e')


def case3_blocks() -> Tuple[SkewLinMatrix, SkewLinMatrix]:
    """A and B read off the type (e) normal form: M = [[0, 2A], [2A, -B]]"""
    m = catalog_matrix('e')
    ring = m.ring
    half = QQ(1, 2)
    a = SkewLinMatrix(3, ring, {(i, j): m.entry(i, 3 + j) * half for i in range(3) for j in range(i + 1, 3)})
    b = SkewLinMatrix(3, ring, {(i, j): -m.entry(3 + i, 3 + j) for i in range(3) for j in range(i + 1, 3)})
    return a, b


def verify_case3(a: Optional[SkewLinMatrix] = None, b: Optional[SkewLinMatrix] = None,
                 rng: Optional[random.Random] = None) -> Tuple[List[CheckResult], Dict[str, Any]]:
    """Block-conjugation family: centre, conjugation identity, Pfaffian and rank-2 jet"""
    if a is None or b is None:
        a, b = case3_blocks()
    rng = rng or random.Random(Config.SEED)
    fam = case3_family(a, b)
    ring = fam.ring
    t = ring.gens[NX]
    zero, one = ring.zero, ring.one
    a_rows, b_rows = _blocks(a, b)
    checks = []

    centre = specialize(fam.matrix, 0)
    two_a = _combine((2, a_rows))
    expected_centre = SkewLinMatrix.from_rows(_assemble((
        ([[zero] * 3 for _ in range(3)], two_a),
        (two_a, _combine((-1, b_rows))),
    )), ring)
    checks.append(CheckResult('centre is [[0, 2A], [2A, -B]]', centre == specialize(expected_centre, 0)))

    identity = [[one if i == j else zero for j in range(3)] for i in range(3)]
    blank = [[zero] * 3 for _ in range(3)]
    a_t = _combine((1, a_rows), (t, b_rows))
    diagonal = _assemble(((a_rows, blank), (blank, _combine((-1, a_t)))))
    p = _assemble(((identity, _combine((-1, identity))), (identity, identity)))
    q = _assemble(((_combine((t, identity)), blank), (blank, identity)))
    qp = _matmul(q, p, zero)
    conjugated = _matmul(_matmul(qp, diagonal, zero), _transpose(qp), zero)
    scaled = [[value * t for value in row] for row in fam.matrix.rows()]
    checks.append(CheckResult('conjugation identity', conjugated == scaled))

    checks.append(CheckResult('pfaffian vanishes identically', not pfaffian(fam.matrix)))

    jet_ring = a.ring
    bottom = [[-value for value in row] for row in b.rows()]
    twice_b = [[-2 * value for value in row] for row in b.rows()]
    empty = [[jet_ring.zero] * 3 for _ in range(3)]
    coefficients = [
        SkewLinMatrix.from_rows(_assemble(((empty, empty), (empty, bottom))), jet_ring),
        SkewLinMatrix.from_rows(_assemble(((empty, twice_b), (twice_b, empty))), jet_ring),
    ]
    jet = JetMatrix(tuple(coefficients))
    rank_two = all(not value for value in jet_sub_pfaffians(jet).values())
    checks.append(CheckResult('rank-2 jet mod e^2', rank_two))

    centre_type = _classify_label(centre)
    checks.append(CheckResult('type of the centre', centre_type == 'e', expected='e', actual=centre_type))

    t0 = _random_parameter(rng)
    generic_type = _classify_label(specialize(fam.matrix, t0))
    info = {'generic_type': generic_type, 't': str(t0)}
    logger.info(f"block-conjugation family: generic member has type {generic_type}")
    return checks, info


class StrataService:
    """Verifies the degeneration diagram"""

    def __init__(self, seed: Optional[int] = None):
        self.seed = Config.SEED if seed is None else seed

    def arrows(self) -> Tuple[str, ...]:
        return ARROWS

    def family(self, arrow: str) -> DeformationFamily:
        return family(arrow)

    def verify(self, arrow: str) -> List[CheckResult]:
        if arrow == CASE3:
            return verify_case3(rng=random.Random(self.seed))[0]
        logger.info(f"Verifying arrow {arrow}")
        return verify_family(arrow, random.Random(self.seed))

    def verify_all(self) -> Dict[str, List[CheckResult]]:
        return {arrow: self.verify(arrow) for arrow in ARROWS + (CASE3,)}
