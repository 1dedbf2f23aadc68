"""
Exact linear algebra over QQ

Matrices are sympy DomainMatrix values in sparse format. Every subspace that is compared
anywhere in the toolkit goes through rref(), so equal subspaces have identical bases.
"""

from functools import reduce
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ..models.linear import DegreePiece, QMatrix, sparse_row
from ..models.polynomial import is_homogeneous, monomial_basis, monomial_index, split_by_x, NX
from ..utils.errors import DegreeMismatch, InvalidParameter, NonHomogeneous
from ..utils.logging import get_logger

logger = get_logger('exactalg')

Row = Union[Sequence[Any], Mapping[int, Any]]


def qmatrix(rows: Iterable[Row], ncols: int, domain=QQ) -> QMatrix:
    """Build a sparse DomainMatrix from dense rows or {column: value} rows"""
    data: Dict[int, Dict[int, Any]] = {}
    count = 0
    for i, row in enumerate(rows):
        count = i + 1
        items = row.items() if isinstance(row, Mapping) else enumerate(row)
        cleaned = {}
        for j, value in items:
            if not 0 <= j < ncols:
                raise InvalidParameter(f"column {j} outside a matrix with {ncols} columns")
            value = domain.convert(value)
            if value:
                cleaned[j] = value
        if cleaned:
            data[i] = cleaned
    return DomainMatrix(data, (count, ncols), domain)


def sparse_rows(m: QMatrix) -> List[Dict[int, Any]]:
    """One {column: value} dict per row, empty rows included"""
    rep = m.to_sparse().rep
    return [dict(rep.get(i, {})) for i in range(m.shape[0])]


def matrix_rows(m: QMatrix) -> List[List[Any]]:
    """Dense rows as lists of domain elements"""
    zero = m.domain.zero
    rows = []
    for row in sparse_rows(m):
        dense = [zero] * m.shape[1]
        for j, value in row.items():
            dense[j] = value
        rows.append(dense)
    return rows


def transpose(m: QMatrix) -> QMatrix:
    return m.transpose()


def rref(m: QMatrix) -> Tuple[QMatrix, Tuple[int, ...]]:
    """Reduced row-echelon form with the zero rows dropped, and the pivot columns"""
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return DomainMatrix({}, (0, ncols), m.domain), ()
    reduced, pivots = m.to_sparse().rref()
    pivots = tuple(pivots)
    rep = reduced.to_sparse().rep
    data = {i: dict(rep.get(i, {})) for i in range(len(pivots))}
    return DomainMatrix(data, (len(pivots), ncols), m.domain), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: QMatrix) -> QMatrix:
    """Right null space; rows are a basis in reduced row-echelon form"""
    ncols = m.shape[1]
    reduced, pivots = rref(m)
    rows = sparse_rows(reduced)
    pivot_set = set(pivots)
    one = m.domain.one
    vectors = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: one}
        for row, pivot in zip(rows, pivots):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        vectors.append(vector)
    basis, _ = rref(qmatrix(vectors, ncols, m.domain))
    logger.debug(f"kernel of {m.shape[0]}x{ncols} matrix: rank {len(pivots)}, nullity {basis.shape[0]}")
    return basis


def left_kernel_basis(m: QMatrix) -> QMatrix:
    """Row vectors y with y m = 0"""
    return kernel_basis(m.transpose())


def solve(m: QMatrix, target: Sequence[Any]) -> Optional[List[Any]]:
    """One solution x of m x = target, or None when the system is inconsistent

    The solution sets every free variable to zero.
    """
    nrows, ncols = m.shape
    if len(target) != nrows:
        raise InvalidParameter(f"right-hand side has {len(target)} entries, expected {nrows}")
    augmented = [dict(row) for row in sparse_rows(m)]
    for i, value in enumerate(target):
        value = m.domain.convert(value)
        if value:
            augmented[i][ncols] = value
    reduced, pivots = rref(qmatrix(augmented, ncols + 1, m.domain))
    if pivots and pivots[-1] == ncols:
        return None
    solution = [m.domain.zero] * ncols
    for row, pivot in zip(sparse_rows(reduced), pivots):
        solution[pivot] = row.get(ncols, m.domain.zero)
    return solution


def inverse(m: QMatrix) -> QMatrix:
    if m.shape[0] != m.shape[1]:
        raise InvalidParameter(f"cannot invert a {m.shape[0]}x{m.shape[1]} matrix")
    return m.to_dense().inv()


# Degree pieces

def coordinates(poly, degree: Optional[int] = None) -> Dict[int, Any]:
    """Coefficient vector of a homogeneous polynomial against monomial_basis"""
    if degree is None:
        degree = next((sum(monom) for monom in poly.keys()), 0)
    if not is_homogeneous(poly, degree):
        raise NonHomogeneous(f"polynomial is not homogeneous of degree {degree}: {poly}")
    index = monomial_index(poly.ring.ngens, degree)
    return {index[monom]: coeff for monom, coeff in poly.items()}


def piece_from_vectors(ring, degree: int, vectors: Iterable[Row]) -> DegreePiece:
    ambient = len(monomial_basis(ring.ngens, degree))
    reduced, pivots = rref(qmatrix(vectors, ambient))
    rows = tuple(sparse_row(row) for row in sparse_rows(reduced))
    return DegreePiece(ring, degree, rows, pivots)


def piece_span(polys: Iterable[Any], degree: int, ring=None) -> DegreePiece:
    """Canonical span of homogeneous polynomials of one degree"""
    polys = list(polys)
    if ring is None:
        if not polys:
            raise InvalidParameter("ring is required to span an empty list")
        ring = polys[0].ring
    vectors = []
    for poly in polys:
        if poly.ring != ring:
            poly = poly.set_ring(ring)
        if poly:
            vectors.append(coordinates(poly, degree))
    return piece_from_vectors(ring, degree, vectors)


def zero_piece(ring, degree: int) -> DegreePiece:
    return DegreePiece(ring, degree, (), ())


def full_piece(ring, degree: int) -> DegreePiece:
    ambient = len(monomial_basis(ring.ngens, degree))
    return DegreePiece(ring, degree, tuple(((j, QQ.one),) for j in range(ambient)), tuple(range(ambient)))


def _check_compatible(a: DegreePiece, b: DegreePiece):
    if a.degree != b.degree or a.ring.ngens != b.ring.ngens:
        raise DegreeMismatch(
            f"pieces live in different spaces: degree {a.degree} in {a.ring.ngens} variables "
            f"and degree {b.degree} in {b.ring.ngens} variables"
        )


def piece_sum(a: DegreePiece, b: DegreePiece) -> DegreePiece:
    _check_compatible(a, b)
    return piece_from_vectors(a.ring, a.degree, a.row_dicts() + b.row_dicts())


def _orthogonal(piece: DegreePiece) -> List[Dict[int, Any]]:
    return sparse_rows(kernel_basis(qmatrix(piece.row_dicts(), piece.ambient_dim)))


def piece_intersection(a: DegreePiece, b: DegreePiece) -> DegreePiece:
    """(a^perp + b^perp)^perp against the standard pairing on coefficient vectors"""
    _check_compatible(a, b)
    ambient = a.ambient_dim
    normals = _orthogonal(a) + _orthogonal(b)
    if not normals:
        return full_piece(a.ring, a.degree)
    return piece_from_vectors(a.ring, a.degree, sparse_rows(kernel_basis(qmatrix(normals, ambient))))


def residue(vector: Mapping[int, Any], piece: DegreePiece) -> Dict[int, Any]:
    """vector minus its reduction by the piece; zero at every pivot column"""
    result = {col: value for col, value in vector.items() if value}
    for row, pivot in zip(piece.rows, piece.pivots):
        factor = result.get(pivot)
        if not factor:
            continue
        for col, value in row:
            updated = result.get(col, 0) - factor * value
            if updated:
                result[col] = updated
            else:
                result.pop(col, None)
    return result


def piece_contains(a: DegreePiece, b: DegreePiece) -> bool:
    """True iff b is a subspace of a"""
    _check_compatible(a, b)
    return all(not residue(row, a) for row in b.row_dicts())


def contains_poly(piece: DegreePiece, poly) -> bool:
    if not poly:
        return True
    return not residue(coordinates(poly, piece.degree), piece)


def piece_coordinates(piece: DegreePiece, poly) -> Optional[List[Any]]:
    """Coordinates of poly in the RREF basis of the piece, or None if outside"""
    vector = coordinates(poly, piece.degree) if poly else {}
    if residue(vector, piece):
        return None
    return [vector.get(pivot, QQ.zero) for pivot in piece.pivots]


def span_equal(a: DegreePiece, b: DegreePiece) -> bool:
    _check_compatible(a, b)
    return a.pivots == b.pivots and a.rows == b.rows


def piece_ops(a: DegreePiece, b: DegreePiece, op: str = 'sum'):
    """sum | intersection | contains"""
    if op == 'sum':
        return piece_sum(a, b)
    if op == 'intersection':
        return piece_intersection(a, b)
    if op == 'contains':
        return piece_contains(a, b)
    raise InvalidParameter(f"unknown piece operation '{op}'")


# Spans with coefficients in a parameter ring

def parameter_field(ring, nx: int = NX):
    """QQ(parameters) for an extended ring x0..x4, params"""
    return QQ.frac_field(*ring.symbols[nx:])


def _generic_vectors(polys: Sequence[Any], degree: int, field, nx: int) -> List[Dict[int, Any]]:
    index = monomial_index(nx, degree)
    vectors = []
    for poly in polys:
        vector = {}
        for x_monom, coeff in split_by_x(poly, nx).items():
            if sum(x_monom) != degree:
                raise NonHomogeneous(f"polynomial is not homogeneous of x-degree {degree}: {poly}")
            vector[index[x_monom]] = field.from_sympy(coeff.as_expr())
        vectors.append(vector)
    return vectors


def generic_rank(polys: Sequence[Any], degree: int, nx: int = NX) -> int:
    """Rank of the x-coefficient vectors over the fraction field of the parameters"""
    polys = [p for p in polys if p]
    if not polys:
        return 0
    field = parameter_field(polys[0].ring, nx)
    ambient = len(monomial_basis(nx, degree))
    return rank(qmatrix(_generic_vectors(polys, degree, field, nx), ambient, field))


def contains_generic(gens: Sequence[Any], polys: Sequence[Any], degree: int, nx: int = NX) -> bool:
    """Every poly lies in the span of gens over QQ(parameters)"""
    base = generic_rank(gens, degree, nx)
    return generic_rank(list(gens) + list(polys), degree, nx) == base


# Fraction-free oracles

def _row_scale(row: Sequence[Any]) -> int:
    """Least common denominator of a rational row"""
    return int(reduce(ZZ.lcm, (ZZ(int(QQ.convert(v).denominator)) for v in row), ZZ.one))


def _integer_rows(rows: Sequence[Sequence[Any]]) -> List[List[int]]:
    result = []
    for row in rows:
        values = [QQ.convert(v) for v in row]
        scale = _row_scale(values)
        result.append([int(v.numerator) * (scale // int(v.denominator)) for v in values])
    return result


def _bareiss(matrix: List[List[int]]) -> Tuple[int, int]:
    """Bareiss elimination in place; returns (rank, signed last pivot)"""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    previous = 1
    sign = 1
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        pivot_row = next((r for r in range(row, nrows) if matrix[r][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != row:
            matrix[row], matrix[pivot_row] = matrix[pivot_row], matrix[row]
            sign = -sign
        pivot = matrix[row][col]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                matrix[r][c] = (pivot * matrix[r][c] - matrix[r][col] * matrix[row][c]) // previous
            matrix[r][col] = 0
        previous = pivot
        row += 1
    return row, sign * previous


def fraction_free_rank(rows: Sequence[Sequence[Any]]) -> int:
    """Rank by integer-preserving elimination, independent of rref()"""
    if not rows:
        return 0
    return _bareiss(_integer_rows(rows))[0]


def fraction_free_determinant(rows: Sequence[Sequence[Any]]):
    """Determinant of a square rational matrix by Bareiss elimination"""
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise InvalidParameter("determinant needs a square matrix")
    if size == 0:
        return QQ.one
    scales = [_row_scale(row) for row in rows]
    integer_rows = _integer_rows(rows)
    found, value = _bareiss(integer_rows)
    if found < size:
        return QQ.zero
    denominator = 1
    for scale in scales:
        denominator *= scale
    return QQ(value, denominator)
