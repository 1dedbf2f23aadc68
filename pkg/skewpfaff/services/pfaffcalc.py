"""
Pfaffian calculus for skew matrices of linear forms

Sign convention: the sub-Pfaffian q_ab is the Pfaffian of the matrix with rows and columns
a and b removed, and the Laplace pairing weights it by (-1)^(a+b+1). With that sign the
e-coefficient of Pf(M + e L) is sum_{a<b} (-1)^(a+b+1) L_ab q_ab(M).
"""

import random
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ

from ..models.linear import DegreePiece
from ..models.matrix import Index, PointIdeal, SkewLinMatrix, SyzygyMatrix, upper_pairs
from ..models.polynomial import (
    NX, linear_coefficients, linear_form, monomial_basis, monomial_index, substitute_linear, x_ring
)
from ..utils.config import Config
from ..utils.errors import (
    InvalidParameter, NoPfaffianZero, NonHomogeneous, NonStabilizing, OddSize, WrongSpanDimension
)
from ..utils.logging import get_logger
from .exactalg import (
    fraction_free_rank, inverse, kernel_basis, matrix_rows, piece_from_vectors, piece_span,
    qmatrix, rank, residue, sparse_rows
)

logger = get_logger('pfaffcalc')


def laplace_sign(a: int, b: int) -> int:
    return -1 if (a + b) % 2 == 0 else 1


def pfaffian_entries(rows: Sequence[Sequence[Any]], one: Any, indices: Optional[Sequence[int]] = None) -> Any:
    """Pfaffian by expansion along the first remaining row

    Works for any entries supporting +, -, * and truthiness (polynomials, jets, rationals).
    `one` is the unit of the coefficient ring; `indices` selects a principal submatrix.
    """
    if indices is None:
        indices = range(len(rows))
    indices = tuple(indices)
    if len(indices) % 2:
        raise OddSize(f"Pfaffian of a {len(indices)}x{len(indices)} matrix is undefined")
    zero = one - one
    cache: Dict[Tuple[int, ...], Any] = {}

    def expand(remaining: Tuple[int, ...]) -> Any:
        if not remaining:
            return one
        if remaining in cache:
            return cache[remaining]
        first, rest = remaining[0], remaining[1:]
        total = zero
        for position, k in enumerate(rest):
            entry = rows[first][k]
            if not entry:
                continue
            minor = expand(rest[:position] + rest[position + 1:])
            if not minor:
                continue
            term = entry * minor
            total = total + term if position % 2 == 0 else total - term
        cache[remaining] = total
        return total

    return expand(indices)


def pfaffian(m: SkewLinMatrix):
    if m.size % 2:
        raise OddSize(f"Pfaffian of a {m.size}x{m.size} matrix is undefined")
    return pfaffian_entries(m.rows(), m.ring.one)


def sub_pfaffians_entries(rows: Sequence[Sequence[Any]], one: Any) -> Dict[Index, Any]:
    size = len(rows)
    return {
        (a, b): pfaffian_entries(rows, one, [k for k in range(size) if k not in (a, b)])
        for a, b in upper_pairs(size)
    }


def sub_pfaffians(m: SkewLinMatrix) -> Dict[Index, Any]:
    """{(a, b): q_ab} for all a < b"""
    if m.size % 2:
        raise OddSize(f"sub-Pfaffians of a {m.size}x{m.size} matrix are undefined")
    return sub_pfaffians_entries(m.rows(), m.ring.one)


def laplace_pairing(l: SkewLinMatrix, m: SkewLinMatrix, first_rows: Optional[Iterable[int]] = None):
    """sum (-1)^(a+b+1) l_ab q_ab(m), optionally only over a in first_rows

    pairing(m, m) is (size/2) Pf(m); pairing(m, m, first_rows=[0]) is Pf(m).
    """
    allowed = set(first_rows) if first_rows is not None else None
    q = sub_pfaffians(m)
    total = m.ring.zero
    for (a, b), value in l.upper.items():
        if allowed is not None and a not in allowed:
            continue
        term = value * q[(a, b)]
        total += term if laplace_sign(a, b) > 0 else -term
    return total


def laplace_matrix(forms: Dict[Index, Any], size: int, ring) -> SkewLinMatrix:
    """The skew matrix L with laplace_pairing(L, m) = sum forms[ab] q_ab(m)"""
    return SkewLinMatrix(size, ring, {
        pair: (value if laplace_sign(*pair) > 0 else -value) for pair, value in forms.items()
    })


def entry_span(m: SkewLinMatrix) -> DegreePiece:
    """Span of the entries; the rank-0 locus is its zero set"""
    return piece_span(m.upper.values(), 1, ring=m.ring)


def _linear_system(columns: Sequence[Sequence[Any]], ring) -> List[Dict[int, Any]]:
    """Rows of the degree-1 system sum_j columns[j][i] * v_j = 0 for all i

    Unknown 5*j + l is the x_l coefficient of v_j.
    """
    count = len(columns[0]) if columns else 0
    quad_index = monomial_index(ring.ngens, 2)
    width = len(quad_index)
    gens = ring.gens
    rows: Dict[int, Dict[int, Any]] = {}
    for i in range(count):
        for j, column in enumerate(columns):
            entry = column[i]
            if not entry:
                continue
            for l in range(NX):
                for monom, coeff in (entry * gens[l]).items():
                    row = rows.setdefault(i * width + quad_index[monom], {})
                    unknown = NX * j + l
                    row[unknown] = row.get(unknown, QQ.zero) + coeff
    return list(rows.values())


def _solutions_to_forms(kernel, ring, size: int) -> List[Tuple[Any, ...]]:
    forms = []
    for vector in matrix_rows(kernel):
        forms.append(tuple(linear_form(ring, vector[NX * j:NX * (j + 1)]) for j in range(size)))
    return forms


def linear_syzygies(m: SkewLinMatrix) -> SyzygyMatrix:
    """Basis of {v : 6-vector of linear forms, m v = 0}"""
    if pfaffian(m):
        raise NoPfaffianZero("linear syzygies are only computed for matrices with vanishing Pfaffian")
    columns = [[m.entry(i, j) for i in range(m.size)] for j in range(m.size)]
    system = _linear_system(columns, m.ring)
    kernel = kernel_basis(qmatrix(system, NX * m.size))
    logger.debug(f"linear syzygies: {kernel.shape[0]} from {len(system)} equations")
    return SyzygyMatrix(m.size, tuple(_solutions_to_forms(kernel, m.ring, m.size)))


def transpose_syzygies(s: SyzygyMatrix, ring) -> List[Tuple[Any, ...]]:
    """Basis of {w : 6-vector of linear forms, S^T w = 0}"""
    columns = [[s.columns[c][i] for c in range(s.count)] for i in range(s.size)]
    kernel = kernel_basis(qmatrix(_linear_system(columns, ring), NX * s.size))
    return _solutions_to_forms(kernel, ring, s.size)


def form_vector(forms: Sequence[Any]) -> List[Any]:
    """Concatenated coefficient vectors of a tuple of linear forms"""
    vector = []
    for form in forms:
        vector.extend(linear_coefficients(form) if form else [QQ.zero] * NX)
    return vector


def column_span_equal(left: Sequence[Sequence[Any]], right: Sequence[Sequence[Any]]) -> bool:
    """Equality of the QQ-spans of two lists of linear-form vectors"""
    width = NX * len(left[0]) if left else NX * len(right[0])
    a = qmatrix([form_vector(v) for v in left], width)
    b = qmatrix([form_vector(v) for v in right], width)
    both = qmatrix([form_vector(v) for v in list(left) + list(right)], width)
    return rank(a) == rank(b) == rank(both)


def syzygy_span_equal(s: SyzygyMatrix, other: SyzygyMatrix) -> bool:
    return column_span_equal(s.columns, other.columns)


def minors_2x2(rows: Sequence[Sequence[Any]]) -> List[Any]:
    """All 2x2 minors of a matrix given by rows"""
    minors = []
    ncols = len(rows[0]) if rows else 0
    for r1, r2 in combinations(range(len(rows)), 2):
        for c1, c2 in combinations(range(ncols), 2):
            minor = rows[r1][c1] * rows[r2][c2] - rows[r1][c2] * rows[r2][c1]
            if minor:
                minors.append(minor)
    return minors


def syzygy_rows(s: SyzygyMatrix) -> List[List[Any]]:
    return [[s.columns[c][i] for c in range(s.count)] for i in range(s.size)]


def ideal_piece(gens: Iterable[Any], degree: int, ring=None) -> DegreePiece:
    """Degree-d part of the ideal generated by homogeneous gens"""
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise InvalidParameter("ring is required for an ideal without generators")
        ring = gens[0].ring
    index = monomial_index(ring.ngens, degree)
    vectors = []
    by_degree: Dict[int, List[Any]] = {}
    for gen in gens:
        degrees = {sum(monom) for monom in gen.keys()}
        if len(degrees) != 1:
            raise NonHomogeneous(f"generator is not homogeneous: {gen}")
        by_degree.setdefault(degrees.pop(), []).append(gen)
    for gen_degree, group in by_degree.items():
        if gen_degree > degree:
            continue
        multipliers = monomial_basis(ring.ngens, degree - gen_degree)
        for gen in group:
            terms = list(gen.items())
            for mult in multipliers:
                vector = {}
                for monom, coeff in terms:
                    shifted = tuple(a + b for a, b in zip(monom, mult))
                    vector[index[shifted]] = coeff
                vectors.append(vector)
    return piece_from_vectors(ring, degree, vectors)


def rank0_point(m: SkewLinMatrix) -> PointIdeal:
    """The point where every entry vanishes, for entry spans of dimension 4"""
    span = entry_span(m)
    if span.dim != 4:
        raise WrongSpanDimension(f"entry span has dimension {span.dim}; a single rank-0 point needs 4")
    return PointIdeal(tuple(span.polynomials()))


def _point_chart(point: PointIdeal) -> Tuple[List[List[Any]], List[List[Any]]]:
    """Invertible C with C x = (f0, f1, f2, f3, x_k), and its inverse"""
    vectors = [linear_coefficients(form) for form in point.forms]
    for k in range(NX):
        unit = [QQ.zero] * NX
        unit[k] = QQ.one
        candidate = vectors + [unit]
        if rank(qmatrix(candidate, NX)) == NX:
            forward = qmatrix(candidate, NX)
            return matrix_rows(forward), matrix_rows(inverse(forward))
    raise InvalidParameter("point forms do not extend to a coordinate system")


def saturate_piece(gens: Iterable[Any], point: PointIdeal, degree: int, cap: Optional[int] = None) -> DegreePiece:
    """Degree-d part of (I : m_p^infinity) for I generated by gens

    In coordinates y = C x with the point at [0:0:0:0:1], f lies in (I : m^N)_d iff f * mu lies
    in I_{d+N} for every monomial mu of degree N in y0..y3. N grows until the dimension is
    unchanged for two consecutive steps.
    """
    cap = cap if cap is not None else Config.COLON_CAP
    gens = [g for g in gens if g]
    if not gens:
        raise InvalidParameter("saturation needs at least one generator")
    ring = gens[0].ring
    if ring.ngens != NX:
        raise InvalidParameter("saturation works in the coordinate ring of P^4 only")
    forward, backward = _point_chart(point)
    moved = [substitute_linear(g, backward) for g in gens]
    basis = monomial_basis(ring.ngens, degree)

    history = [ideal_piece(moved, degree, ring).dim]
    result = None
    for power in range(1, cap + 1):
        target = ideal_piece(moved, degree + power, ring)
        target_index = monomial_index(ring.ngens, degree + power)
        multipliers = [mu for mu in monomial_basis(ring.ngens, power) if mu[NX - 1] == 0]
        constraints: Dict[Tuple[int, int], Dict[int, Any]] = {}
        for col, monom in enumerate(basis):
            for position, mu in enumerate(multipliers):
                product = tuple(a + b for a, b in zip(monom, mu))
                for coord, value in residue({target_index[product]: QQ.one}, target).items():
                    constraints.setdefault((position, coord), {})[col] = value
        colon = kernel_basis(qmatrix(list(constraints.values()), len(basis)))
        history.append(colon.shape[0])
        logger.debug(f"colon by m^{power} in degree {degree}: dim {colon.shape[0]}")
        result = colon
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
    else:
        raise NonStabilizing(f"saturation dimensions {history} did not stabilize within {cap} steps")

    moved_back = []
    for vector in sparse_rows(result):
        poly = ring.from_dict({basis[col]: value for col, value in vector.items()})
        moved_back.append(substitute_linear(poly, forward))
    return piece_span(moved_back, degree, ring=ring)


def transform(m: SkewLinMatrix, b: Sequence[Sequence[Any]], c: Optional[Sequence[Sequence[Any]]] = None) -> SkewLinMatrix:
    """B^T m(C x) B for constant B (size x size) and C (5 x 5)"""
    size = m.size
    source = m.map(lambda value: substitute_linear(value, c)) if c is not None else m
    rows = source.rows()
    ring = m.ring
    coeff = [[QQ.convert(v) for v in row] for row in b]
    half = [[ring.zero] * size for _ in range(size)]
    for k in range(size):
        for j in range(size):
            total = ring.zero
            for l in range(size):
                if rows[k][l] and coeff[l][j]:
                    total += rows[k][l] * coeff[l][j]
            half[k][j] = total
    upper = {}
    for i, j in upper_pairs(size):
        total = ring.zero
        for k in range(size):
            if coeff[k][i] and half[k][j]:
                total += half[k][j] * coeff[k][i]
        upper[(i, j)] = total
    return SkewLinMatrix(size, ring, upper)


def substitute_cubic(cubic, c: Sequence[Sequence[Any]]):
    """F(C x)"""
    return substitute_linear(cubic, c)


def random_invertible(rng: random.Random, size: int, bound: int = 2) -> List[List[Any]]:
    """Random invertible integer matrix with entries in [-bound, bound]"""
    while True:
        rows = [[QQ(rng.randint(-bound, bound)) for _ in range(size)] for _ in range(size)]
        if fraction_free_rank(rows) == size:
            return rows


def random_skew(rng: random.Random, size: int, ring=None, bound: int = 3, constant: bool = False) -> SkewLinMatrix:
    """Random skew matrix of linear forms (or of constants) with small integer coefficients"""
    ring = ring or x_ring()
    upper = {}
    for pair in upper_pairs(size):
        if constant:
            upper[pair] = ring.one * QQ(rng.randint(-bound, bound))
        else:
            upper[pair] = linear_form(ring, [rng.randint(-bound, bound) for _ in range(NX)])
    return SkewLinMatrix(size, ring, upper)
