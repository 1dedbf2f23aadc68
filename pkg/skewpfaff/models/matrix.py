"""
Skew matrix data models
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import PolyRing

from ..utils.errors import InvalidParameter, NotSkew
from ..utils.helpers import format_rational
from .polynomial import NX, X_NAMES, linear_coefficients, linear_form, x_ring

Index = Tuple[int, int]


def upper_pairs(size: int) -> List[Index]:
    """All (i, j) with i < j, row by row"""
    return [(i, j) for i in range(size) for j in range(i + 1, size)]


@dataclass(frozen=True, eq=False)
class SkewLinMatrix:
    """Skew-symmetric matrix stored by its upper-triangular entries

    Entries are elements of `ring`; for points of S they are linear forms in x0..x4,
    for families and jets the ring also carries parameters. Missing entries are zero.
    """
    size: int
    ring: PolyRing
    upper: Dict[Index, Any] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for (i, j), value in self.upper.items():
            if not 0 <= i < j < self.size:
                raise ValueError(f"entry index ({i}, {j}) is not strictly upper triangular for size {self.size}")
            value = self.ring.ring_new(value) if value is not None else self.ring.zero
            if value:
                cleaned[(i, j)] = value
        object.__setattr__(self, 'upper', cleaned)

    @classmethod
    def from_coefficients(cls, size: int, coefficients: Mapping[Index, Sequence],
                          ring: Optional[PolyRing] = None) -> 'SkewLinMatrix':
        """Build from {(i, j): [c0..c4]} with c_k the coefficient of x_k"""
        ring = ring or x_ring()
        return cls(size, ring, {pair: linear_form(ring, coeffs) for pair, coeffs in coefficients.items()})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], ring: PolyRing) -> 'SkewLinMatrix':
        """Build from a full matrix, checking skew-symmetry"""
        size = len(rows)
        for i in range(size):
            if len(rows[i]) != size:
                raise NotSkew(f"row {i} has length {len(rows[i])}, expected {size}")
            if ring.ring_new(rows[i][i]):
                raise NotSkew(f"diagonal entry ({i}, {i}) is nonzero")
            for j in range(i + 1, size):
                if ring.ring_new(rows[i][j]) != -ring.ring_new(rows[j][i]):
                    raise NotSkew(f"entries ({i}, {j}) and ({j}, {i}) are not opposite")
        return cls(size, ring, {(i, j): rows[i][j] for i, j in upper_pairs(size)})

    def entry(self, i: int, j: int):
        if i == j:
            return self.ring.zero
        if i < j:
            return self.upper.get((i, j), self.ring.zero)
        return -self.upper.get((j, i), self.ring.zero)

    def rows(self) -> List[List[Any]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def pairs(self) -> Iterator[Tuple[Index, Any]]:
        """(i, j), entry for every i < j, zeros included"""
        for pair in upper_pairs(self.size):
            yield pair, self.upper.get(pair, self.ring.zero)

    def map(self, fn: Callable[[Any], Any], ring: Optional[PolyRing] = None) -> 'SkewLinMatrix':
        ring = ring or self.ring
        return SkewLinMatrix(self.size, ring, {pair: fn(value) for pair, value in self.upper.items()})

    def set_ring(self, ring: PolyRing) -> 'SkewLinMatrix':
        return self.map(lambda value: value.set_ring(ring), ring)

    def with_entry(self, i: int, j: int, value) -> 'SkewLinMatrix':
        if i > j:
            i, j, value = j, i, -self.ring.ring_new(value)
        upper = dict(self.upper)
        upper[(i, j)] = value
        return SkewLinMatrix(self.size, self.ring, upper)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> List[List[Any]]:
        return [[self.entry(i, j) for j in cols] for i in rows]

    def coefficients(self) -> Dict[Index, List]:
        """{(i, j): [c0..c4]} for nonzero entries linear in x"""
        return {pair: linear_coefficients(value) for pair, value in sorted(self.upper.items())}

    def is_linear(self) -> bool:
        for value in self.upper.values():
            for monom in value.keys():
                if sum(monom[:NX]) != 1 or any(monom[NX:]):
                    return False
        return True

    def key(self) -> Tuple:
        """Hashable canonical form"""
        symbols = tuple(str(s) for s in self.ring.symbols)
        entries = tuple(
            (pair, tuple(sorted(value.items())))
            for pair, value in sorted(self.upper.items())
        )
        return (self.size, symbols, entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewLinMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other: 'SkewLinMatrix') -> 'SkewLinMatrix':
        upper = dict(self.upper)
        for pair, value in other.upper.items():
            upper[pair] = upper.get(pair, self.ring.zero) + value
        return SkewLinMatrix(self.size, self.ring, upper)

    def __neg__(self) -> 'SkewLinMatrix':
        return self.map(lambda value: -value)

    def __sub__(self, other: 'SkewLinMatrix') -> 'SkewLinMatrix':
        return self + (-other)

    def scale(self, factor) -> 'SkewLinMatrix':
        return self.map(lambda value: value * factor)

    def to_dict(self) -> Dict[str, Any]:
        """Interchange document: 15 entries with five "p/q" coefficients each"""
        entries = []
        for (i, j), value in self.pairs():
            coeffs = linear_coefficients(value) if value else [QQ.zero] * NX
            entries.append({'i': i, 'j': j, 'coeffs': [format_rational(c) for c in coeffs]})
        return {'entries': entries}

    def __repr__(self) -> str:
        shown = ', '.join(f"({i},{j}): {value}" for (i, j), value in sorted(self.upper.items()))
        return f"SkewLinMatrix(size={self.size}, {{{shown}}})"


@dataclass(frozen=True, eq=False)
class SyzygyMatrix:
    """Columns of linear forms v with M v = 0"""
    size: int
    columns: Tuple[Tuple[Any, ...], ...]

    @property
    def count(self) -> int:
        return len(self.columns)

    def entry(self, row: int, col: int):
        return self.columns[col][row]

    def column_vectors(self) -> List[List]:
        """Each column flattened to 5 * size rational coefficients"""
        vectors = []
        for column in self.columns:
            vector = []
            for form in column:
                vector.extend(linear_coefficients(form) if form else [QQ.zero] * NX)
            vectors.append(vector)
        return vectors

    def to_dict(self) -> Dict[str, Any]:
        return {'columns': [[str(form.as_expr()) for form in column] for column in self.columns]}


@dataclass(frozen=True, eq=False)
class PointIdeal:
    """Four independent linear forms cutting out a reduced point of P^4"""
    forms: Tuple[Any, ...]

    def __post_init__(self):
        from ..services.exactalg import rank, qmatrix
        if len(self.forms) != 4:
            raise InvalidParameter(f"a point ideal needs 4 forms, got {len(self.forms)}")
        vectors = [linear_coefficients(form) for form in self.forms]
        if rank(qmatrix(vectors, NX)) != 4:
            raise InvalidParameter("point forms are linearly dependent")

    def point(self) -> List:
        """Projective coordinates of the common zero"""
        from ..services.exactalg import kernel_basis, qmatrix, matrix_rows
        vectors = [linear_coefficients(form) for form in self.forms]
        kernel = matrix_rows(kernel_basis(qmatrix(vectors, NX)))
        return kernel[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'forms': [str(form.as_expr()) for form in self.forms],
            'point': [format_rational(c) for c in self.point()],
            'variables': list(X_NAMES),
        }
