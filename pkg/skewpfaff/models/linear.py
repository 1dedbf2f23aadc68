"""
Linear algebra data models
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from ..utils.helpers import polynomial_to_terms
from .polynomial import monomial_basis

# Dense or sparse matrices over QQ are sympy DomainMatrix values.
QMatrix = DomainMatrix

SparseRow = Tuple[Tuple[int, object], ...]


@dataclass(frozen=True)
class DegreePiece:
    """A subspace of the degree-d part of a polynomial ring

    Basis rows are coordinate vectors against monomial_basis(ring.ngens, degree),
    in reduced row-echelon form, stored sparsely as sorted (column, value) pairs.
    Two pieces are equal iff ring, degree and rows agree.
    """
    ring: PolyRing
    degree: int
    rows: Tuple[SparseRow, ...]
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return len(monomial_basis(self.ring.ngens, self.degree))

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def row_dicts(self) -> List[Dict[int, object]]:
        return [dict(row) for row in self.rows]

    def polynomials(self) -> List:
        """Basis rows as polynomials"""
        basis = monomial_basis(self.ring.ngens, self.degree)
        return [
            self.ring.from_dict({basis[col]: value for col, value in row})
            for row in self.rows
        ]

    def to_dict(self) -> Dict:
        return {
            'degree': self.degree,
            'variables': [str(s) for s in self.ring.symbols],
            'dim': self.dim,
            'basis': [polynomial_to_terms(p) for p in self.polynomials()],
        }


def sparse_row(values: Dict[int, object]) -> SparseRow:
    return tuple(sorted((col, QQ.convert(v)) for col, v in values.items() if v))
