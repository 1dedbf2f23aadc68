"""
Closure oracle for pairs (M, F) of a skew matrix and a cubic

For Pf(M) != 0 the pair is in the closure iff Pf(M) and F are proportional. For Pf(M) = 0 it
is in the closure iff F lies in the degree-3 piece of the ideal of the degree-2 curve that M
determines; for types (a), (b), (d) the answer comes with a 1-jet witness.
"""

from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple

from sympy import QQ

from ..models.jet import JetMatrix
from ..models.linear import DegreePiece
from ..models.matrix import SkewLinMatrix
from ..models.polynomial import is_homogeneous
from ..models.report import ClosureVerdict
from ..utils.config import Config
from ..utils.errors import NonHomogeneous, NotInPiece, SkewPfaffError, WrongType, ZeroCubic
from ..utils.logging import get_logger
from .classifier_service import ClassifierService, default_classifier
from .exactalg import coordinates, piece_coordinates, qmatrix, rank, solve
from .jets import first_nonzero, jet_pfaffian
from .pfaffcalc import entry_span, ideal_piece, pfaffian, rank0_point, saturate_piece, sub_pfaffians
from .tangent import NCUBICS, matrix_from_vector, tangent_system

logger = get_logger('closure_service')

BRANCHES = {
    'a': 'type-abd', 'b': 'type-abd', 'd': 'type-abd',
    'c': 'type-ce', 'e': 'type-ce',
    'f': 'type-f',
}


def _check_cubic(cubic):
    if not cubic:
        raise ZeroCubic("the cubic form is identically zero")
    if not is_homogeneous(cubic, 3):
        raise NonHomogeneous(f"expected a homogeneous cubic, got {cubic}")


def curve_piece(m: SkewLinMatrix, label: str) -> DegreePiece:
    """Degree-3 piece of the ideal of the degree-2 curve of a classified matrix"""
    branch = BRANCHES[label]
    q = list(sub_pfaffians(m).values())
    if branch == 'type-abd':
        return ideal_piece(q, 3, ring=m.ring)
    if branch == 'type-ce':
        return saturate_piece(q, rank0_point(m), 3)
    return ideal_piece(entry_span(m).polynomials(), 3, ring=m.ring)


def proportional_scale(pfaffian_value, cubic) -> Optional[Any]:
    """c with Pf = c F, or None"""
    columns = [coordinates(pfaffian_value, 3), coordinates(cubic, 3)]
    if rank(qmatrix(columns, NCUBICS)) > 1:
        return None
    monom, coeff = next(iter(cubic.items()))
    return QQ.convert(pfaffian_value.get(monom, QQ.zero)) / coeff


def witness_jet(m: SkewLinMatrix, cubic) -> JetMatrix:
    """M + e M1 with Pf(M + e M1) = e F, from a Laplace writing F = sum (-1)^(a+b+1) l_ab q_ab"""
    _check_cubic(cubic)
    system = tangent_system(m)
    target = [QQ.zero] * NCUBICS
    for col, value in coordinates(cubic, 3).items():
        target[col] = value
    solution = solve(system.coefficients, target)
    if solution is None:
        raise NotInPiece("the cubic is not a Laplace combination of the sub-Pfaffians")
    return JetMatrix((m, matrix_from_vector(solution, m.ring)))


def witness_passes(witness: JetMatrix, cubic) -> bool:
    """first_nonzero(jet Pfaffian) is (1, c F) with c != 0"""
    leading = first_nonzero(jet_pfaffian(witness))
    if leading is None or leading[0] != 1:
        return False
    scale = proportional_scale(leading[1], cubic)
    return bool(scale)


class ClosureService:
    """Decides closure membership with certificates"""

    def __init__(self, classifier: Optional[ClassifierService] = None, cache_size: Optional[int] = None):
        self.classifier = classifier or default_classifier()
        self._classified_piece = lru_cache(maxsize=cache_size or Config.PIECE_CACHE)(self._compute_piece)

    def test_piece(self, m: SkewLinMatrix) -> DegreePiece:
        return self._classified_piece(m)[1]

    def cache_info(self):
        return self._classified_piece.cache_info()

    def _compute_piece(self, m: SkewLinMatrix) -> Tuple[str, DegreePiece]:
        label = self.classifier.classify(m).label
        piece = curve_piece(m, label)
        logger.debug(f"test piece for type {label}: dim {piece.dim}")
        return label, piece

    def in_closure(self, m: SkewLinMatrix, cubic) -> ClosureVerdict:
        _check_cubic(cubic)
        value = pfaffian(m)
        if value:
            scale = proportional_scale(value, cubic)
            return ClosureVerdict(scale is not None, 'pfaffian-nonzero', scale=scale)

        label, piece = self._classified_piece(m)
        branch = BRANCHES[label]
        coords = piece_coordinates(piece, cubic)
        if coords is None:
            return ClosureVerdict(False, branch, label=label)
        if branch != 'type-abd':
            return ClosureVerdict(True, branch, label=label, coordinates=coords)

        witness = witness_jet(m, cubic)
        if not witness_passes(witness, cubic):
            raise SkewPfaffError("the witness jet does not have Pfaffian e*c*F")
        return ClosureVerdict(True, branch, label=label, coordinates=coords, witness=witness, scale=QQ.one)

    def witness(self, m: SkewLinMatrix, cubic) -> JetMatrix:
        label = self.classifier.classify(m).label
        if BRANCHES[label] != 'type-abd':
            raise WrongType(f"1-jet witnesses exist for types a, b, d; the matrix has type {label}")
        return witness_jet(m, cubic)

    def batch(self, queries: Sequence[Tuple[SkewLinMatrix, Any]]) -> List[ClosureVerdict]:
        verdicts = [self.in_closure(m, cubic) for m, cubic in queries]
        logger.info(f"Decided {len(verdicts)} closure queries, {sum(v.answer for v in verdicts)} in the closure")
        return verdicts


def test_piece(m: SkewLinMatrix) -> DegreePiece:
    return ClosureService().test_piece(m)


def in_closure(m: SkewLinMatrix, cubic) -> ClosureVerdict:
    return ClosureService().in_closure(m, cubic)


def closure_batch(queries: Sequence[Tuple[SkewLinMatrix, Any]]) -> List[ClosureVerdict]:
    return ClosureService().batch(queries)
