"""
Catalog classification by invariant fingerprints
"""

from typing import Dict, List, Optional

from ..models.matrix import SkewLinMatrix
from ..models.report import LABELS, CheckResult, Fingerprint, MatrixType
from ..utils.errors import PfaffianNonZero, SkewPfaffError, Unclassified
from ..utils.logging import get_logger
from .catalog import CORE_FINGERPRINTS, RANK0_DIM, catalog, check_label
from .exactalg import piece_span, span_equal
from .pfaffcalc import (
    column_span_equal, entry_span, ideal_piece, linear_syzygies, minors_2x2, pfaffian,
    sub_pfaffians, syzygy_rows, syzygy_span_equal, transpose_syzygies
)
from .tangent import orbit_codim

logger = get_logger('classifier_service')


def fingerprint(m: SkewLinMatrix, with_orbit: bool = False) -> Fingerprint:
    """Entry span, sub-Pfaffian Hilbert function in degrees 2..4 and syzygy count"""
    if pfaffian(m):
        raise PfaffianNonZero("fingerprints are defined for matrices with vanishing Pfaffian")
    q = list(sub_pfaffians(m).values())
    dims = [ideal_piece(q, degree, ring=m.ring).dim for degree in (2, 3, 4)]
    return Fingerprint(
        d1=entry_span(m).dim,
        e2=dims[0],
        e3=dims[1],
        e4=dims[2],
        s=linear_syzygies(m).count,
        orbit_codim=orbit_codim(m) if with_orbit else None,
    )


def catalog_fingerprints() -> Dict[str, Fingerprint]:
    """Fingerprints of the six normal forms, asserted pairwise distinct"""
    table = {label: fingerprint(catalog(label).matrix, with_orbit=True) for label in LABELS}
    seen: Dict[tuple, str] = {}
    for label, fp in table.items():
        key = fp.core() + (fp.orbit_codim,)
        if key in seen:
            message = (f"types {seen[key]} and {label} share the fingerprint {key}; "
                       f"the classifier needs another tie-breaking invariant")
            logger.error(message)
            raise SkewPfaffError(message)
        seen[key] = label
    return table


class ClassifierService:
    """Assigns catalog types to Pfaffian-zero matrices"""

    def __init__(self, table: Optional[Dict[str, Fingerprint]] = None):
        self._table = table

    @property
    def table(self) -> Dict[str, Fingerprint]:
        if self._table is None:
            self._table = catalog_fingerprints()
            for label, fp in self._table.items():
                if fp.core() != CORE_FINGERPRINTS[label]:
                    logger.warning(f"type {label}: fingerprint {fp.core()} differs from {CORE_FINGERPRINTS[label]}")
            logger.info(f"Fingerprint table built for {len(self._table)} types")
        return self._table

    def classify(self, m: SkewLinMatrix) -> MatrixType:
        fp = fingerprint(m)
        candidates = [label for label, known in self.table.items() if known.core() == fp.core()]
        if len(candidates) > 1:
            codim = orbit_codim(m)
            candidates = [label for label in candidates if self.table[label].orbit_codim == codim]
        if len(candidates) != 1:
            raise Unclassified(
                f"fingerprint {fp.core()} matches no catalog type: the matrix is not semistable, "
                f"or it lies outside the classified Pfaffian-zero matrices"
            )
        return catalog(candidates[0]).type

    def verify_table1(self, label: str) -> List[CheckResult]:
        return verify_table1(label)


def verify_table1(label: str) -> List[CheckResult]:
    """Checks of one catalog row: kernel, syzygies, minors against sub-Pfaffians, rank-0 locus"""
    check_label(label)
    form = catalog(label)
    m, s = form.matrix, form.syzygies
    checks = []

    checks.append(CheckResult('pfaffian vanishes', not pfaffian(m)))

    product_zero = all(
        not sum((m.entry(i, j) * column[j] for j in range(m.size)), m.ring.zero)
        for column in s.columns for i in range(m.size)
    )
    checks.append(CheckResult('M S = 0', product_zero))

    computed = linear_syzygies(m)
    checks.append(CheckResult(
        'linear syzygies span S', syzygy_span_equal(computed, s),
        expected=s.count, actual=computed.count,
    ))

    minors = piece_span(minors_2x2(syzygy_rows(s)), 2, ring=m.ring)
    pfaffians = piece_span(sub_pfaffians(m).values(), 2, ring=m.ring)
    checks.append(CheckResult(
        'minors of S equal sub-Pfaffians in degree 2', span_equal(minors, pfaffians),
        expected=pfaffians.dim, actual=minors.dim,
    ))

    locus_dim = 4 - entry_span(m).dim
    checks.append(CheckResult(
        'rank-0 locus', locus_dim == RANK0_DIM[label],
        expected=RANK0_DIM[label], actual=locus_dim, details={'tag': form.tag},
    ))

    dual = transpose_syzygies(s, m.ring)
    columns = [tuple(m.entry(i, j) for i in range(m.size)) for j in range(m.size)]
    contains = column_span_equal(dual, list(dual) + columns)
    checks.append(CheckResult(
        'syzygies of S^T contain the columns of M', len(dual) == 6 and contains,
        expected=6, actual=len(dual),
    ))

    failed = [check.name for check in checks if not check.passed]
    if failed:
        logger.warning(f"type {label}: failed checks {failed}")
    return checks


_default_service: Optional[ClassifierService] = None


def default_classifier() -> ClassifierService:
    global _default_service
    if _default_service is None:
        logger.debug("Creating default ClassifierService instance")
        _default_service = ClassifierService()
    return _default_service


def classify(m: SkewLinMatrix) -> MatrixType:
    return default_classifier().classify(m)
