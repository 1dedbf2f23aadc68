"""
Normal forms of semistable 6x6 skew matrices of linear forms with vanishing Pfaffian

Each form is written with l_i = x_i. Indices are 0-based. The kernel matrix S has two
columns of linear forms with M S = 0.
"""

from functools import lru_cache
from typing import Dict, List, Tuple

from ..models.matrix import SkewLinMatrix, SyzygyMatrix
from ..models.polynomial import x_ring
from ..models.report import LABELS, NOT_POLYSTABLE, POLYSTABLE, STABLE, MatrixType, NormalForm
from ..utils.errors import UnknownLabel

# (i, j) -> (variable, sign)
_UPPER_BLOCK = {
    (0, 4): (0, 1), (0, 5): (1, 1), (1, 3): (0, -1), (1, 5): (2, 1), (2, 3): (1, -1), (2, 4): (2, -1),
}
_TOP_SKEW = {(0, 1): (0, 1), (0, 2): (1, 1), (1, 2): (2, 1)}

ENTRIES: Dict[str, Dict[Tuple[int, int], Tuple[int, int]]] = {
    'a': {**_UPPER_BLOCK, (0, 1): (3, 1), (3, 4): (4, 1)},
    'b': {**_TOP_SKEW, (3, 4): (2, 1), (3, 5): (3, 1), (4, 5): (4, 1)},
    'c': {**_TOP_SKEW, (3, 4): (1, 1), (3, 5): (2, 1), (4, 5): (3, 1)},
    'd': {**_UPPER_BLOCK, (3, 4): (3, 1), (3, 5): (4, 1)},
    'e': {**_UPPER_BLOCK, (3, 4): (3, 1)},
    'f': dict(_UPPER_BLOCK),
}

# Columns of S as six (variable, sign) pairs; None is a zero entry
_FIRST = ((2, 1), (1, -1), (0, 1), None, None, None)
SYZYGIES: Dict[str, Tuple[Tuple, Tuple]] = {
    'a': (((2, 1), (1, -1), (0, 1), None, None, (3, 1)),
          (None, None, (4, 1), (2, 1), (1, -1), (0, 1))),
    'b': (_FIRST, (None, None, None, (4, 1), (3, -1), (2, 1))),
    'c': (_FIRST, (None, None, None, (3, 1), (2, -1), (1, 1))),
    'd': (_FIRST, (None, (4, -1), (3, 1), (2, 1), (1, -1), (0, 1))),
    'e': (_FIRST, (None, None, (3, 1), (2, 1), (1, -1), (0, 1))),
    'f': (_FIRST, (None, None, None, (2, 1), (1, -1), (0, 1))),
}

STABILITY: Dict[str, str] = {
    'a': STABLE, 'b': STABLE, 'c': STABLE,
    'd': NOT_POLYSTABLE, 'e': NOT_POLYSTABLE,
    'f': POLYSTABLE,
}

TAGS: Dict[str, str] = {
    'a': 'smooth conic',
    'b': 'two skew lines',
    'c': 'two intersecting lines with an embedded point',
    'd': 'double line on a smooth quadric surface',
    'e': 'plane double line with an embedded point',
    'f': 'line with its full first order neighbourhood',
}

# Projective dimension of the rank-0 locus; -1 is empty
RANK0_DIM: Dict[str, int] = {'a': -1, 'b': -1, 'c': 0, 'd': -1, 'e': 0, 'f': 1}

# Frozen regression values
TANGENT_CODIMS: Dict[str, int] = {'a': 28, 'b': 27, 'c': 26, 'd': 27, 'e': 26, 'f': 22}
CORE_FINGERPRINTS: Dict[str, Tuple[int, int, int, int, int]] = {
    'a': (5, 10, 28, 61, 2),
    'b': (5, 9, 27, 60, 2),
    'c': (4, 8, 26, 59, 2),
    'd': (5, 9, 27, 60, 2),
    'e': (4, 8, 26, 59, 2),
    'f': (3, 6, 22, 53, 2),
}
ORBIT_CODIMS: Dict[str, int] = {'a': 28, 'b': 27, 'c': 29}
SATURATED_DIMS: Dict[str, Tuple[int, int]] = {'c': (26, 28), 'e': (26, 28)}

# Tabulated tangent-cone quadrics as products of two linear forms in the a_ijk
TABULATED_CONES: Dict[str, List[Tuple[Dict[str, int], Dict[str, int]]]] = {
    'a': [],
    'b': [],
    'c': [({'a124': 1, 'a354': -1}, {'a054': 1}), ({'a024': 1, 'a344': -1}, {'a054': 1})],
    'd': [],
    'e': [({'a454': 1}, {'a014': 1}), ({'a354': 1}, {'a014': 1})],
}
CONE_N1 = (('a124', 'a454'), ('a024', 'a354'), ('a014', 'a344'))
CONE_N2 = (('a123', 'a453'), ('a023', 'a353'), ('a013', 'a343'))


def check_label(label: str) -> str:
    if label not in LABELS:
        raise UnknownLabel(f"unknown catalog type '{label}', expected one of {', '.join(LABELS)}")
    return label


def _form(code):
    if code is None:
        return x_ring().zero
    var, sign = code
    gen = x_ring().gens[var]
    return gen if sign > 0 else -gen


def catalog_matrix(label: str) -> SkewLinMatrix:
    check_label(label)
    return SkewLinMatrix(6, x_ring(), {pair: _form(code) for pair, code in ENTRIES[label].items()})


def catalog_syzygies(label: str) -> SyzygyMatrix:
    check_label(label)
    return SyzygyMatrix(6, tuple(tuple(_form(code) for code in column) for column in SYZYGIES[label]))


@lru_cache(maxsize=None)
def catalog(label: str) -> NormalForm:
    """The normal form of one catalog type"""
    check_label(label)
    return NormalForm(
        type=MatrixType(label, STABILITY[label]),
        matrix=catalog_matrix(label),
        syzygies=catalog_syzygies(label),
        tag=TAGS[label],
        rank0_dim=RANK0_DIM[label],
    )
