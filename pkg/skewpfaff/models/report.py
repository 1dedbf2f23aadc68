"""
Result data models
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..utils.helpers import format_rational, polynomial_to_terms
from .jet import JetMatrix
from .linear import DegreePiece, QMatrix
from .matrix import SkewLinMatrix, SyzygyMatrix

LABELS: Tuple[str, ...] = ('a', 'b', 'c', 'd', 'e', 'f')

STABLE = 'stable'
NOT_POLYSTABLE = 'strictly-semistable-not-polystable'
POLYSTABLE = 'polystable'


@dataclass(frozen=True)
class MatrixType:
    """Catalog label with its stability type"""
    label: str
    stability: str

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.label, 'stability': self.stability}


@dataclass(frozen=True)
class Fingerprint:
    """Invariants used to match a matrix against the catalog

    d1 is the dimension of the entry span, e2..e4 the dimensions of the sub-Pfaffian ideal in
    degrees 2..4 and s the number of linear syzygies. orbit_codim only breaks ties.
    """
    d1: int
    e2: int
    e3: int
    e4: int
    s: int
    orbit_codim: Optional[int] = None

    def core(self) -> Tuple[int, int, int, int, int]:
        return (self.d1, self.e2, self.e3, self.e4, self.s)

    def to_dict(self) -> Dict[str, Any]:
        data = {'d1': self.d1, 'e2': self.e2, 'e3': self.e3, 'e4': self.e4, 's': self.s}
        if self.orbit_codim is not None:
            data['orbit_codim'] = self.orbit_codim
        return data


@dataclass(frozen=True)
class NormalForm:
    """A catalog row: the normal form, its kernel matrix and its geometry"""
    type: MatrixType
    matrix: SkewLinMatrix
    syzygies: SyzygyMatrix
    tag: str
    rank0_dim: int  # projective dimension of the rank-0 locus, -1 when empty

    @property
    def label(self) -> str:
        return self.type.label

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.type.to_dict(),
            'tag': self.tag,
            'matrix': self.matrix.to_dict(),
            'syzygies': self.syzygies.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class TangentSystem:
    """The linear map M' -> F' and its kernel

    `coefficients` is 35 x 75 with columns ordered like `coordinate_names` (a{i}{j}{k}).
    `kernel` rows span the tangent space; its pivot columns are the tangent coordinates.
    """
    matrix: SkewLinMatrix
    coefficients: QMatrix
    kernel: QMatrix
    pivots: Tuple[int, ...]
    coordinate_names: Tuple[str, ...]

    @property
    def codim(self) -> int:
        return len(self.coordinate_names) - self.dim

    @property
    def dim(self) -> int:
        return self.kernel.shape[0]

    @property
    def tangent_names(self) -> Tuple[str, ...]:
        return tuple(self.coordinate_names[p] for p in self.pivots)


@dataclass(frozen=True, eq=False)
class ConeQuadrics:
    """Quadrics in the tangent coordinates cutting out the degree-2 cone approximation"""
    system: TangentSystem
    piece: DegreePiece

    @property
    def dim(self) -> int:
        return self.piece.dim

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tangent_codim': self.system.codim,
            'cone_dim': self.piece.dim,
            'variables': list(self.system.tangent_names),
            'cone_basis': [str(p.as_expr()) for p in self.piece.polynomials()],
        }


@dataclass
class ClosureVerdict:
    """Answer of the closure oracle with its certificate"""
    answer: bool
    branch: str  # 'pfaffian-nonzero', 'type-abd', 'type-ce', 'type-f'
    label: Optional[str] = None
    coordinates: Optional[List[Any]] = None
    witness: Optional[JetMatrix] = None
    scale: Optional[Any] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'answer': 'yes' if self.answer else 'no', 'branch': self.branch}
        if self.label:
            data['type'] = self.label
        if self.coordinates is not None:
            data['coordinates'] = [format_rational(c) for c in self.coordinates]
        if self.witness is not None:
            data['witness'] = self.witness.coefficients[1].to_dict()
        if self.scale is not None:
            data['scale'] = format_rational(self.scale)
        return data


@dataclass(frozen=True, eq=False)
class DeformationFamily:
    """A one-parameter family M_t with the types it is claimed to connect

    The matrix lives in QQ[x0..x4, t]. `ideals` lists the expected rank-2 ideals (each a list
    of generators in the same ring); it is empty when none is recorded.
    """
    arrow: str
    matrix: SkewLinMatrix
    source: str
    target: str
    ideals: Tuple[Tuple[Any, ...], ...] = ()

    @property
    def ring(self):
        return self.matrix.ring

    def to_dict(self) -> Dict[str, Any]:
        return {
            'arrow': self.arrow,
            'source': self.source,
            'target': self.target,
            'entries': {f"{i},{j}": str(value.as_expr()) for (i, j), value in sorted(self.matrix.upper.items())},
            'ideals': [[str(g.as_expr()) for g in ideal] for ideal in self.ideals],
        }


@dataclass
class CheckResult:
    """Single named check"""
    name: str
    passed: bool
    expected: Any = None
    actual: Any = None
    details: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {'name': self.name, 'passed': self.passed}
        if self.expected is not None:
            data['expected'] = self.expected
        if self.actual is not None:
            data['actual'] = self.actual
        if self.details:
            data['details'] = self.details
        return data


@dataclass
class RunReport:
    """Everything one CLI command produced"""
    command: str
    seed: int
    config: Dict[str, Any] = field(default_factory=dict)
    input_digest: Optional[str] = None
    checks: List[CheckResult] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    timings: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add_check(self, name: str, passed: bool, expected: Any = None, actual: Any = None,
                  details: Optional[Dict[str, Any]] = None) -> CheckResult:
        check = CheckResult(name, bool(passed), expected, actual, details)
        self.checks.append(check)
        return check

    def extend(self, checks: List[CheckResult], prefix: str = ''):
        for check in checks:
            name = f"{prefix}{check.name}" if prefix else check.name
            self.checks.append(CheckResult(name, check.passed, check.expected, check.actual, check.details))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'command': self.command,
            'seed': self.seed,
            'config': self.config,
            'input_digest': self.input_digest,
            'passed': self.passed,
            'checks': [check.to_dict() for check in self.checks],
            'data': self.data,
        }
        if self.timings is not None:
            data['timings'] = {name: round(value, 3) for name, value in sorted(self.timings.items())}
        return data


def piece_summary(piece: DegreePiece) -> Dict[str, Any]:
    """Compact rendering of a degree piece for reports"""
    return {
        'degree': piece.degree,
        'dim': piece.dim,
        'basis': [polynomial_to_terms(p) for p in piece.polynomials()],
    }
