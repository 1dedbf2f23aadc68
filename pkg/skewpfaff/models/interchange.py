"""
JSON interchange documents

Every document read by the CLI is validated by one of these pydantic models. Validation
failures are re-raised as InterchangeError with the pydantic location of the first problem.
"""

from typing import Any, Dict, List, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from sympy import QQ

from ..utils.errors import InterchangeError, ZeroCubic
from ..utils.helpers import format_rational, parse_rational
from .jet import JetMatrix
from .matrix import SkewLinMatrix
from .polynomial import NX, monomial_basis, x_ring

DocumentT = TypeVar('DocumentT', bound=BaseModel)


def _check_rational(text: str) -> str:
    try:
        parse_rational(text)
    except InterchangeError as exc:
        raise ValueError(str(exc)) from exc
    return text


class EntryDocument(BaseModel):
    """One upper-triangular entry: coefficients of x0..x4"""
    model_config = ConfigDict(extra='forbid')

    i: int = Field(ge=0)
    j: int = Field(ge=0)
    coeffs: List[str] = Field(min_length=NX, max_length=NX)

    @field_validator('coeffs')
    @classmethod
    def coeffs_are_rational(cls, value: List[str]) -> List[str]:
        return [_check_rational(c) for c in value]

    @model_validator(mode='after')
    def strictly_upper(self) -> 'EntryDocument':
        if self.i >= self.j:
            raise ValueError(f"entry ({self.i}, {self.j}) must have i < j")
        return self


class MatrixDocument(BaseModel):
    """Skew matrix of linear forms, upper entries only; omitted entries are zero"""
    model_config = ConfigDict(extra='forbid')

    size: int = Field(default=6, ge=2)
    entries: List[EntryDocument]

    @model_validator(mode='after')
    def entries_fit(self) -> 'MatrixDocument':
        seen = set()
        for entry in self.entries:
            if entry.j >= self.size:
                raise ValueError(f"entry ({entry.i}, {entry.j}) outside a {self.size}x{self.size} matrix")
            if (entry.i, entry.j) in seen:
                raise ValueError(f"entry ({entry.i}, {entry.j}) given twice")
            seen.add((entry.i, entry.j))
        return self

    def to_matrix(self) -> SkewLinMatrix:
        coefficients = {
            (entry.i, entry.j): [parse_rational(c) for c in entry.coeffs]
            for entry in self.entries
        }
        return SkewLinMatrix.from_coefficients(self.size, coefficients)

    @classmethod
    def from_matrix(cls, matrix: SkewLinMatrix) -> 'MatrixDocument':
        data = matrix.to_dict()
        return cls(size=matrix.size, entries=[EntryDocument(**entry) for entry in data['entries']])


class CubicDocument(BaseModel):
    """Cubic form as {"e0,e1,e2,e3,e4": "p/q"}"""
    model_config = ConfigDict(extra='forbid')

    coefficients: Dict[str, str]

    @field_validator('coefficients')
    @classmethod
    def keys_are_cubic_monomials(cls, value: Dict[str, str]) -> Dict[str, str]:
        for key, coeff in value.items():
            try:
                exponents = [int(part) for part in key.split(',')]
            except ValueError as exc:
                raise ValueError(f"monomial key '{key}' is not a list of integers") from exc
            if len(exponents) != NX or any(e < 0 for e in exponents) or sum(exponents) != 3:
                raise ValueError(f"monomial key '{key}' is not a cubic exponent vector")
            _check_rational(coeff)
        return value

    def to_polynomial(self):
        ring = x_ring()
        data = {}
        for key, coeff in self.coefficients.items():
            monom = tuple(int(part) for part in key.split(','))
            data[monom] = data.get(monom, QQ.zero) + parse_rational(coeff)
        poly = ring.from_dict({monom: c for monom, c in data.items() if c})
        if not poly:
            raise ZeroCubic("cubic form is identically zero")
        return poly

    @classmethod
    def from_polynomial(cls, poly) -> 'CubicDocument':
        present = dict(poly.items())
        return cls(coefficients={
            ','.join(str(e) for e in monom): format_rational(present[monom])
            for monom in monomial_basis(NX, 3) if monom in present
        })


class ClosureRequest(BaseModel):
    model_config = ConfigDict(extra='forbid')

    matrix: MatrixDocument
    cubic: CubicDocument


class JetDocument(BaseModel):
    """Jet M0 + M1 e + ... + Mn e^n of skew matrices"""
    model_config = ConfigDict(extra='forbid')

    order: int = Field(ge=0)
    coefficients: List[MatrixDocument]
    truncate: Optional[int] = Field(default=None, ge=0)
    cover: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode='after')
    def order_matches(self) -> 'JetDocument':
        if len(self.coefficients) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients, got {len(self.coefficients)}")
        sizes = {doc.size for doc in self.coefficients}
        if len(sizes) != 1:
            raise ValueError("jet coefficients have different sizes")
        return self

    def to_jet(self) -> JetMatrix:
        return JetMatrix(tuple(doc.to_matrix() for doc in self.coefficients))


def parse_document(model: Type[DocumentT], data: Any) -> DocumentT:
    """Validate a decoded JSON value, raising InterchangeError with a location"""
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = list(first.get('loc', ()))
        raise InterchangeError(f"{model.__name__}: {first.get('msg', 'invalid document')}", location) from exc
