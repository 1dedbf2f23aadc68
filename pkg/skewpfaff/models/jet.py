"""
Jet data models

A jet of order n is f0 + f1 e + ... + fn e^n with e^(n+1) = 0. Coefficients are elements
of a coefficient ring (a PolyRing, or QQ for scalar jets).
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from .matrix import SkewLinMatrix


@dataclass(frozen=True, eq=False)
class JetPolynomial:
    """Truncated power series in e with polynomial coefficients"""
    ring: Any
    coefficients: Tuple[Any, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, 'coefficients', tuple(self.coefficients))

    @classmethod
    def zero(cls, ring: Any, order: int) -> 'JetPolynomial':
        return cls(ring, tuple(ring.zero for _ in range(order + 1)))

    @classmethod
    def constant(cls, ring: Any, value: Any, order: int) -> 'JetPolynomial':
        return cls(ring, (value,) + tuple(ring.zero for _ in range(order)))

    @classmethod
    def one(cls, ring: Any, order: int) -> 'JetPolynomial':
        return cls.constant(ring, ring.one, order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int):
        return self.coefficients[k]

    def _check(self, other: 'JetPolynomial'):
        if not isinstance(other, JetPolynomial):
            raise TypeError(f"cannot combine a jet with {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"jet orders differ: {self.order} and {other.order}")

    def __add__(self, other: 'JetPolynomial') -> 'JetPolynomial':
        self._check(other)
        return JetPolynomial(self.ring, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: 'JetPolynomial') -> 'JetPolynomial':
        self._check(other)
        return JetPolynomial(self.ring, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> 'JetPolynomial':
        return JetPolynomial(self.ring, tuple(-a for a in self.coefficients))

    def __mul__(self, other: Any) -> 'JetPolynomial':
        if not isinstance(other, JetPolynomial):
            return self.scale(other)
        self._check(other)
        n = self.order
        products = []
        for k in range(n + 1):
            total = self.ring.zero
            for i in range(k + 1):
                left, right = self.coefficients[i], other.coefficients[k - i]
                if left and right:
                    total += left * right
            products.append(total)
        return JetPolynomial(self.ring, tuple(products))

    def __rmul__(self, other: Any) -> 'JetPolynomial':
        return self.scale(other)

    def scale(self, factor: Any) -> 'JetPolynomial':
        return JetPolynomial(self.ring, tuple(a * factor for a in self.coefficients))

    def __bool__(self) -> bool:
        return any(bool(a) for a in self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JetPolynomial):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coefficients, other.coefficients))

    def __hash__(self):
        return hash((self.order, tuple(str(a) for a in self.coefficients)))

    def to_dict(self) -> Dict[str, Any]:
        from ..utils.helpers import polynomial_to_terms
        return {
            'order': self.order,
            'coefficients': [polynomial_to_terms(c) for c in self.coefficients],
        }

    def __repr__(self) -> str:
        shown = ' + '.join(f"({c})*e^{k}" for k, c in enumerate(self.coefficients) if c) or '0'
        return f"JetPolynomial(order={self.order}: {shown})"


@dataclass(frozen=True, eq=False)
class JetMatrix:
    """Truncated power series M0 + M1 e + ... + Mn e^n of skew matrices centred at M0"""
    coefficients: Tuple[SkewLinMatrix, ...]

    def __post_init__(self):
        coefficients = tuple(self.coefficients)
        if not coefficients:
            raise ValueError("a jet needs at least the constant coefficient")
        size, ring = coefficients[0].size, coefficients[0].ring
        for k, matrix in enumerate(coefficients):
            if matrix.size != size or matrix.ring != ring:
                raise ValueError(f"jet coefficient {k} does not match the size and ring of the centre")
        object.__setattr__(self, 'coefficients', coefficients)

    @classmethod
    def from_sequence(cls, matrices: Sequence[SkewLinMatrix]) -> 'JetMatrix':
        return cls(tuple(matrices))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def size(self) -> int:
        return self.coefficients[0].size

    @property
    def ring(self):
        return self.coefficients[0].ring

    @property
    def centre(self) -> SkewLinMatrix:
        return self.coefficients[0]

    def entry(self, i: int, j: int) -> JetPolynomial:
        return JetPolynomial(self.ring, tuple(m.entry(i, j) for m in self.coefficients))

    def rows(self) -> List[List[JetPolynomial]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JetMatrix):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def to_dict(self) -> Dict[str, Any]:
        return {'order': self.order, 'coefficients': [m.to_dict() for m in self.coefficients]}
